"""Targeted-removal disruption sweeps over instances and portfolios.

Protocol per trial: compute an importance score for every element (or
algorithm), rank descending, then for each removal fraction q delete the
top round-half-up(q * n) entries, rebuild the pairwise structure over the
survivors and re-evaluate the target metric. A removal fraction of 0 is the
intact evaluation. Runs are fully deterministic for a fixed master seed.

Importance scores are pluggable: the SCORERS registry maps target names to
scoring functions, so alternative attack priorities can be added without
touching the metric implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .arq import AlgorithmDescriptor, arq_report, kernel_centrality
from .errors import ValidationError
from .fss import fss_weighted, weighted_contributions
from .instrumentation import counters
from .mldi import mldi_report, propagate_failures
from .model import DeploymentInstance, MetricConfig
from .seeds import STREAM_RANDOM_ATTACK, STREAM_TRIAL_RESAMPLE, derive_rng

TARGETS = ("fss", "arq", "mldi")
ATTACKS = ("targeted", "random")

Resampler = Callable[[DeploymentInstance, np.random.Generator], DeploymentInstance]


@dataclass(frozen=True)
class SweepConfig:
    q_list: tuple[float, ...]
    trials: int
    seed: int
    target: str
    function_id: str | None = None
    attack: str = "targeted"

    def __post_init__(self):
        object.__setattr__(self, "q_list", tuple(float(q) for q in self.q_list))
        if not self.q_list:
            raise ValidationError("q_list must not be empty")
        for q in self.q_list:
            if not 0.0 <= q < 1.0:
                raise ValidationError(f"removal fractions must lie in [0, 1), got {q}")
        if any(b <= a for a, b in zip(self.q_list, self.q_list[1:])):
            raise ValidationError(f"q_list must be strictly increasing, got {self.q_list}")
        if self.trials < 1:
            raise ValidationError(f"trials must be at least 1, got {self.trials}")
        if self.seed < 0:
            raise ValidationError(f"seed must be non-negative, got {self.seed}")
        if self.target not in TARGETS:
            raise ValidationError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.target == "fss" and not self.function_id:
            raise ValidationError("fss sweeps require a function_id")
        if self.attack not in ATTACKS:
            raise ValidationError(f"attack must be one of {ATTACKS}, got {self.attack!r}")

    def to_dict(self) -> dict:
        return {
            "q_list": list(self.q_list),
            "trials": self.trials,
            "seed": self.seed,
            "target": self.target,
            "function_id": self.function_id,
            "attack": self.attack,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SweepConfig":
        allowed = {"q_list", "trials", "seed", "target", "function_id", "attack"}
        unknown = set(data) - allowed
        if unknown:
            raise ValidationError(f"unknown sweep config key: {sorted(unknown)[0]}")
        kwargs = dict(data)
        if "q_list" in kwargs:
            kwargs["q_list"] = tuple(kwargs["q_list"])
        return cls(**kwargs)


@dataclass(frozen=True)
class TrialRecord:
    q: float
    trial: int
    removed: tuple[str, ...]
    survivor_count: int
    values: dict[str, float]
    flagged: bool
    dissimilarity_evals: int
    summand_visits: int

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "trial": self.trial,
            "removed": list(self.removed),
            "survivor_count": self.survivor_count,
            "values": dict(self.values),
            "flagged": self.flagged,
            "dissimilarity_evals": self.dissimilarity_evals,
            "summand_visits": self.summand_visits,
        }


@dataclass(frozen=True)
class AggregateRow:
    metric: str
    q: float
    mean: float
    std: float
    trials: int

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "q": self.q,
            "mean": self.mean,
            "std": self.std,
            "trials": self.trials,
        }


@dataclass(frozen=True)
class SweepResult:
    target_label: str
    sweep_config: SweepConfig
    metric_config: MetricConfig
    records: tuple[TrialRecord, ...]
    aggregates: tuple[AggregateRow, ...]
    totals: dict[str, int]

    def aggregate(self, metric: str, q: float) -> AggregateRow:
        for row in self.aggregates:
            if row.metric == metric and row.q == q:
                return row
        raise ValidationError(f"no aggregate for metric {metric!r} at q={q}")

    def to_dict(self) -> dict:
        return {
            "target": self.target_label,
            "sweep_config": self.sweep_config.to_dict(),
            "metric_config": self.metric_config.to_dict(),
            "records": [r.to_dict() for r in self.records],
            "aggregates": [a.to_dict() for a in self.aggregates],
            "instrumentation": dict(self.totals),
        }


def _fss_scores(instance: DeploymentInstance, config: MetricConfig, function_id: str):
    scores = {el.id: 0.0 for el in instance.elements}
    scores.update(weighted_contributions(instance, function_id, config))
    return scores


def _mldi_scores(instance: DeploymentInstance, config: MetricConfig, function_id=None):
    """Transitive downstream dependents plus own support count.

    Lower layers naturally rank higher: a physical element is credited with
    every control and service element reachable through the dependency
    matrices.
    """
    b12 = instance.topology.b12
    b23 = instance.topology.b23
    reach_l3_from_l1 = (b23 @ b12) > 0
    scores: dict[str, float] = {}
    for col, p in enumerate(instance.layer_positions("L1")):
        el = instance.elements[p]
        downstream = int(b12[:, col].sum()) + int(reach_l3_from_l1[:, col].sum())
        scores[el.id] = float(downstream + len(el.supports))
    for col, p in enumerate(instance.layer_positions("L2")):
        el = instance.elements[p]
        downstream = int(b23[:, col].sum())
        scores[el.id] = float(downstream + len(el.supports))
    for p in instance.layer_positions("L3"):
        el = instance.elements[p]
        scores[el.id] = float(len(el.supports))
    return scores


def _arq_scores(portfolio: Sequence[AlgorithmDescriptor], config: MetricConfig, function_id=None):
    return kernel_centrality(portfolio, config.sigma)


SCORERS: dict[str, Callable] = {
    "fss": _fss_scores,
    "mldi": _mldi_scores,
    "arq": _arq_scores,
}


def importance_scores(target: str, subject, config: MetricConfig, function_id: str | None = None):
    """Removal priority per element/algorithm id for the given target."""
    if target not in SCORERS:
        raise ValidationError(f"target must be one of {TARGETS}, got {target!r}")
    if target == "fss":
        return SCORERS[target](subject, config, function_id)
    return SCORERS[target](subject, config)


def removal_count(q: float, n: int) -> int:
    """Round-half-up removal count floor(q * n + 0.5)."""
    return math.floor(q * n + 0.5)


def rank_and_remove(ids: Sequence[str], scores: Mapping[str, float], q: float):
    """Survivors and removals after deleting the top-q fraction by score.

    Ties break toward ascending id so removal order is deterministic.
    Survivors keep their original order.
    """
    if not 0.0 <= q < 1.0:
        raise ValidationError(f"removal fraction must lie in [0, 1), got {q}")
    ids = list(ids)
    r = removal_count(q, len(ids))
    order = sorted(ids, key=lambda i: (-scores[i], i))
    removed = set(order[:r])
    survivors = tuple(i for i in ids if i not in removed)
    return survivors, tuple(order[:r])


def _aggregate(records: list[TrialRecord], q_list, metric_names, trials: int):
    rows = []
    for metric in metric_names:
        for q in q_list:
            vals = [rec.values[metric] for rec in records if rec.q == q]
            mean = sum(vals) / len(vals)
            if len(vals) > 1:
                var = sum((v - mean) ** 2 for v in vals) / (len(vals) - 1)
                std = math.sqrt(var)
            else:
                std = 0.0
            rows.append(AggregateRow(metric=metric, q=q, mean=mean, std=std, trials=trials))
    return tuple(rows)


def run_sweep(
    subject,
    sweep_config: SweepConfig,
    metric_config: MetricConfig,
    resampler: Resampler | None = None,
) -> SweepResult:
    """Full removal sweep; see the module docstring for the protocol.

    subject is a DeploymentInstance for fss/mldi targets and a sequence of
    AlgorithmDescriptor for arq. resampler, when given, redraws per-trial
    operational attributes (availability, MTBF) from a seed derived off the
    sweep master seed; it is ignored for portfolio targets.
    """
    target = sweep_config.target
    start_totals = counters.snapshot()
    records: list[TrialRecord] = []

    if target in ("fss", "mldi"):
        if not isinstance(subject, DeploymentInstance):
            raise ValidationError(f"{target} sweeps need a deployment instance")
        if target == "fss" and sweep_config.function_id not in subject.functions:
            raise ValidationError(f"unknown function id: {sweep_config.function_id}")
        all_ids = [el.id for el in subject.elements]
        metric_names = (
            ("fss_baseline", "fss_weighted") if target == "fss" else ("mldi_baseline", "mldi_enhanced")
        )
    else:
        subject = list(subject)
        all_ids = [a.id for a in subject]
        metric_names = ("arq_hard", "arq_soft")

    for trial in range(sweep_config.trials):
        if target in ("fss", "mldi") and resampler is not None:
            rng = derive_rng(sweep_config.seed, STREAM_TRIAL_RESAMPLE, trial)
            trial_subject = resampler(subject, rng)
        else:
            trial_subject = subject

        scores = importance_scores(target, trial_subject, metric_config, sweep_config.function_id)

        for q_index, q in enumerate(sweep_config.q_list):
            if sweep_config.attack == "targeted":
                survivors, removed = rank_and_remove(all_ids, scores, q)
            else:
                r = removal_count(q, len(all_ids))
                rng = derive_rng(sweep_config.seed, STREAM_RANDOM_ATTACK, trial, q_index)
                removed_arr = rng.choice(len(all_ids), size=r, replace=False)
                removed_set = {all_ids[int(i)] for i in removed_arr}
                survivors = tuple(i for i in all_ids if i not in removed_set)
                removed = tuple(i for i in all_ids if i in removed_set)

            before = counters.snapshot()
            values, flagged = _evaluate(target, trial_subject, survivors, removed, sweep_config, metric_config)
            after = counters.snapshot()
            records.append(
                TrialRecord(
                    q=q,
                    trial=trial,
                    removed=removed,
                    survivor_count=len(survivors),
                    values=values,
                    flagged=flagged,
                    dissimilarity_evals=after["dissimilarity_evals"] - before["dissimilarity_evals"],
                    summand_visits=after["summand_visits"] - before["summand_visits"],
                )
            )

    records.sort(key=lambda rec: (rec.q, rec.trial))
    aggregates = _aggregate(records, sweep_config.q_list, metric_names, sweep_config.trials)
    end_totals = counters.snapshot()
    totals = {key: end_totals[key] - start_totals[key] for key in end_totals}
    label = {
        "fss": sweep_config.function_id,
        "arq": "portfolio",
        "mldi": "instance",
    }[target]
    return SweepResult(
        target_label=label,
        sweep_config=sweep_config,
        metric_config=metric_config,
        records=tuple(records),
        aggregates=aggregates,
        totals=totals,
    )


def _evaluate(target, subject, survivors, removed, sweep_config, metric_config):
    if target == "fss":
        if not survivors:
            return {"fss_baseline": 0.0, "fss_weighted": 0.0}, True
        restricted = subject.restrict(survivors)
        report = fss_weighted(restricted, sweep_config.function_id, metric_config)
        return {"fss_baseline": report.baseline, "fss_weighted": report.weighted}, report.n == 0

    if target == "mldi":
        by_layer = {"L1": [], "L2": [], "L3": []}
        for eid in removed:
            by_layer[subject.element(eid).layer].append(eid)
        state = propagate_failures(subject, by_layer["L1"], by_layer["L2"], by_layer["L3"])
        report = mldi_report(subject, state, metric_config)
        return {"mldi_baseline": report.baseline, "mldi_enhanced": report.enhanced}, False

    surviving = [a for a in subject if a.id in set(survivors)]
    if not surviving:
        return {"arq_hard": 0.0, "arq_soft": 0.0}, True
    report = arq_report(surviving, metric_config)
    return {"arq_hard": report.hard, "arq_soft": report.soft}, False
