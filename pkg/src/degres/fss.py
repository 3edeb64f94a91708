"""Functional Substitution Score: baseline and operationally weighted forms.

The baseline score is the fraction of ordered realization pairs of a
function whose structural dissimilarity strictly exceeds the threshold
delta. The weighted form scales every distinct pair by a capacity/load
compatibility weight and by per-node availability/reliability admissibility
weights, so structurally distinct but operationally weak substitutes stop
counting.

Both scores are 0 by definition for functions with fewer than two
realizations: a single realization offers no substitutes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .instrumentation import counters
from .model import DeploymentInstance, Element, MetricConfig, WeightMode, reliability


@dataclass(frozen=True)
class FssReport:
    """Substitution scores for one function plus the weights behind them."""

    function_id: str
    n: int
    baseline: float
    weighted: float
    per_node_weights: dict[str, float]
    admissible_count: int

    def to_dict(self) -> dict:
        return {
            "function_id": self.function_id,
            "n": self.n,
            "baseline": self.baseline,
            "weighted": self.weighted,
            "per_node_weights": dict(self.per_node_weights),
            "admissible_count": self.admissible_count,
        }


def node_weight(element: Element, mode: WeightMode, config: MetricConfig) -> float:
    """Operational admissibility weight of a single element.

    none: 1; availability: A * 1{A >= a_min}; reliability: R(T) * 1{R(T) >=
    r_min}; joint: the product of both gated factors.
    """
    mode = WeightMode.parse(mode)
    if mode is WeightMode.NONE:
        return 1.0
    if mode is WeightMode.AVAILABILITY:
        a = element.availability
        return a if a >= config.a_min else 0.0
    r = reliability(element.mtbf, config.mission_time)
    if mode is WeightMode.RELIABILITY:
        return r if r >= config.r_min else 0.0
    a = element.availability
    if a >= config.a_min and r >= config.r_min:
        return a * r
    return 0.0


def pair_weight(e_i: Element, e_j: Element, d_ij: float) -> float:
    """Capacity/load compatibility weight min(Ci,Cj)/(1+|Li-Lj|) * D_ij."""
    cmin = e_i.capacity if e_i.capacity < e_j.capacity else e_j.capacity
    return (cmin / (1.0 + abs(e_i.load - e_j.load))) * d_ij


def _weights_vector(instance: DeploymentInstance, positions, config: MetricConfig) -> np.ndarray:
    w = np.zeros(instance.n, dtype=np.float64)
    for p in positions:
        w[p] = node_weight(instance.elements[p], config.weight_mode, config)
    return w


def _reduce(instance: DeploymentInstance, function_id: str, delta: float, w: np.ndarray):
    positions = instance.positions_supporting(function_id)
    n = len(positions)
    if n <= 1:
        return positions, n, 0.0, 0.0
    idx = np.asarray(positions, dtype=np.int64)
    distinct, weighted_sum, visits = kernels.fss_pair_reduction(
        instance.dissimilarity.values, instance._capacity, instance._load, w, idx, delta
    )
    counters.summand_visits += visits
    norm = float(n * (n - 1))
    return positions, n, distinct / norm, weighted_sum / norm


def fss_baseline(instance: DeploymentInstance, function_id: str, delta: float) -> float:
    """Fraction of ordered realization pairs with dissimilarity above delta."""
    ones = np.ones(instance.n, dtype=np.float64)
    _, _, baseline, _ = _reduce(instance, function_id, delta, ones)
    return baseline


def fss_weighted(instance: DeploymentInstance, function_id: str, config: MetricConfig) -> FssReport:
    """Weighted substitution score together with the baseline and weights."""
    positions = instance.positions_supporting(function_id)
    w = _weights_vector(instance, positions, config)
    _, n, baseline, weighted = _reduce(instance, function_id, config.delta, w)
    per_node = {instance.elements[p].id: float(w[p]) for p in positions}
    return FssReport(
        function_id=function_id,
        n=n,
        baseline=baseline,
        weighted=weighted,
        per_node_weights=per_node,
        admissible_count=sum(1 for v in per_node.values() if v > 0.0),
    )


def weighted_contributions(
    instance: DeploymentInstance, function_id: str, config: MetricConfig
) -> dict[str, float]:
    """Each realization's own ordered-pair share of the weighted score.

    Used as the removal-importance score when attacking a function: an
    element that never forms an admissible distinct pair scores 0.
    """
    positions = instance.positions_supporting(function_id)
    if len(positions) <= 1:
        return {instance.elements[p].id: 0.0 for p in positions}
    w = _weights_vector(instance, positions, config)
    idx = np.asarray(positions, dtype=np.int64)
    scores, visits = kernels.fss_pair_contributions(
        instance.dissimilarity.values, instance._capacity, instance._load, w, idx, config.delta
    )
    counters.scoring_visits += visits
    return {instance.elements[p].id: float(scores[a]) for a, p in enumerate(positions)}
