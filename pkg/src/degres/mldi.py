"""Multi-Layer Degeneracy Index with upward failure propagation.

The deployment stack is three vertically coupled layers (L1 physical, L2
control/virtualization, L3 service). Failures propagate upward through the
binary dependency matrices: a dependent element stays active only while at
least one of its upstream dependencies is active; elements with no
dependency row entries are self-sufficient.

The baseline index averages per-layer ratios of admissible, mutually
distinct survivors over the layer's full element count. The enhanced index
averages normalized functional entropy, so it sees how evenly the active
elements spread over the function catalog rather than how many survive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._backend import kernels
from .errors import ValidationError
from .fss import node_weight
from .model import (
    LAYERS,
    DeploymentInstance,
    MetricConfig,
    PropagationState,
    WeightMode,
)


@dataclass(frozen=True)
class LayerDiagnostics:
    """Per-layer view: degeneracy ratio, entropy, and function coverage."""

    layer: str
    size: int
    active_count: int
    distinct_ids: tuple[str, ...]
    tau: float
    entropy_raw: float
    entropy_norm: float
    coverage: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "layer": self.layer,
            "size": self.size,
            "active_count": self.active_count,
            "distinct_ids": list(self.distinct_ids),
            "tau": self.tau,
            "entropy_raw": self.entropy_raw,
            "entropy_norm": self.entropy_norm,
            "coverage": dict(self.coverage),
        }


@dataclass(frozen=True)
class MldiReport:
    """Baseline and entropy-enhanced indices with per-layer diagnostics."""

    baseline: float
    enhanced: float
    per_layer: tuple[LayerDiagnostics, ...]
    gamma: float

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline,
            "enhanced": self.enhanced,
            "per_layer": [d.to_dict() for d in self.per_layer],
            "gamma": self.gamma,
        }


def propagate_failures(
    instance: DeploymentInstance,
    failed_l1: Iterable[str] = (),
    failed_l2: Iterable[str] = (),
    failed_l3: Iterable[str] = (),
) -> PropagationState:
    """Activity state after direct failures propagate upward.

    An element is active iff it is not directly failed and (it has no
    dependencies, or at least one depended-on upstream element is active).
    """
    failed_by_layer = {"L1": frozenset(failed_l1), "L2": frozenset(failed_l2), "L3": frozenset(failed_l3)}
    for layer, ids in failed_by_layer.items():
        for eid in ids:
            el = instance.element(eid)
            if el.layer != layer:
                raise ValidationError(f"element {eid} is in layer {el.layer}, not {layer}")

    bits: dict[str, int] = {}

    def direct(layer: str) -> np.ndarray:
        positions = instance.layer_positions(layer)
        return np.asarray(
            [0 if instance.elements[p].id in failed_by_layer[layer] else 1 for p in positions],
            dtype=np.int64,
        )

    x1 = direct("L1")
    for p, bit in zip(instance.layer_positions("L1"), x1):
        bits[instance.elements[p].id] = int(bit)

    def step(upstream_state: np.ndarray, dep: np.ndarray, layer: str) -> np.ndarray:
        own = direct(layer)
        if dep.shape[0] == 0:
            return own
        has_deps = dep.sum(axis=1) > 0
        alive_upstream = dep @ upstream_state > 0 if dep.shape[1] else np.zeros(dep.shape[0], dtype=bool)
        ok = np.where(has_deps, alive_upstream, True)
        return own * ok.astype(np.int64)

    x2 = step(x1, instance.topology.b12, "L2")
    for p, bit in zip(instance.layer_positions("L2"), x2):
        bits[instance.elements[p].id] = int(bit)
    x3 = step(x2, instance.topology.b23, "L3")
    for p, bit in zip(instance.layer_positions("L3"), x3):
        bits[instance.elements[p].id] = int(bit)
    return PropagationState(bits=bits)


def admissible_distinct_set(
    instance: DeploymentInstance,
    layer: str,
    state: PropagationState,
    config: MetricConfig,
) -> frozenset[str]:
    """Greedy maximal set of active, admissible, mutually distinct elements.

    Admissibility is always the joint availability-reliability gate
    (node weight > 0 under joint mode), whatever weight mode the config
    selects for scoring. Candidates are scanned in ascending id order and
    kept iff their dissimilarity to every already-kept element strictly
    exceeds delta.
    """
    candidates = [
        p
        for p in sorted(instance.layer_positions(layer), key=lambda p: instance.elements[p].id)
        if state.is_active(instance.elements[p].id)
        and node_weight(instance.elements[p], WeightMode.JOINT, config) > 0.0
    ]
    if not candidates:
        return frozenset()
    order = np.asarray(candidates, dtype=np.int64)
    kept = kernels.greedy_distinct(instance.dissimilarity.values, order, config.delta)
    return frozenset(instance.elements[int(p)].id for p in kept)


def layer_entropy(
    instance: DeploymentInstance, layer: str, state: PropagationState, m: int
) -> tuple[float, float]:
    """(raw, normalized) entropy of the active support distribution.

    Support counts over the m-function catalog are renormalized into a
    probability distribution (elements may support several functions), so
    the normalized value H/log(m) stays within [0, 1]. An all-inactive
    layer yields (0, 0); m = 1 admits no spread, so normalized entropy is 0.
    """
    counts = _support_counts(instance, layer, state)
    total = float(sum(counts.values()))
    if total == 0.0:
        return 0.0, 0.0
    h = 0.0
    for c in counts.values():
        if c > 0:
            p = c / total
            h -= p * math.log(p)
    if m <= 1:
        return h, 0.0
    return h, h / math.log(m)


def _support_counts(instance, layer, state) -> dict[str, int]:
    counts = {fid: 0 for fid in instance.functions}
    for p in instance.layer_positions(layer):
        el = instance.elements[p]
        if state.is_active(el.id):
            for fid in el.supports:
                counts[fid] += 1
    return counts


def layer_diagnostics(
    instance: DeploymentInstance,
    layer: str,
    state: PropagationState,
    config: MetricConfig,
) -> LayerDiagnostics:
    """Full per-layer readout used by both indices and the table exports."""
    positions = instance.layer_positions(layer)
    size = len(positions)
    if size == 0:
        raise ValidationError(f"layer {layer} is empty")
    active = [p for p in positions if state.is_active(instance.elements[p].id)]
    distinct = admissible_distinct_set(instance, layer, state, config)
    m = config.m if config.m is not None else len(instance.functions)
    h_raw, h_norm = layer_entropy(instance, layer, state, m)
    counts = _support_counts(instance, layer, state)
    denom = float(len(active))
    coverage = {fid: (counts[fid] / denom if denom else 0.0) for fid in instance.functions}
    return LayerDiagnostics(
        layer=layer,
        size=size,
        active_count=len(active),
        distinct_ids=tuple(sorted(distinct)),
        tau=len(distinct) / size,
        entropy_raw=h_raw,
        entropy_norm=h_norm,
        coverage=coverage,
    )


def mldi_report(
    instance: DeploymentInstance, state: PropagationState, config: MetricConfig
) -> MldiReport:
    """Both indices over the three layers for one propagation state."""
    diags = tuple(layer_diagnostics(instance, layer, state, config) for layer in LAYERS)
    k = len(diags)
    baseline = sum(d.tau for d in diags) / k
    enhanced = sum(d.entropy_norm for d in diags) / k
    return MldiReport(baseline=baseline, enhanced=enhanced, per_layer=diags, gamma=config.gamma)


def mldi_baseline(
    instance: DeploymentInstance, state: PropagationState, config: MetricConfig
) -> float:
    """Mean over layers of |distinct admissible survivors| / |layer|."""
    return mldi_report(instance, state, config).baseline


def mldi_enhanced(
    instance: DeploymentInstance, state: PropagationState, config: MetricConfig
) -> float:
    """Mean over layers of normalized active-support entropy."""
    return mldi_report(instance, state, config).enhanced
