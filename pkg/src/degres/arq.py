"""Algorithmic Resilience Quotient over an algorithm portfolio.

Each algorithm carries a performance descriptor P (delivered behaviour:
throughput, latency, error rate, ...) and a structural descriptor S
(realization lineage: receiver logic family, scheduling style, software
stack features, ...). The soft quotient averages K_P * D_s over ordered
pairs, rewarding pairs that stay close in performance while differing in
structure; the hard quotient counts the fraction of ordered pairs that
clear both thresholds at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import kernels
from .errors import ValidationError
from .instrumentation import counters
from .model import MetricConfig


@dataclass(frozen=True)
class AlgorithmDescriptor:
    """One algorithm's performance and structure vectors."""

    id: str
    performance: tuple[float, ...]
    structure: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "performance", tuple(float(x) for x in self.performance))
        object.__setattr__(self, "structure", tuple(float(x) for x in self.structure))
        if not self.id:
            raise ValidationError("algorithm id must be a non-empty string")
        if any(x < 0.0 for x in self.structure):
            raise ValidationError(f"algorithm {self.id}: structure entries must be non-negative")
        if not any(x > 0.0 for x in self.structure):
            raise ValidationError(f"algorithm {self.id}: structure vector must be non-zero")


Portfolio = Sequence[AlgorithmDescriptor]


@dataclass(frozen=True)
class ArqReport:
    """Hard/soft quotients plus the pairwise matrices behind them."""

    ids: tuple[str, ...]
    hard: float
    soft: float
    kernel: np.ndarray
    separation: np.ndarray

    def to_dict(self) -> dict:
        return {
            "ids": list(self.ids),
            "hard": self.hard,
            "soft": self.soft,
            "kernel": self.kernel.tolist(),
            "separation": self.separation.tolist(),
        }


def performance_kernel(p_i: Sequence[float], p_j: Sequence[float], sigma: float) -> float:
    """Gaussian performance similarity exp(-|Pi - Pj|^2 / (2 sigma^2))."""
    if sigma <= 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    if len(p_i) != len(p_j):
        raise ValidationError(
            f"performance descriptor dimensions differ: {len(p_i)} vs {len(p_j)}"
        )
    sq = 0.0
    for a, b in zip(p_i, p_j):
        diff = a - b
        sq += diff * diff
    return math.exp(-sq / (2.0 * sigma * sigma))


def structural_separation(s_i: Sequence[float], s_j: Sequence[float]) -> float:
    """One minus cosine similarity of two non-negative structure vectors."""
    if len(s_i) != len(s_j):
        raise ValidationError(f"structure descriptor dimensions differ: {len(s_i)} vs {len(s_j)}")
    dot = 0.0
    ni = 0.0
    nj = 0.0
    for a, b in zip(s_i, s_j):
        dot += a * b
        ni += a * a
        nj += b * b
    if ni == 0.0 or nj == 0.0:
        raise ValidationError("structure vector must be non-zero for cosine separation")
    v = 1.0 - dot / (math.sqrt(ni) * math.sqrt(nj))
    return min(1.0, max(0.0, v))


def _portfolio_arrays(portfolio: Portfolio) -> tuple[tuple[str, ...], np.ndarray, np.ndarray]:
    if not portfolio:
        raise ValidationError("portfolio must contain at least one algorithm")
    ids = tuple(a.id for a in portfolio)
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})[0]
        raise ValidationError(f"duplicate algorithm id: {dup}")
    d = len(portfolio[0].performance)
    ks = len(portfolio[0].structure)
    for a in portfolio:
        if len(a.performance) != d:
            raise ValidationError(
                f"algorithm {a.id}: performance dimension {len(a.performance)} differs from {d}"
            )
        if len(a.structure) != ks:
            raise ValidationError(
                f"algorithm {a.id}: structure dimension {len(a.structure)} differs from {ks}"
            )
    perf = np.ascontiguousarray([a.performance for a in portfolio], dtype=np.float64)
    struct = np.ascontiguousarray([a.structure for a in portfolio], dtype=np.float64)
    return ids, perf.reshape(len(ids), d), struct.reshape(len(ids), ks)


def kernel_matrix(portfolio: Portfolio, sigma: float) -> tuple[tuple[str, ...], np.ndarray]:
    """Pairwise Gaussian performance-similarity matrix (unit diagonal)."""
    if sigma <= 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    ids, perf, _ = _portfolio_arrays(portfolio)
    kmat, evals = kernels.gaussian_kernel_matrix(perf, sigma)
    counters.kernel_evals += evals
    return ids, kmat


def separation_matrix(portfolio: Portfolio) -> tuple[tuple[str, ...], np.ndarray]:
    """Pairwise cosine structural-dissimilarity matrix (zero diagonal)."""
    ids, _, struct = _portfolio_arrays(portfolio)
    dmat, evals = kernels.cosine_dissimilarity_matrix(struct)
    counters.separation_evals += evals
    return ids, dmat


def arq_report(portfolio: Portfolio, config: MetricConfig) -> ArqReport:
    """Both quotients plus the K_P and D_s matrices, one pass over pairs."""
    ids, kmat = kernel_matrix(portfolio, config.sigma)
    _, dmat = separation_matrix(portfolio)
    n = len(ids)
    if n <= 1:
        return ArqReport(ids=ids, hard=0.0, soft=0.0, kernel=kmat, separation=dmat)
    soft_sum, hard_count, visits = kernels.arq_pair_reduction(
        kmat, dmat, config.epsilon, config.delta
    )
    counters.summand_visits += visits
    norm = float(n * (n - 1))
    return ArqReport(
        ids=ids, hard=hard_count / norm, soft=soft_sum / norm, kernel=kmat, separation=dmat
    )


def arq_soft(portfolio: Portfolio, sigma: float) -> float:
    """Mean over ordered pairs of K_P * D_s; 0 for portfolios of size <= 1."""
    config = MetricConfig(sigma=sigma)
    return arq_report(portfolio, config).soft


def arq_hard(portfolio: Portfolio, epsilon: float, delta: float, sigma: float) -> float:
    """Fraction of ordered pairs with K_P >= epsilon and D_s > delta."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValidationError(f"epsilon must lie in [0, 1], got {epsilon}")
    config = MetricConfig(sigma=sigma, epsilon=epsilon, delta=delta)
    return arq_report(portfolio, config).hard


def kernel_centrality(portfolio: Portfolio, sigma: float) -> dict[str, float]:
    """Per-algorithm summed kernel similarity to all peers.

    The removal priority under targeted attack: high centrality marks the
    performance-compatible bridges whose loss hurts most.
    """
    ids, kmat = kernel_matrix(portfolio, sigma)
    sums = kmat.sum(axis=1) - 1.0  # unit diagonal excluded
    return {aid: float(s) for aid, s in zip(ids, sums)}
