"""Synthetic deployment instances and algorithm portfolios.

The instance recipe: right-skewed capacities from a truncated log-normal
(normalized so the largest equals 1), loads as a beta fraction of the
assigned capacity, availability from a high-skew beta, MTBF hours from a
log-normal, and mixed categorical/numeric structural signatures drawn
uniformly over their schema. Dependency matrices are Bernoulli with every
dependent element guaranteed at least one upstream link.

Portfolios are built family-wise: members of one family share a structural
axis (near-twin realizations), families are paired onto shared performance
centers so cross-family pairs stay performance-compatible while being
structurally far apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .arq import AlgorithmDescriptor
from .errors import ValidationError
from .model import (
    DeploymentInstance,
    Element,
    LayerTopology,
    StructuralSignature,
)
from .seeds import STREAM_INSTANCE, STREAM_PORTFOLIO, derive_rng

REJECTION_CAP = 100_000


@dataclass(frozen=True)
class LogNormalSpec:
    mu: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValidationError(f"log-normal sigma must be positive, got {self.sigma}")

    def to_dict(self) -> dict:
        return {"mu": self.mu, "sigma": self.sigma}


@dataclass(frozen=True)
class TruncatedLogNormalSpec:
    mu: float
    sigma: float
    low: float
    high: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValidationError(f"log-normal sigma must be positive, got {self.sigma}")
        if not 0.0 <= self.low < self.high:
            raise ValidationError(
                f"truncation bounds must satisfy 0 <= low < high, got ({self.low}, {self.high})"
            )

    def to_dict(self) -> dict:
        return {"mu": self.mu, "sigma": self.sigma, "low": self.low, "high": self.high}


@dataclass(frozen=True)
class BetaSpec:
    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValidationError(
                f"beta parameters must be positive, got ({self.alpha}, {self.beta})"
            )

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class SignatureSchema:
    """Shape of the structural feature vectors.

    categorical_cardinalities: one entry per categorical feature giving the
    number of category codes; numeric_features: count of uniform [0, 1]
    numeric features.
    """

    categorical_cardinalities: tuple[int, ...] = (4, 3, 5)
    numeric_features: int = 3

    def __post_init__(self):
        object.__setattr__(
            self, "categorical_cardinalities", tuple(int(c) for c in self.categorical_cardinalities)
        )
        if any(c < 1 for c in self.categorical_cardinalities):
            raise ValidationError("categorical cardinalities must be at least 1")
        if self.numeric_features < 0:
            raise ValidationError("numeric feature count must be non-negative")
        if len(self.categorical_cardinalities) + self.numeric_features == 0:
            raise ValidationError("signature schema must define at least one feature")

    def to_dict(self) -> dict:
        return {
            "categorical_cardinalities": list(self.categorical_cardinalities),
            "numeric_features": self.numeric_features,
        }


def _default_layer_sizes(n: int) -> tuple[int, int, int]:
    return (n + 2) // 3, (n + 1) // 3, n // 3


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    element_count: int
    function_count: int = 3
    layer_sizes: tuple[int, int, int] | None = None
    capacity: TruncatedLogNormalSpec = field(
        default_factory=lambda: TruncatedLogNormalSpec(mu=-1.0, sigma=0.5, low=0.05, high=1.0)
    )
    load: BetaSpec = field(default_factory=lambda: BetaSpec(alpha=2.0, beta=5.0))
    availability: BetaSpec = field(default_factory=lambda: BetaSpec(alpha=9.0, beta=1.0))
    mtbf: LogNormalSpec = field(
        default_factory=lambda: LogNormalSpec(mu=math.log(500.0), sigma=0.6)
    )
    signature: SignatureSchema = field(default_factory=SignatureSchema)
    dependency_density: float = 0.3
    support_density: float = 0.25

    def __post_init__(self):
        if self.seed < 0:
            raise ValidationError(f"seed must be non-negative, got {self.seed}")
        if self.element_count < 1:
            raise ValidationError(f"element_count must be at least 1, got {self.element_count}")
        if self.function_count < 1:
            raise ValidationError(f"function_count must be at least 1, got {self.function_count}")
        if self.layer_sizes is not None:
            sizes = tuple(int(s) for s in self.layer_sizes)
            object.__setattr__(self, "layer_sizes", sizes)
            if len(sizes) != 3 or any(s < 1 for s in sizes):
                raise ValidationError(f"layer_sizes must be three counts >= 1, got {sizes}")
            if sum(sizes) != self.element_count:
                raise ValidationError(
                    f"layer_sizes {sizes} must sum to element_count {self.element_count}"
                )
        if not 0.0 < self.dependency_density <= 1.0:
            raise ValidationError(
                f"dependency_density must lie in (0, 1], got {self.dependency_density}"
            )
        if not 0.0 <= self.support_density <= 1.0:
            raise ValidationError(
                f"support_density must lie in [0, 1], got {self.support_density}"
            )

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "element_count": self.element_count,
            "function_count": self.function_count,
            "layer_sizes": list(self.layer_sizes) if self.layer_sizes else None,
            "capacity": self.capacity.to_dict(),
            "load": self.load.to_dict(),
            "availability": self.availability.to_dict(),
            "mtbf": self.mtbf.to_dict(),
            "signature": self.signature.to_dict(),
            "dependency_density": self.dependency_density,
            "support_density": self.support_density,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "GeneratorConfig":
        allowed = {
            "seed", "element_count", "function_count", "layer_sizes", "capacity",
            "load", "availability", "mtbf", "signature", "dependency_density",
            "support_density",
        }
        unknown = set(data) - allowed
        if unknown:
            raise ValidationError(f"unknown generator config key: {sorted(unknown)[0]}")
        kwargs = dict(data)
        if kwargs.get("layer_sizes") is not None:
            kwargs["layer_sizes"] = tuple(kwargs["layer_sizes"])
        for key, spec in (
            ("capacity", TruncatedLogNormalSpec),
            ("load", BetaSpec),
            ("availability", BetaSpec),
            ("mtbf", LogNormalSpec),
            ("signature", SignatureSchema),
        ):
            if key in kwargs and isinstance(kwargs[key], Mapping):
                sub = dict(kwargs[key])
                if key == "signature" and "categorical_cardinalities" in sub:
                    sub["categorical_cardinalities"] = tuple(sub["categorical_cardinalities"])
                try:
                    kwargs[key] = spec(**sub)
                except TypeError:
                    raise ValidationError(f"malformed generator config section: {key}") from None
        return cls(**kwargs)


@dataclass(frozen=True)
class PortfolioConfig:
    seed: int
    count: int
    families: int | None = None
    perf_dim: int = 3
    struct_dim: int | None = None
    perf_jitter: float = 0.05
    struct_jitter: float = 0.08

    def __post_init__(self):
        if self.seed < 0:
            raise ValidationError(f"seed must be non-negative, got {self.seed}")
        if self.count < 2:
            raise ValidationError(f"portfolio count must be at least 2, got {self.count}")
        if self.families is not None and self.families < 1:
            raise ValidationError(f"families must be at least 1, got {self.families}")
        if self.perf_dim < 1:
            raise ValidationError(f"perf_dim must be at least 1, got {self.perf_dim}")
        if self.struct_dim is not None and self.struct_dim < 1:
            raise ValidationError(f"struct_dim must be at least 1, got {self.struct_dim}")
        if self.perf_jitter < 0 or self.struct_jitter < 0:
            raise ValidationError("jitter amplitudes must be non-negative")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "families": self.families,
            "perf_dim": self.perf_dim,
            "struct_dim": self.struct_dim,
            "perf_jitter": self.perf_jitter,
            "struct_jitter": self.struct_jitter,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PortfolioConfig":
        allowed = {"seed", "count", "families", "perf_dim", "struct_dim", "perf_jitter", "struct_jitter"}
        unknown = set(data) - allowed
        if unknown:
            raise ValidationError(f"unknown portfolio config key: {sorted(unknown)[0]}")
        return cls(**data)


def _truncated_lognormal(rng: np.random.Generator, spec: TruncatedLogNormalSpec, size: int) -> np.ndarray:
    """Rejection sampling inside [low, high] with a hard iteration cap."""
    out = np.empty(size, dtype=np.float64)
    filled = 0
    drawn = 0
    while filled < size:
        batch = max(size - filled, 64)
        if drawn + batch > REJECTION_CAP:
            raise ValidationError(
                f"truncated log-normal sampling exceeded {REJECTION_CAP} draws; "
                f"bounds ({spec.low}, {spec.high}) reject too much mass"
            )
        draws = rng.lognormal(spec.mu, spec.sigma, batch)
        drawn += batch
        keep = draws[(draws >= spec.low) & (draws <= spec.high)]
        take = min(len(keep), size - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
    return out


def _assign_supports(rng: np.random.Generator, n: int, functions: tuple[str, ...], density: float):
    """Coverage-first assignment: every function gets >= 2 realizations when
    n >= 2m (>= 1 otherwise), every element supports something, extras are
    Bernoulli(density)."""
    m = len(functions)
    if n < m:
        raise ValidationError(
            f"cannot cover {m} functions with {n} elements; need element_count >= function_count"
        )
    target = 2 if n >= 2 * m else 1
    supports: list[set[str]] = [set() for _ in range(n)]
    cycle = [int(p) for p in rng.permutation(n)]
    cursor = 0
    for fid in functions:
        assigned = 0
        while assigned < target:
            pos = cycle[cursor % n]
            cursor += 1
            if fid not in supports[pos]:
                supports[pos].add(fid)
                assigned += 1
    for pos in range(n):
        if not supports[pos]:
            supports[pos].add(functions[int(rng.integers(0, m))])
    if density > 0.0:
        for pos in range(n):
            for fid in functions:
                if fid not in supports[pos] and rng.random() < density:
                    supports[pos].add(fid)
    return supports


def _dependency_matrix(rng: np.random.Generator, rows: int, cols: int, density: float) -> np.ndarray:
    mat = (rng.random((rows, cols)) < density).astype(np.int64)
    for r in range(rows):
        if mat[r].sum() == 0:
            mat[r, int(rng.integers(0, cols))] = 1
    return mat


def generate_instance(config: GeneratorConfig) -> DeploymentInstance:
    """Build a deployment instance; identical seeds give identical instances."""
    rng = derive_rng(config.seed, STREAM_INSTANCE)
    n = config.element_count
    functions = tuple(f"F{i + 1}" for i in range(config.function_count))
    sizes = config.layer_sizes or _default_layer_sizes(n)
    if config.layer_sizes is None and any(s < 1 for s in sizes):
        raise ValidationError(
            f"element_count {n} is too small to populate three layers; "
            "pass explicit layer_sizes or use at least 3 elements"
        )

    caps_raw = _truncated_lognormal(rng, config.capacity, n)
    caps = caps_raw / caps_raw.max()
    loads = rng.beta(config.load.alpha, config.load.beta, n) * caps
    avails = rng.beta(config.availability.alpha, config.availability.beta, n)
    mtbfs = rng.lognormal(config.mtbf.mu, config.mtbf.sigma, n)

    cards = config.signature.categorical_cardinalities
    cats = np.column_stack(
        [rng.integers(0, card, n) for card in cards]
    ) if cards else np.empty((n, 0), dtype=np.int64)
    nums = rng.random((n, config.signature.numeric_features))

    supports = _assign_supports(rng, n, functions, config.support_density)

    width = len(str(n))
    layers = ["L1"] * sizes[0] + ["L2"] * sizes[1] + ["L3"] * sizes[2]
    elements = tuple(
        Element(
            id=f"e{pos + 1:0{width}d}",
            signature=StructuralSignature(
                categorical=tuple(int(c) for c in cats[pos]),
                numeric=tuple(float(x) for x in nums[pos]),
            ),
            capacity=float(caps[pos]),
            load=float(loads[pos]),
            availability=float(avails[pos]),
            mtbf=float(mtbfs[pos]),
            layer=layers[pos],
            supports=frozenset(supports[pos]),
        )
        for pos in range(n)
    )
    topology = LayerTopology(
        b12=_dependency_matrix(rng, sizes[1], sizes[0], config.dependency_density),
        b23=_dependency_matrix(rng, sizes[2], sizes[1], config.dependency_density),
    )
    return DeploymentInstance(elements=elements, functions=functions, topology=topology)


def resample_operational(
    instance: DeploymentInstance, config: GeneratorConfig, rng: np.random.Generator
) -> DeploymentInstance:
    """Redraw availability and MTBF only; structure and loads stay fixed.

    The cached dissimilarity matrix is reused since signatures are
    untouched, so resampling adds no pairwise evaluations.
    """
    n = instance.n
    avails = rng.beta(config.availability.alpha, config.availability.beta, n)
    mtbfs = rng.lognormal(config.mtbf.mu, config.mtbf.sigma, n)
    elements = tuple(
        Element(
            id=el.id,
            signature=el.signature,
            capacity=el.capacity,
            load=el.load,
            availability=float(avails[pos]),
            mtbf=float(mtbfs[pos]),
            layer=el.layer,
            supports=el.supports,
        )
        for pos, el in enumerate(instance.elements)
    )
    return DeploymentInstance(
        elements=elements,
        functions=instance.functions,
        topology=instance.topology,
        dissimilarity=instance.dissimilarity,
    )


def generate_portfolio(config: PortfolioConfig) -> list[AlgorithmDescriptor]:
    """Family-structured portfolio with ids A1..An.

    Same-family members are performance and structure near-twins; families
    2g and 2g+1 share a performance center, so cross-family pairs within a
    group keep high kernel similarity against near-orthogonal structure.
    Guarantees hold for sigma near 1 and the default jitters.
    """
    rng = derive_rng(config.seed, STREAM_PORTFOLIO)
    count = config.count
    families = config.families if config.families is not None else (count + 1) // 2
    fam_size = (count + families - 1) // families
    struct_dim = config.struct_dim if config.struct_dim is not None else max(4, families)
    groups = (families + 1) // 2
    centers = rng.uniform(0.2, 0.8, (groups, config.perf_dim))

    portfolio = []
    for i in range(count):
        fam = i // fam_size
        center = centers[fam // 2]
        perf = center + rng.uniform(-config.perf_jitter, config.perf_jitter, config.perf_dim)
        struct = rng.uniform(0.0, config.struct_jitter, struct_dim)
        struct[fam % struct_dim] += 1.0
        portfolio.append(
            AlgorithmDescriptor(
                id=f"A{i + 1}",
                performance=tuple(float(x) for x in perf),
                structure=tuple(float(x) for x in struct),
            )
        )
    return portfolio
