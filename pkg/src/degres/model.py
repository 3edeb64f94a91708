"""Domain model: elements, deployment instances, and shared numeric primitives.

Everything here is immutable after construction and all operations are pure,
so instances can be shared freely across threads and sweep trials.

Conventions used throughout the package:

  * element ids are opaque strings; wherever a deterministic order is
    required (summation, greedy scans, tie-breaks) ascending id order means
    plain string sort;
  * per-layer matrix conventions: dependency matrix rows follow the
    dependent layer's elements in instance order, columns the upstream
    layer's elements in instance order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._backend import kernels
from .errors import ValidationError
from .instrumentation import counters

LAYERS = ("L1", "L2", "L3")


class WeightMode(str, Enum):
    """Node-weight regimes for the weighted substitution score."""

    NONE = "none"
    AVAILABILITY = "availability"
    RELIABILITY = "reliability"
    JOINT = "joint"

    @classmethod
    def parse(cls, value) -> "WeightMode":
        if isinstance(value, WeightMode):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValidationError(f"weight_mode must be one of {choices}, got {value!r}") from None


def reliability(mtbf: float, t: float) -> float:
    """Survival probability exp(-t/mtbf) over a mission of t hours."""
    if mtbf <= 0:
        raise ValidationError(f"mtbf must be positive, got {mtbf}")
    if t < 0:
        raise ValidationError(f"mission time must be non-negative, got {t}")
    return math.exp(-t / mtbf)


@dataclass(frozen=True)
class StructuralSignature:
    """Mixed feature vector describing how an element is realized.

    categorical: small integer category codes (placement domain,
    implementation lineage, software stack, ...); numeric: real features
    pre-normalized to [0, 1].
    """

    categorical: tuple[int, ...] = ()
    numeric: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "categorical", tuple(int(c) for c in self.categorical))
        object.__setattr__(self, "numeric", tuple(float(x) for x in self.numeric))
        for x in self.numeric:
            if not 0.0 <= x <= 1.0:
                raise ValidationError(f"numeric signature features must lie in [0, 1], got {x}")

    @property
    def arity(self) -> tuple[int, int]:
        return len(self.categorical), len(self.numeric)


def structural_dissimilarity(a: StructuralSignature, b: StructuralSignature) -> float:
    """Mean per-feature distance between two signatures, in [0, 1].

    A categorical feature contributes 0 on a code match and 1 otherwise; a
    numeric feature contributes the absolute difference. Symmetric, and 0
    exactly for feature-wise identical signatures.
    """
    if a.arity != b.arity:
        raise ValidationError(
            "signature arity mismatch: "
            f"categorical {len(a.categorical)} vs {len(b.categorical)}, "
            f"numeric {len(a.numeric)} vs {len(b.numeric)}"
        )
    total = len(a.categorical) + len(a.numeric)
    if total == 0:
        raise ValidationError("signatures have no features; dissimilarity is undefined")
    acc = 0.0
    for ca, cb in zip(a.categorical, b.categorical):
        if ca != cb:
            acc += 1.0
    for xa, xb in zip(a.numeric, b.numeric):
        acc += abs(xa - xb)
    return acc / total


@dataclass(frozen=True)
class Element:
    """One realization of one or more functions."""

    id: str
    signature: StructuralSignature
    capacity: float
    load: float
    availability: float
    mtbf: float
    layer: str
    supports: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "supports", frozenset(self.supports))
        if not self.id:
            raise ValidationError("element id must be a non-empty string")
        if not 0.0 < self.capacity <= 1.0:
            raise ValidationError(f"element {self.id}: capacity must lie in (0, 1], got {self.capacity}")
        if not 0.0 <= self.load <= self.capacity:
            raise ValidationError(
                f"element {self.id}: load must lie in [0, capacity={self.capacity}], got {self.load}"
            )
        if not 0.0 <= self.availability <= 1.0:
            raise ValidationError(
                f"element {self.id}: availability must lie in [0, 1], got {self.availability}"
            )
        if self.mtbf <= 0:
            raise ValidationError(f"element {self.id}: mtbf must be positive, got {self.mtbf}")
        if self.layer not in LAYERS:
            raise ValidationError(f"element {self.id}: layer must be one of {LAYERS}, got {self.layer!r}")
        if not self.supports:
            raise ValidationError(f"element {self.id}: supports must be non-empty")

    def reliability(self, t: float) -> float:
        return reliability(self.mtbf, t)


@dataclass(frozen=True)
class DissimilarityMatrix:
    """Dense symmetric matrix of pairwise structural dissimilarities."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError(f"dissimilarity matrix must be square, got shape {arr.shape}")
        if not np.array_equal(arr, arr.T):
            raise ValidationError("dissimilarity matrix must be symmetric")
        if np.any(np.diagonal(arr) != 0.0):
            raise ValidationError("dissimilarity matrix must have a zero diagonal")
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise ValidationError("dissimilarity entries must lie in [0, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DissimilarityMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.values.shape, self.values.tobytes()))


@dataclass(frozen=True)
class LayerTopology:
    """Binary upward-dependency matrices between the three layers.

    b12 has one row per L2 element and one column per L1 element; a one
    marks a dependency. b23 likewise couples L3 rows to L2 columns.
    """

    b12: np.ndarray
    b23: np.ndarray

    def __post_init__(self):
        for name in ("b12", "b23"):
            arr = np.ascontiguousarray(np.asarray(getattr(self, name), dtype=np.int64))
            if arr.ndim != 2:
                raise ValidationError(f"{name} must be a 2-d matrix, got ndim {arr.ndim}")
            if arr.size and not np.isin(arr, (0, 1)).all():
                raise ValidationError(f"{name} entries must be 0 or 1")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __eq__(self, other):
        if not isinstance(other, LayerTopology):
            return NotImplemented
        return np.array_equal(self.b12, other.b12) and np.array_equal(self.b23, other.b23)

    def __hash__(self):
        return hash((self.b12.tobytes(), self.b23.tobytes()))


@dataclass(frozen=True)
class PropagationState:
    """Activity bit per element id after a disruption has propagated."""

    bits: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "bits", dict(self.bits))

    def is_active(self, element_id: str) -> bool:
        return bool(self.bits[element_id])

    def active_ids(self) -> frozenset[str]:
        return frozenset(eid for eid, bit in self.bits.items() if bit)


@dataclass(frozen=True)
class MetricConfig:
    """All metric thresholds and knobs in one immutable bundle.

    gamma is accepted and echoed into reports for config completeness but
    enters no computation.
    """

    delta: float = 0.5
    a_min: float = 0.5
    r_min: float = 0.5
    mission_time: float = 168.0
    weight_mode: WeightMode = WeightMode.JOINT
    epsilon: float = 0.6
    sigma: float = 0.5
    m: int | None = None
    k: int | None = None
    gamma: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "weight_mode", WeightMode.parse(self.weight_mode))
        for name in ("delta", "a_min", "r_min", "epsilon"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {val}")
        if self.mission_time <= 0:
            raise ValidationError(f"mission_time must be positive, got {self.mission_time}")
        if self.sigma <= 0:
            raise ValidationError(f"sigma must be positive, got {self.sigma}")
        if self.m is not None and self.m < 1:
            raise ValidationError(f"m must be at least 1, got {self.m}")
        if self.k is not None and self.k < 1:
            raise ValidationError(f"k must be at least 1, got {self.k}")

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "a_min": self.a_min,
            "r_min": self.r_min,
            "mission_time": self.mission_time,
            "weight_mode": self.weight_mode.value,
            "epsilon": self.epsilon,
            "sigma": self.sigma,
            "m": self.m,
            "k": self.k,
            "gamma": self.gamma,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MetricConfig":
        allowed = {
            "delta", "a_min", "r_min", "mission_time", "weight_mode",
            "epsilon", "sigma", "m", "k", "gamma",
        }
        unknown = set(data) - allowed
        if unknown:
            raise ValidationError(f"unknown metric config key: {sorted(unknown)[0]}")
        return cls(**data)


def _signature_arrays(elements: Sequence[Element]) -> tuple[np.ndarray, np.ndarray]:
    n = len(elements)
    n_cat, n_num = elements[0].signature.arity
    cat = np.empty((n, n_cat), dtype=np.int64)
    num = np.empty((n, n_num), dtype=np.float64)
    for pos, el in enumerate(elements):
        cat[pos, :] = el.signature.categorical
        num[pos, :] = el.signature.numeric
    return np.ascontiguousarray(cat), np.ascontiguousarray(num)


@dataclass(frozen=True)
class DeploymentInstance:
    """Full deployment model: elements, function catalog, layer topology.

    The pairwise dissimilarity matrix is built on construction unless a
    precomputed one is supplied (e.g. when loading from file).
    """

    elements: tuple[Element, ...]
    functions: tuple[str, ...]
    topology: LayerTopology
    dissimilarity: DissimilarityMatrix | None = None

    _index: dict = field(init=False, repr=False, compare=False, default=None)
    _layer_positions: dict = field(init=False, repr=False, compare=False, default=None)
    _id_order: np.ndarray = field(init=False, repr=False, compare=False, default=None)
    _cat: np.ndarray = field(init=False, repr=False, compare=False, default=None)
    _num: np.ndarray = field(init=False, repr=False, compare=False, default=None)
    _capacity: np.ndarray = field(init=False, repr=False, compare=False, default=None)
    _load: np.ndarray = field(init=False, repr=False, compare=False, default=None)
    _availability: np.ndarray = field(init=False, repr=False, compare=False, default=None)
    _mtbf: np.ndarray = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        elements = tuple(self.elements)
        functions = tuple(self.functions)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "functions", functions)
        if not elements:
            raise ValidationError("instance must contain at least one element")
        if not functions:
            raise ValidationError("function catalog must be non-empty")
        if len(set(functions)) != len(functions):
            raise ValidationError("function catalog contains duplicate ids")

        ids = [el.id for el in elements]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})[0]
            raise ValidationError(f"duplicate element id: {dup}")
        catalog = set(functions)
        arity = elements[0].signature.arity
        if sum(arity) == 0:
            raise ValidationError("signatures have no features; dissimilarity is undefined")
        for el in elements:
            if el.signature.arity != arity:
                raise ValidationError(
                    f"element {el.id}: signature arity {el.signature.arity} differs from {arity}"
                )
            missing = el.supports - catalog
            if missing:
                raise ValidationError(
                    f"element {el.id} supports unknown function: {sorted(missing)[0]}"
                )

        index = {el.id: pos for pos, el in enumerate(elements)}
        layer_positions = {
            layer: tuple(pos for pos, el in enumerate(elements) if el.layer == layer)
            for layer in LAYERS
        }
        sizes = {layer: len(layer_positions[layer]) for layer in LAYERS}
        if self.topology.b12.shape != (sizes["L2"], sizes["L1"]):
            raise ValidationError(
                f"b12 shape {self.topology.b12.shape} does not match layer sizes "
                f"({sizes['L2']}, {sizes['L1']})"
            )
        if self.topology.b23.shape != (sizes["L3"], sizes["L2"]):
            raise ValidationError(
                f"b23 shape {self.topology.b23.shape} does not match layer sizes "
                f"({sizes['L3']}, {sizes['L2']})"
            )

        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_layer_positions", layer_positions)
        object.__setattr__(
            self,
            "_id_order",
            np.asarray(sorted(range(len(elements)), key=lambda p: elements[p].id), dtype=np.int64),
        )
        cat, num = _signature_arrays(elements)
        object.__setattr__(self, "_cat", cat)
        object.__setattr__(self, "_num", num)
        for name, attr in (
            ("_capacity", "capacity"),
            ("_load", "load"),
            ("_availability", "availability"),
            ("_mtbf", "mtbf"),
        ):
            arr = np.ascontiguousarray([getattr(el, attr) for el in elements], dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

        if self.dissimilarity is None:
            object.__setattr__(self, "dissimilarity", build_dissimilarity_matrix(self))
        elif self.dissimilarity.n != len(elements):
            raise ValidationError(
                f"dissimilarity dimension {self.dissimilarity.n} does not match "
                f"element count {len(elements)}"
            )

    @property
    def n(self) -> int:
        return len(self.elements)

    def index_of(self, element_id: str) -> int:
        try:
            return self._index[element_id]
        except KeyError:
            raise ValidationError(f"unknown element id: {element_id}") from None

    def element(self, element_id: str) -> Element:
        return self.elements[self.index_of(element_id)]

    def layer_positions(self, layer: str) -> tuple[int, ...]:
        if layer not in LAYERS:
            raise ValidationError(f"unknown layer: {layer!r}")
        return self._layer_positions[layer]

    def positions_supporting(self, function_id: str) -> tuple[int, ...]:
        """Positions of the elements realizing a function, ascending by id."""
        if function_id not in self.functions:
            raise ValidationError(f"unknown function id: {function_id}")
        return tuple(
            int(p) for p in self._id_order if function_id in self.elements[p].supports
        )

    def id_order(self) -> np.ndarray:
        """All element positions sorted by ascending element id."""
        return self._id_order

    def restrict(self, surviving_ids: Iterable[str]) -> "DeploymentInstance":
        """Sub-instance over the surviving elements, dissimilarity rebuilt.

        Element order and the function catalog are preserved; dependency
        matrices are sliced to the surviving rows and columns.
        """
        keep = set(surviving_ids)
        unknown = keep - set(self._index)
        if unknown:
            raise ValidationError(f"unknown element id: {sorted(unknown)[0]}")
        elements = tuple(el for el in self.elements if el.id in keep)
        rows1 = [i for i, p in enumerate(self._layer_positions["L1"]) if self.elements[p].id in keep]
        rows2 = [i for i, p in enumerate(self._layer_positions["L2"]) if self.elements[p].id in keep]
        rows3 = [i for i, p in enumerate(self._layer_positions["L3"]) if self.elements[p].id in keep]
        topology = LayerTopology(
            b12=self.topology.b12[np.ix_(rows2, rows1)],
            b23=self.topology.b23[np.ix_(rows3, rows2)],
        )
        return DeploymentInstance(elements=elements, functions=self.functions, topology=topology)


def build_dissimilarity_matrix(instance: DeploymentInstance) -> DissimilarityMatrix:
    """All-pairs structural dissimilarity; each unordered pair evaluated once."""
    values, evals = kernels.mixed_distance_matrix(instance._cat, instance._num)
    counters.dissimilarity_evals += evals
    return DissimilarityMatrix(values=values)
