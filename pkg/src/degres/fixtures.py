"""Handcrafted reference fixtures shipped with the package.

These are the instances the golden tests and the documented walk-throughs
run on. They are built from literal values, not from the synthetic
generator, so their metric values are stable across numpy versions and
platforms.
"""

from __future__ import annotations

import numpy as np

from .arq import AlgorithmDescriptor
from .model import DeploymentInstance, Element, LayerTopology, StructuralSignature


def _element(eid, cat, num, layer, supports, capacity, load, availability, mtbf):
    return Element(
        id=eid,
        signature=StructuralSignature(categorical=cat, numeric=num),
        capacity=capacity,
        load=load,
        availability=availability,
        mtbf=mtbf,
        layer=layer,
        supports=frozenset(supports),
    )


def seven_node_fixture() -> DeploymentInstance:
    """Seven nodes, three functions, built to show the admissibility gap.

    e1..e3 are mutually distinct realizations that fail the joint
    availability-reliability gate over a 168 h mission (structurally rich,
    operationally weak); e4..e7 are admissible near-clones. All seven
    realize F1, so under targeted removal the diverse trio goes first and
    the baseline substitution score for F1 collapses once only clones
    remain, while the jointly weighted score stays at zero throughout.
    """
    distinct = [
        ("e1", (0, 0, 0), (0.10, 0.90)),
        ("e2", (1, 1, 1), (0.85, 0.15)),
        ("e3", (2, 2, 2), (0.50, 0.55)),
    ]
    clones = [
        ("e4", (3, 3, 3), (0.40, 0.40)),
        ("e5", (3, 3, 3), (0.42, 0.40)),
        ("e6", (3, 3, 3), (0.40, 0.43)),
        ("e7", (3, 3, 3), (0.43, 0.42)),
    ]
    elements = []
    for eid, cat, num in distinct:
        supports = {"F1", "F3"}
        # mtbf 120 h puts R(168) = exp(-1.4) ~ 0.247 under the 0.5 gate
        elements.append(_element(eid, cat, num, "L1", supports, 0.90, 0.30, 0.92, 120.0))
    for eid, cat, num in clones:
        supports = {"F1", "F2"} if eid in ("e4", "e5") else {"F1"}
        layer = "L2" if eid in ("e4", "e5") else "L3"
        elements.append(_element(eid, cat, num, layer, supports, 0.80, 0.25, 0.95, 1200.0))
    topology = LayerTopology(
        b12=np.array([[1, 1, 0], [0, 1, 1]], dtype=np.int64),
        b23=np.array([[1, 0], [0, 1]], dtype=np.int64),
    )
    return DeploymentInstance(
        elements=tuple(elements), functions=("F1", "F2", "F3"), topology=topology
    )


def redundancy_fixture() -> DeploymentInstance:
    """Replica count against structural spread.

    F1 is realized by four admissible near-clones (high redundancy, no
    diversity), F3 by three mutually distinct admissible realizations, and
    F2 by two clones. FSS ranks F3 above F1 at delta = 0.5 despite F1's
    higher replica count.
    """
    clones = [
        ("e1", (0, 0, 0), (0.50, 0.50)),
        ("e2", (0, 0, 0), (0.52, 0.50)),
        ("e3", (0, 0, 0), (0.50, 0.53)),
        ("e4", (0, 0, 0), (0.53, 0.52)),
    ]
    distinct = [
        ("e5", (1, 1, 1), (0.10, 0.85)),
        ("e6", (2, 2, 2), (0.90, 0.20)),
        ("e7", (3, 3, 3), (0.45, 0.55)),
    ]
    elements = []
    for eid, cat, num in clones:
        supports = {"F1", "F2"} if eid in ("e1", "e2") else {"F1"}
        layer = "L1" if eid in ("e1", "e2") else "L2"
        elements.append(_element(eid, cat, num, layer, supports, 0.85, 0.30, 0.93, 900.0))
    for pos, (eid, cat, num) in enumerate(distinct):
        layer = "L2" if pos == 0 else "L3"
        elements.append(_element(eid, cat, num, layer, {"F3"}, 0.90, 0.25, 0.95, 1100.0))
    topology = LayerTopology(
        b12=np.array([[1, 0], [1, 1], [0, 1]], dtype=np.int64),
        b23=np.array([[1, 1, 0], [0, 1, 1]], dtype=np.int64),
    )
    return DeploymentInstance(
        elements=tuple(elements), functions=("F1", "F2", "F3"), topology=topology
    )


def layered_fixture() -> DeploymentInstance:
    """Rigid physical layer under balanced upper-layer functional spread.

    L1 is a single-lineage clone pool supporting only F1; L2 and L3 each
    hold three two-member lineages whose supports cover the four functions
    uniformly. m5 and m6 run without physical dependencies (edge-standalone
    controllers), so the entropy-enhanced index stays above the ratio-based
    baseline at every removal fraction even after the physical layer is
    wiped out.
    """
    elements = []
    for i in range(4):
        elements.append(
            _element(f"g{i + 1}", (0, 0, 0), (0.5, 0.5), "L1", {"F1"}, 0.95, 0.40, 0.96, 2000.0)
        )
    l2 = [
        ("m1", (1, 1, 1), (0.20, 0.20), {"F1", "F2"}),
        ("m2", (1, 1, 1), (0.21, 0.20), {"F3", "F4"}),
        ("m3", (2, 2, 2), (0.80, 0.80), {"F1", "F3"}),
        ("m4", (2, 2, 2), (0.80, 0.82), {"F2", "F4"}),
        ("m5", (3, 3, 3), (0.50, 0.90), {"F1", "F4"}),
        ("m6", (3, 3, 3), (0.52, 0.90), {"F2", "F3"}),
    ]
    for eid, cat, num, supports in l2:
        elements.append(_element(eid, cat, num, "L2", supports, 0.90, 0.30, 0.96, 2000.0))
    l3 = [
        ("s1", (4, 4, 4), (0.30, 0.60), {"F1", "F2"}),
        ("s2", (4, 4, 4), (0.31, 0.60), {"F3", "F4"}),
        ("s3", (5, 5, 5), (0.70, 0.30), {"F1", "F3"}),
        ("s4", (5, 5, 5), (0.70, 0.32), {"F2", "F4"}),
        ("s5", (6, 6, 6), (0.10, 0.90), {"F1", "F4"}),
        ("s6", (6, 6, 6), (0.12, 0.90), {"F2", "F3"}),
    ]
    for eid, cat, num, supports in l3:
        elements.append(_element(eid, cat, num, "L3", supports, 0.90, 0.30, 0.96, 2000.0))

    b12 = np.zeros((6, 4), dtype=np.int64)
    b12[0:4, :] = 1  # m1..m4 depend on every physical node; m5, m6 standalone
    b23 = np.zeros((6, 6), dtype=np.int64)
    for k in range(6):
        b23[k, k % 4] = 1
    topology = LayerTopology(b12=b12, b23=b23)
    return DeploymentInstance(
        elements=tuple(elements), functions=("F1", "F2", "F3", "F4"), topology=topology
    )


def micro_propagation_fixture() -> DeploymentInstance:
    """Six elements wired for exhaustive propagation checks.

    c1 depends on p1 alone; c2 on p1 or p2; s1 on c1 alone; s2 on c1 or c2.
    Small enough that all 64 failure subsets can be checked against the
    closed-form activity rules.
    """
    rows = [
        ("p1", (0, 0), (0.2,), "L1", {"F1"}),
        ("p2", (1, 1), (0.8,), "L1", {"F2"}),
        ("c1", (2, 0), (0.4,), "L2", {"F1"}),
        ("c2", (3, 1), (0.6,), "L2", {"F2"}),
        ("s1", (4, 0), (0.3,), "L3", {"F1"}),
        ("s2", (5, 1), (0.7,), "L3", {"F2"}),
    ]
    elements = tuple(
        _element(eid, cat, num, layer, supports, 0.9, 0.3, 0.95, 1000.0)
        for eid, cat, num, layer, supports in rows
    )
    topology = LayerTopology(
        b12=np.array([[1, 0], [1, 1]], dtype=np.int64),
        b23=np.array([[1, 0], [1, 1]], dtype=np.int64),
    )
    return DeploymentInstance(elements=elements, functions=("F1", "F2"), topology=topology)


def five_algorithm_portfolio() -> list[AlgorithmDescriptor]:
    """Two performance-twin families plus one bridging algorithm.

    (A1, A2) and (A3, A4) are near-twins in both performance and structure,
    so they contribute almost nothing to the soft quotient; the dominant
    contributions come from cross-family pairs and from the bridge A5. No
    two performance vectors coincide, so the hard quotient is exactly zero
    at a similarity threshold of 1.
    """
    return [
        AlgorithmDescriptor("A1", (0.90, 0.85, 0.88), (1.00, 0.05, 0.00, 0.02)),
        AlgorithmDescriptor("A2", (0.88, 0.86, 0.90), (0.97, 0.08, 0.02, 0.00)),
        AlgorithmDescriptor("A3", (0.12, 0.10, 0.08), (0.00, 0.02, 1.00, 0.06)),
        AlgorithmDescriptor("A4", (0.10, 0.12, 0.10), (0.02, 0.00, 0.95, 0.08)),
        AlgorithmDescriptor("A5", (0.50, 0.48, 0.52), (0.50, 0.50, 0.50, 0.50)),
    ]


FIXTURES = {
    "seven-node": seven_node_fixture,
    "redundancy": redundancy_fixture,
    "layered": layered_fixture,
    "micro-propagation": micro_propagation_fixture,
}
