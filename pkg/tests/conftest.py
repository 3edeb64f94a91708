import numpy as np
import pytest

from degres import (
    DeploymentInstance,
    Element,
    GeneratorConfig,
    LayerTopology,
    StructuralSignature,
    generate_instance,
)
from degres.instrumentation import counters


@pytest.fixture(autouse=True)
def _fresh_counters():
    counters.reset()
    yield


def make_element(
    eid,
    cat=(0,),
    num=(0.5,),
    capacity=0.9,
    load=0.3,
    availability=0.95,
    mtbf=1000.0,
    layer="L1",
    supports=("F1",),
):
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


def make_instance(elements, functions=("F1",), dissimilarity=None):
    """Instance with all-zero (self-sufficient) dependency matrices."""
    sizes = {layer: sum(1 for el in elements if el.layer == layer) for layer in ("L1", "L2", "L3")}
    topology = LayerTopology(
        b12=np.zeros((sizes["L2"], sizes["L1"]), dtype=np.int64),
        b23=np.zeros((sizes["L3"], sizes["L2"]), dtype=np.int64),
    )
    return DeploymentInstance(
        elements=tuple(elements),
        functions=tuple(functions),
        topology=topology,
        dissimilarity=dissimilarity,
    )


def random_instance(seed, n=None, m=3):
    """Small generated instance for property tests."""
    rng = np.random.default_rng(seed)
    if n is None:
        n = int(rng.integers(max(3, m), 13))
    return generate_instance(GeneratorConfig(seed=int(seed), element_count=n, function_count=m))
