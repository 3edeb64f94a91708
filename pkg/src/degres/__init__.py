"""Degeneracy-aware resilience metrics for virtualized network deployments.

Three complementary metrics over one deployment model:

  * FSS — substitution richness of a single function: how many realization
    pairs are structurally distinct, optionally filtered by capacity/load
    compatibility and availability/reliability admissibility;
  * ARQ — diversity of an algorithm portfolio among performance-equivalent
    members, as a soft kernel-weighted mean or a hard thresholded fraction;
  * MLDI — how functional diversity is spread across the physical, control
    and service layers, with upward failure propagation.

A disruption harness removes the top-q fraction of elements by importance
score and tracks all metrics across removal fractions and trials. Hot
pairwise kernels run through a compiled extension when built (see
degres._backend; DEGRES_BACKEND=python forces the fallback).
"""

from ._backend import BACKEND_NAME
from ._version import __version__
from .arq import (
    AlgorithmDescriptor,
    ArqReport,
    arq_hard,
    arq_report,
    arq_soft,
    kernel_centrality,
    performance_kernel,
    structural_separation,
)
from .errors import ValidationError
from .fixtures import (
    five_algorithm_portfolio,
    layered_fixture,
    micro_propagation_fixture,
    redundancy_fixture,
    seven_node_fixture,
)
from .fss import FssReport, fss_baseline, fss_weighted, node_weight, pair_weight
from .generate import (
    BetaSpec,
    GeneratorConfig,
    LogNormalSpec,
    PortfolioConfig,
    SignatureSchema,
    TruncatedLogNormalSpec,
    generate_instance,
    generate_portfolio,
    resample_operational,
)
from .instrumentation import counters
from .io import RunManifest, load_instance, load_portfolio, save_instance, save_portfolio
from .mldi import (
    LayerDiagnostics,
    MldiReport,
    admissible_distinct_set,
    layer_entropy,
    mldi_baseline,
    mldi_enhanced,
    mldi_report,
    propagate_failures,
)
from .model import (
    DeploymentInstance,
    DissimilarityMatrix,
    Element,
    LayerTopology,
    MetricConfig,
    PropagationState,
    StructuralSignature,
    WeightMode,
    build_dissimilarity_matrix,
    reliability,
    structural_dissimilarity,
)
from .sweep import (
    SweepConfig,
    SweepResult,
    importance_scores,
    rank_and_remove,
    run_sweep,
)

__all__ = [
    "AlgorithmDescriptor",
    "ArqReport",
    "BACKEND_NAME",
    "BetaSpec",
    "DeploymentInstance",
    "DissimilarityMatrix",
    "Element",
    "FssReport",
    "GeneratorConfig",
    "LayerDiagnostics",
    "LayerTopology",
    "LogNormalSpec",
    "MetricConfig",
    "MldiReport",
    "PortfolioConfig",
    "PropagationState",
    "RunManifest",
    "SignatureSchema",
    "StructuralSignature",
    "SweepConfig",
    "SweepResult",
    "TruncatedLogNormalSpec",
    "ValidationError",
    "WeightMode",
    "__version__",
    "admissible_distinct_set",
    "arq_hard",
    "arq_report",
    "arq_soft",
    "build_dissimilarity_matrix",
    "counters",
    "five_algorithm_portfolio",
    "fss_baseline",
    "fss_weighted",
    "generate_instance",
    "generate_portfolio",
    "importance_scores",
    "kernel_centrality",
    "layer_entropy",
    "layered_fixture",
    "load_instance",
    "load_portfolio",
    "micro_propagation_fixture",
    "mldi_baseline",
    "mldi_enhanced",
    "mldi_report",
    "node_weight",
    "pair_weight",
    "performance_kernel",
    "propagate_failures",
    "rank_and_remove",
    "redundancy_fixture",
    "reliability",
    "resample_operational",
    "run_sweep",
    "save_instance",
    "save_portfolio",
    "seven_node_fixture",
    "structural_dissimilarity",
    "structural_separation",
]
