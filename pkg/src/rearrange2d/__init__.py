"""Two-dimensional decreasing rearrangements and weighted Lorentz functionals.

The package computes, exactly on finite uniform grids: the decreasing
rearrangement of planar sets and functions (by layer-cake stacking or by
iterated slice sorts), the classical one-dimensional rearrangement,
weighted Lorentz functionals, the weight conditions that control when
those functionals are quasinorms or norms, and the embedding conditions
between the spaces.  A verification harness exercises every identity and
inequality on seeded random inputs and reproduces the explicit
counterexamples that separate the planar theory from the classical one.
"""

from .grid import (
    Decreasing2DGridFunction,
    GridFunction2D,
    GridSet2D,
    GridSpec,
    SimpleDecomposition,
    StaircaseSet,
    StepFunction1D,
    cross_section_profile,
    distribution,
    measure,
    simple_decomposition,
    superlevel_set,
)
from .lorentz import (
    CoverageError,
    EmbeddingExponents,
    Weight2D,
    check_norm_submodularity,
    check_quasinorm_doubling,
    check_weight_factorization,
    classical_lorentz_norm,
    classical_norm_with_weight,
    embedding_integral,
    embedding_sup_ratio,
    lebesgue_norm,
    lorentz_norm_2d,
    mixed_norm_vertical,
    staircase_family,
    submodularity_probe_pairs,
    weight_check_report,
    weight_measure,
)
from .rearrange import (
    rearrange_1d,
    rearrange_classical,
    rearrange_iterative,
    rearrange_layercake,
    rearrange_product,
    rearrange_set,
)
from .verify import (
    classical_vs_planar_demo,
    hardy_littlewood_gap,
    iteration_order_demo,
    norm_growth_ratios,
    prefix_sum_norm,
    rearrangement_invariance_demo,
    run_counterexamples,
    run_inequality_suite,
    run_named_suite,
)

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "GridFunction2D",
    "GridSet2D",
    "StaircaseSet",
    "StepFunction1D",
    "Decreasing2DGridFunction",
    "SimpleDecomposition",
    "measure",
    "superlevel_set",
    "distribution",
    "cross_section_profile",
    "simple_decomposition",
    "rearrange_1d",
    "rearrange_set",
    "rearrange_layercake",
    "rearrange_iterative",
    "rearrange_classical",
    "rearrange_product",
    "CoverageError",
    "Weight2D",
    "EmbeddingExponents",
    "weight_measure",
    "lorentz_norm_2d",
    "lebesgue_norm",
    "classical_lorentz_norm",
    "classical_norm_with_weight",
    "mixed_norm_vertical",
    "check_quasinorm_doubling",
    "check_norm_submodularity",
    "check_weight_factorization",
    "embedding_sup_ratio",
    "embedding_integral",
    "staircase_family",
    "submodularity_probe_pairs",
    "weight_check_report",
    "run_inequality_suite",
    "run_counterexamples",
    "run_named_suite",
    "hardy_littlewood_gap",
    "classical_vs_planar_demo",
    "rearrangement_invariance_demo",
    "norm_growth_ratios",
    "prefix_sum_norm",
    "iteration_order_demo",
    "__version__",
]
