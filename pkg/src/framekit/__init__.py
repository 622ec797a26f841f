"""framekit: finite-dimensional frame theory with verifiable certificates.

Frames are ordered vector families identified with their synthesis
matrices.  The package computes frame bounds, duals, excess, Riesz
subsets, unconditional basis constants, coefficient-operator transforms,
and perturbation certificates, and ships generators for the triangular
block frames whose spanning subsets have unboundedly growing
unconditional basis constants.
"""

from .blocks import (
    BlockIndexedFrame,
    BlockStructure,
    block_coordinate_index,
    block_frame,
    lemma5_block,
    perturbed_block_frame,
)
from .frames import (
    DegenerateFrameError,
    Frame,
    FrameBounds,
    OffSpanError,
    TightnessReport,
    analysis,
    dual_frame,
    frame_bounds,
    frame_coefficients,
    frame_operator,
    is_tight,
    load_frame,
    load_frame_csv,
    save_frame,
    save_frame_csv,
    synthesis,
)
from .linalg import (
    ConsistencyError,
    DEFAULT_TOL,
    SubspaceBasis,
    Tolerance,
    null_space_basis,
    preimage_dimension,
    project_onto_span,
    range_basis,
    rank,
    singular_values,
    subspace_intersection_dim,
)
from .perturb import (
    CounterexampleReport,
    ExcessComparison,
    PerturbationCertificate,
    PerturbationPair,
    TailCut,
    TailProfile,
    check_certificate,
    counterexample_report,
    excess_compare,
    find_tail_cut,
    perturbation_operator,
    tail_profile,
    violation_search,
)
from .riesz import (
    DependentFamilyError,
    EnumerationLimitError,
    ExcessReport,
    PruneInfeasibleError,
    PruneResult,
    RieszVerdict,
    excess,
    extract_riesz_subset,
    prune_to_lower_bound,
    riesz_verdict,
    ubc_exact,
    ubc_for_signs,
    ubc_lower_estimate,
)
from .transforms import (
    KernelDimensionCheck,
    frame_criterion_gamma,
    frame_criterion_verdict,
    kernel_dimension_check,
    load_matrix,
    recover_transform,
    save_matrix,
    save_matrix_csv,
    surjectivity_riesz_check,
    transform,
    transform_spans_source,
)

__version__ = "0.1.0"

__all__ = [
    "BlockIndexedFrame",
    "BlockStructure",
    "ConsistencyError",
    "CounterexampleReport",
    "DEFAULT_TOL",
    "DegenerateFrameError",
    "DependentFamilyError",
    "EnumerationLimitError",
    "ExcessComparison",
    "ExcessReport",
    "Frame",
    "FrameBounds",
    "KernelDimensionCheck",
    "OffSpanError",
    "PerturbationCertificate",
    "PerturbationPair",
    "PruneInfeasibleError",
    "PruneResult",
    "RieszVerdict",
    "SubspaceBasis",
    "TailCut",
    "TailProfile",
    "TightnessReport",
    "Tolerance",
    "analysis",
    "block_coordinate_index",
    "block_frame",
    "check_certificate",
    "counterexample_report",
    "dual_frame",
    "excess",
    "excess_compare",
    "extract_riesz_subset",
    "find_tail_cut",
    "frame_bounds",
    "frame_coefficients",
    "frame_criterion_gamma",
    "frame_criterion_verdict",
    "frame_operator",
    "is_tight",
    "kernel_dimension_check",
    "lemma5_block",
    "load_frame",
    "load_frame_csv",
    "load_matrix",
    "null_space_basis",
    "perturbation_operator",
    "perturbed_block_frame",
    "preimage_dimension",
    "project_onto_span",
    "prune_to_lower_bound",
    "range_basis",
    "rank",
    "recover_transform",
    "riesz_verdict",
    "save_frame",
    "save_frame_csv",
    "save_matrix",
    "save_matrix_csv",
    "singular_values",
    "subspace_intersection_dim",
    "surjectivity_riesz_check",
    "synthesis",
    "tail_profile",
    "transform",
    "transform_spans_source",
    "ubc_exact",
    "ubc_for_signs",
    "ubc_lower_estimate",
    "violation_search",
]
