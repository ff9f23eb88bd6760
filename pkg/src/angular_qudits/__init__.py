"""Entanglement of OAM photon pairs diffracted by angular slit masks.

A numpy library for building diffracted orbital-angular-momentum modes,
their overlap (Gram) matrices, and the purity / concurrence of the
resulting biphoton states, plus path-entanglement models for multi-slit
masks and deterministic parameter sweeps.
"""

__version__ = "0.1.0"

from .apertures import (
    ApertureMask,
    ModeVector,
    OverlapMatrix,
    aperture_transmission,
    diffracted_mode,
    mode_overlap_general,
    oam_overlap_matrix,
    overlap_matrix,
    recommended_l_trunc,
    sinc,
    single_aperture_overlap_closed,
)
from .entanglement import (
    BiphotonState,
    EntanglementReport,
    NumericalDegeneracyError,
    PositionMode,
    TruncationInsufficientError,
    concurrence,
    grid_oracle,
    max_concurrence,
    normalization_constant,
    oam_coefficient_matrix,
    oam_position_modes,
    purity,
    purity_symmetric,
    quadrature_gram,
    reduced_density,
    rescaled_concurrence,
    schmidt_oracle,
)
from .paths import (
    CorrelationWeights,
    DegenerateStateError,
    PathConfig,
    arc_position_modes,
    build_masks,
    correlation_weights,
    effective_arcs,
    generalized_overlap,
    merge_arcs,
    path_coefficients,
    path_concurrence_curve,
    path_report,
)
from .sweep import (
    PRESETS,
    SweepConfig,
    SweepRow,
    emit,
    read_rows,
    run_oam_sweep,
    run_path_sweep,
    run_preset,
)

__all__ = [
    "ApertureMask",
    "BiphotonState",
    "CorrelationWeights",
    "DegenerateStateError",
    "EntanglementReport",
    "ModeVector",
    "NumericalDegeneracyError",
    "OverlapMatrix",
    "PRESETS",
    "PathConfig",
    "PositionMode",
    "SweepConfig",
    "SweepRow",
    "TruncationInsufficientError",
    "aperture_transmission",
    "arc_position_modes",
    "build_masks",
    "concurrence",
    "correlation_weights",
    "diffracted_mode",
    "effective_arcs",
    "emit",
    "generalized_overlap",
    "grid_oracle",
    "max_concurrence",
    "merge_arcs",
    "mode_overlap_general",
    "normalization_constant",
    "oam_coefficient_matrix",
    "oam_overlap_matrix",
    "oam_position_modes",
    "overlap_matrix",
    "path_coefficients",
    "path_concurrence_curve",
    "path_report",
    "purity",
    "purity_symmetric",
    "quadrature_gram",
    "read_rows",
    "recommended_l_trunc",
    "reduced_density",
    "rescaled_concurrence",
    "run_oam_sweep",
    "run_path_sweep",
    "run_preset",
    "schmidt_oracle",
    "sinc",
    "single_aperture_overlap_closed",
    "sweep",
]
