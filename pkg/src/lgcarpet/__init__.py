"""Self-affine carpets with row-dominant contractions: construction, box
dimension, fiber structure, gap sequences, and uniform disconnectedness."""

from . import errors, synth
from .approx import (
    ApproxSet,
    NDeltaCurve,
    approx_set,
    box_count,
    count_grid_cells,
    n_delta_curve,
    render_svg,
)
from .carpet import (
    UNIT_SQUARE,
    CarpetSpec,
    Cell,
    Cylinder,
    Rect,
    RowSpec,
    Violation,
    Word,
    apply_word,
    enumerate_depth,
    enumerate_stopping,
    load_spec,
    parse_spec,
    spec_from_dict,
    spec_to_dict,
    validate,
    word_map,
)
from .dimension import DimensionResult, bisect_decreasing, solve_bdim, solve_s1
from .disconnect import (
    EpsilonChain,
    TDCertificate,
    UDVerdict,
    build_epsilon_chain,
    certify_totally_disconnected,
    check_uniform_disconnectedness,
    empty_rows,
)
from .gaps import (
    GapSequence,
    ScalingFit,
    component_labels,
    gap_sequence_bruteforce,
    gap_sequence_mst,
    gap_sequence_of_carpet,
    n_delta_components,
    rect_distance,
    scaling_fit,
)
from .structure import (
    Coding,
    DeltaClasses,
    HdBoundCheck,
    IntervalSet,
    ProjectionIFS,
    check_hd_bound,
    fiber_approx,
    find_gap_interval,
    gap_fraction,
    h_delta,
    hausdorff_distance,
    idelta_classes,
    largest_row_gap,
    project_F,
    projection_approx,
    row_gap_intervals,
    row_stopping_words,
    y_codings,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxSet",
    "CarpetSpec",
    "Cell",
    "Coding",
    "Cylinder",
    "DeltaClasses",
    "DimensionResult",
    "EpsilonChain",
    "GapSequence",
    "HdBoundCheck",
    "IntervalSet",
    "NDeltaCurve",
    "ProjectionIFS",
    "Rect",
    "RowSpec",
    "ScalingFit",
    "TDCertificate",
    "UDVerdict",
    "UNIT_SQUARE",
    "Violation",
    "Word",
    "approx_set",
    "apply_word",
    "box_count",
    "build_epsilon_chain",
    "certify_totally_disconnected",
    "check_hd_bound",
    "check_uniform_disconnectedness",
    "component_labels",
    "count_grid_cells",
    "empty_rows",
    "enumerate_depth",
    "enumerate_stopping",
    "errors",
    "fiber_approx",
    "find_gap_interval",
    "gap_fraction",
    "gap_sequence_bruteforce",
    "gap_sequence_mst",
    "gap_sequence_of_carpet",
    "h_delta",
    "hausdorff_distance",
    "idelta_classes",
    "largest_row_gap",
    "load_spec",
    "n_delta_components",
    "n_delta_curve",
    "parse_spec",
    "project_F",
    "projection_approx",
    "rect_distance",
    "render_svg",
    "row_gap_intervals",
    "row_stopping_words",
    "scaling_fit",
    "solve_bdim",
    "solve_s1",
    "spec_from_dict",
    "spec_to_dict",
    "synth",
    "validate",
    "word_map",
    "y_codings",
    "bisect_decreasing",
]
