from .components import (
    CurvatureComponents,
    FrameCalculus,
    T_endomorphism,
    compare_with_formulas,
    det_T,
    extract_components,
    formula_components,
    frame_identity_defect,
    frame_ricci,
    frame_tensor_at,
    geometry_of,
    orthonormalizer,
    recurrence_defect,
    ricci_defect,
    ricci_from_components,
    screen_curvature_defect,
    screen_geometry,
    structural_defects,
    trace_T,
    witt_basis_change,
    witt_tensor_at,
)
from .geometry import Geometry
from .metric import WalkerMetric, rf_det, rf_inverse
from .ops import christoffel, is_ppwave, nabla2_R, nabla_R, ricci, riemann, scalar, shift_v, weyl

__all__ = [
    "christoffel",
    "is_ppwave",
    "nabla2_R",
    "nabla_R",
    "ricci",
    "riemann",
    "scalar",
    "shift_v",
    "weyl",
    "CurvatureComponents",
    "FrameCalculus",
    "Geometry",
    "T_endomorphism",
    "WalkerMetric",
    "compare_with_formulas",
    "det_T",
    "extract_components",
    "formula_components",
    "frame_identity_defect",
    "frame_ricci",
    "frame_tensor_at",
    "geometry_of",
    "orthonormalizer",
    "recurrence_defect",
    "rf_det",
    "rf_inverse",
    "ricci_defect",
    "ricci_from_components",
    "screen_curvature_defect",
    "screen_geometry",
    "structural_defects",
    "trace_T",
    "witt_basis_change",
    "witt_tensor_at",
]
