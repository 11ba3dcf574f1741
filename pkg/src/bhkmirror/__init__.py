"""Exact BHK mirror symmetry for invertible Calabi-Yau type pairs (W, G)."""

from .diagonal_symmetry import (
    DiagonalGroup,
    aut_group,
    dual_group,
    exponential_element,
    is_cy_type,
    parse_group,
    quotient_by_j,
)
from .errors import BHKError, InputError, LatticeError, VerificationFailed
from .invertible_poly import (
    atom_decomposition,
    exponent_matrix,
    parse_polynomial,
    transpose,
    weight_system,
)
from .multimirror import (
    common_chart,
    enumerate_invertible,
    mirror_pipeline,
    rational_point_probe,
)
from .toric_mirror import toric_data, verify_mirror_ambient

__version__ = "0.1.0"

__all__ = [
    "BHKError",
    "DiagonalGroup",
    "InputError",
    "LatticeError",
    "VerificationFailed",
    "atom_decomposition",
    "aut_group",
    "common_chart",
    "dual_group",
    "enumerate_invertible",
    "exponent_matrix",
    "exponential_element",
    "is_cy_type",
    "mirror_pipeline",
    "parse_group",
    "parse_polynomial",
    "quotient_by_j",
    "rational_point_probe",
    "toric_data",
    "transpose",
    "verify_mirror_ambient",
    "weight_system",
]
