"""Top-level package for the tensor3 sub-module."""

from .curvature import (
    Curv3,
    constant_curvature,
    curvature_operator_spectrum,
    kulkarni_nomizu,
    operator_norm,
    quad_contraction,
    quad_via_ricci,
    ricci_from_riemann,
    ricci_square,
    riemann_from_ricci,
    scalar_curvature,
    sectional,
    sectional_extrema,
)
from .forms import (
    COMPONENT_NAMES,
    SymBilinear3,
    check_definite,
    cofactor,
    generalized_eigh,
    inverse_metric,
)
from .frames import Frame3, orthonormal_frame, rotate_frame_kill_r23

__all__ = [
    'COMPONENT_NAMES',
    'SymBilinear3',
    'Curv3',
    'Frame3',
    'check_definite',
    'cofactor',
    'generalized_eigh',
    'inverse_metric',
    'kulkarni_nomizu',
    'riemann_from_ricci',
    'ricci_from_riemann',
    'scalar_curvature',
    'sectional',
    'sectional_extrema',
    'curvature_operator_spectrum',
    'operator_norm',
    'quad_contraction',
    'quad_via_ricci',
    'ricci_square',
    'constant_curvature',
    'orthonormal_frame',
    'rotate_frame_kill_r23',
]
