"""Top-level package for the chart sub-module.

`rgflow.chart.linearize` is imported on its own since it evaluates flow right-hand sides.
"""

from .field import MAX_N_3D, PERIOD, GridSpec, MetricField
from .geometry import (
    CurvatureField,
    check_sign_convention,
    christoffel,
    christoffel_from_jet,
    covariant_derivative_sym2,
    curvature,
    curvature_from_jet,
    ensure_sign_convention,
    lower_index,
    metric_jet,
    raise_index,
    stereographic_sphere_jet,
)
from .spectral import mode_amplitude, periodic_spectrum
from .stencils import d1, d2, gradient, hessian, modified_wavenumber_sq

__all__ = [
    'MAX_N_3D',
    'PERIOD',
    'GridSpec',
    'MetricField',
    'CurvatureField',
    'metric_jet',
    'christoffel',
    'christoffel_from_jet',
    'curvature',
    'curvature_from_jet',
    'covariant_derivative_sym2',
    'lower_index',
    'raise_index',
    'stereographic_sphere_jet',
    'check_sign_convention',
    'ensure_sign_convention',
    'periodic_spectrum',
    'mode_amplitude',
    'd1',
    'd2',
    'gradient',
    'hessian',
    'modified_wavenumber_sq',
]
