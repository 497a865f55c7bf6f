"""Top-level package for the symbol sub-module."""

from .ellipticity import (
    EPS_PAR,
    EllipticityReport,
    SymbolAt,
    Verdict,
    chart_symbol,
    global_parabolicity,
    kernel_check,
    margin_field,
    parabolicity,
    ricci_spectrum,
    sorted_eigenvalues,
    symbol_at,
    symbol_bound,
    symbol_report,
    worst_covector,
)
from .matrices import (
    H_NAMES,
    gauge_direction,
    h_matrix,
    h_vector,
    plane_curvatures,
    symbol_deturck_lie,
    symbol_eigen,
    symbol_flow,
    symbol_gauge_fixed,
    symbol_general,
    symbol_H,
    symbol_L,
    symbol_L_unrotated,
)

__all__ = [
    'EPS_PAR',
    'H_NAMES',
    'EllipticityReport',
    'SymbolAt',
    'Verdict',
    'symbol_L',
    'symbol_L_unrotated',
    'symbol_general',
    'symbol_eigen',
    'symbol_deturck_lie',
    'symbol_gauge_fixed',
    'symbol_H',
    'symbol_flow',
    'plane_curvatures',
    'gauge_direction',
    'h_vector',
    'h_matrix',
    'kernel_check',
    'sorted_eigenvalues',
    'symbol_at',
    'chart_symbol',
    'ricci_spectrum',
    'margin_field',
    'symbol_bound',
    'worst_covector',
    'parabolicity',
    'global_parabolicity',
    'symbol_report',
]
