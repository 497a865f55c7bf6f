"""Linearized flow operators and their plane-wave action.

The plane-wave action is the bridge between the finite-difference operators and the
algebraic symbols: perturbing a field by H cos(omega x1) and reading back the
cos(omega x1) content of the linearized operator gives -omega^2 times the symbol
(in the direction dx1) applied to H, up to the stencil dispersion and O(1/omega).
"""

from typing import Optional

import numpy as np

from ..errors import DefinitenessError, StepTooLargeError
from ..flows import Flow, rhs, rhs_gauge_fixed
from ..symbol.ellipticity import chart_symbol
from ..symbol.matrices import h_matrix, h_vector
from ..tensor3 import SymBilinear3
from .field import MetricField
from .geometry import curvature
from .spectral import mode_amplitude

LINEARIZATION_STEP = 1e-4
"""float: default step s of the central difference in the perturbation parameter."""


def _operator(field: MetricField, flow: Flow, gauge_fixed: bool, g0: Optional[MetricField]) -> SymBilinear3:
    curv = curvature(field)
    if gauge_fixed:
        return rhs_gauge_fixed(field, curv, flow, g0)
    return rhs(field, curv, flow)


def linearize_L(
    field: MetricField,
    h: SymBilinear3,
    flow: Flow,
    s: float = LINEARIZATION_STEP,
    gauge_fixed: bool = False,
    g0: Optional[MetricField] = None,
) -> SymBilinear3:
    """Central-difference linearization (L(g + s h) - L(g - s h)) / (2 s) of a flow operator.

    Args:
        field (MetricField): the metric g.
        h (SymBilinear3): perturbation field.
        flow (Flow): flow kind and coupling.
        s (float): step in the perturbation parameter.
        gauge_fixed (bool): linearize the DeTurck-modified operator.
        g0 (MetricField): background of the DeTurck vector field, `field` by default.

    Returns:
        SymBilinear3: DL_g(h) per grid point.

    Raises:
        StepTooLargeError: if g + s h or g - s h is not positive definite.
    """
    if g0 is None:
        g0 = field
    try:
        plus = field.with_metric(field.metric + s * h)
        minus = field.with_metric(field.metric - s * h)
    except DefinitenessError as err:
        raise StepTooLargeError(f'Step s={s:g} leaves the positive cone: {err}') from err
    diff = _operator(plus, flow, gauge_fixed, g0) - _operator(minus, flow, gauge_fixed, g0)
    return diff * (0.5 / s)


def symbol_action(
    field: MetricField,
    flow: Flow,
    omega: int,
    s: float = LINEARIZATION_STEP,
    gauge_fixed: bool = False,
    g0: Optional[MetricField] = None,
) -> np.ndarray:
    """Measured 6x6 action of the linearized operator on plane waves H cos(omega x1).

    Column j is the cos(omega x1) amplitude of DL_g(H_j cos(omega x1)) in the coordinates
    (h11, h12, h13, h22, h33, h23), H_j the j-th unit coordinate tensor. For a metric
    depending on x1 only this approximates -omega^2 times the symbol in the direction dx1.

    Args:
        field (MetricField): the metric g on a 1-dimensional grid.
        flow (Flow): flow kind and coupling.
        omega (int): integer wavenumber.
        s (float): linearization step.
        gauge_fixed (bool): use the DeTurck-modified operator.
        g0 (MetricField): background of the DeTurck vector field, `field` by default.

    Returns:
        numpy.ndarray: the 6x6 measured action, grid-averaged.
    """
    if field.grid.dim != 1:
        raise ValueError('Plane-wave actions are measured on 1-dimensional grids.')
    (x,) = field.grid.coordinates()
    wave = np.cos(omega * x)
    action = np.zeros((6, 6))
    for j in range(6):
        unit = SymBilinear3.from_matrix(h_matrix(np.eye(6)[j]))
        h = SymBilinear3(wave[:, None] * unit.components[None, :])
        out = linearize_L(field, h, flow, s, gauge_fixed, g0)
        action[:, j] = h_vector(mode_amplitude(out.matrix, omega, axis=0))
    return action


def predicted_action(field: MetricField, flow: Flow, gauge_fixed: bool = False) -> np.ndarray:
    """Grid mean of the chart symbol at dx1, the limit of `symbol_action` / -omega^2.

    Args:
        field (MetricField): the metric g on a 1-dimensional grid.
        flow (Flow): flow kind and coupling.
        gauge_fixed (bool): use the DeTurck-modified symbol with background g.

    Returns:
        numpy.ndarray: the 6x6 predicted action.
    """
    if field.grid.dim != 1:
        raise ValueError('Plane-wave actions are measured on 1-dimensional grids.')
    curv = curvature(field)
    xi = np.array([1.0, 0.0, 0.0])
    symbols = [
        chart_symbol(curv.riemann[i], field.metric[i], xi, flow, gauge_fixed) for i in range(field.grid.n)
    ]
    return np.mean(symbols, axis=0)
