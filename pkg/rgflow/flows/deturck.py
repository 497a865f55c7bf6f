"""DeTurck vector field and the gauge-fixed right-hand side.

    V^j = -1/2 g0^jk g^pq (nabla_k g0_pq - nabla_p g0_qk - nabla_q g0_pk)

with nabla the Levi-Civita connection of the evolving metric g. Subtracting the Lie
derivative of g along V turns every flow into a strongly parabolic system near g0.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..chart.field import MetricField
from ..chart.geometry import CurvatureField, christoffel, covariant_derivative_sym2, lower_index
from ..chart.stencils import gradient
from ..tensor3 import SymBilinear3, inverse_metric
from .kinds import Flow
from .rhs import rhs


@dataclass(frozen=True, eq=False)
class DeTurckData:
    """DeTurck gauge data of a metric field.

    Attributes:
        background (MetricField): the background metric g0.
        vector (numpy.ndarray): V^j per grid point.
        lie (SymBilinear3): Lie derivative of g along V.
    """

    background: MetricField
    vector: np.ndarray
    lie: SymBilinear3


def deturck_vector(field: MetricField, g0: MetricField, gamma: Optional[np.ndarray] = None) -> np.ndarray:
    """DeTurck vector field of `field` relative to the background `g0`.

    Args:
        field (MetricField): evolving metric g.
        g0 (MetricField): background metric on the same grid.
        gamma (numpy.ndarray): precomputed Christoffel symbols of g.

    Returns:
        numpy.ndarray: V^j with layout [..., j].

    Raises:
        GridMismatchError: if the grids differ.
    """
    field.check_same_grid(g0)
    nabla = covariant_derivative_sym2(field, g0.metric, gamma)
    gi = inverse_metric(field.metric).matrix
    w = np.einsum('...pq,...kpq->...k', gi, nabla) - 2.0 * np.einsum('...pq,...pqk->...k', gi, nabla)
    return -0.5 * np.einsum('...jk,...k->...j', inverse_metric(g0.metric).matrix, w)


def deturck_vector_trace_form(field: MetricField, g0: MetricField, gamma: Optional[np.ndarray] = None) -> np.ndarray:
    """DeTurck vector written with the trace tau = tr_g(g0).

    V^j = -g0^jk (d_k tau / 2 - g^pq nabla_p g0_qk), d_k tau by finite differences.
    """
    field.check_same_grid(g0)
    gi = inverse_metric(field.metric).matrix
    tau = np.einsum('...pq,...pq->...', gi, g0.metric.matrix)
    dtau = gradient(tau, field.grid.spacing, field.grid.dim)
    nabla = covariant_derivative_sym2(field, g0.metric, gamma)
    w = 0.5 * dtau - np.einsum('...pq,...pqk->...k', gi, nabla)
    return -np.einsum('...jk,...k->...j', inverse_metric(g0.metric).matrix, w)


def lie_derivative_metric(field: MetricField, v: np.ndarray, gamma: Optional[np.ndarray] = None) -> SymBilinear3:
    """Lie derivative of the metric along a vector field, nabla_i V_k + nabla_k V_i.

    Args:
        field (MetricField): the metric g.
        v (numpy.ndarray): V^j with layout [..., j].
        gamma (numpy.ndarray): precomputed Christoffel symbols of g.

    Returns:
        SymBilinear3: (L_V g)_ik.
    """
    if gamma is None:
        gamma = christoffel(field)
    v_low = lower_index(field, v)
    dv = gradient(v_low, field.grid.spacing, field.grid.dim)
    lie = dv + np.swapaxes(dv, -1, -2) - 2.0 * np.einsum('...mik,...m->...ik', gamma, v_low)
    return SymBilinear3.from_matrix(lie)


def deturck(field: MetricField, g0: MetricField, gamma: Optional[np.ndarray] = None) -> DeTurckData:
    """Assemble the DeTurck vector field and its Lie-derivative correction."""
    if gamma is None:
        gamma = christoffel(field)
    v = deturck_vector(field, g0, gamma)
    return DeTurckData(g0, v, lie_derivative_metric(field, v, gamma))


def rhs_gauge_fixed(
    field: MetricField, curv: CurvatureField, flow: Flow, g0: MetricField, verify: bool = False
) -> SymBilinear3:
    """Gauge-fixed right-hand side rhs(flow) - L_V g with V the DeTurck vector field.

    Args:
        field (MetricField): the metric field.
        curv (CurvatureField): its curvature.
        flow (Flow): flow kind and coupling.
        g0 (MetricField): background metric.
        verify (bool): evaluate the quadratic Riemann term by full contraction.

    Returns:
        SymBilinear3: dg/dt per grid point.
    """
    gauge = deturck(field, g0, curv.christoffel)
    return rhs(field, curv, flow, verify=verify) - gauge.lie
