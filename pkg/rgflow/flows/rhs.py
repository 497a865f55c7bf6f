"""Right-hand sides of the curvature flows.

    ricci          -2 Ric
    rg2            -2 Ric - a Q,   Q_ik = R_ijlm R_kstu g^js g^lt g^mu
    rg2zero        -a Q
    squared-ricci  -a Ric^2,       Ric^2_ik = R_ij R_lk g^jl
    mixed          -2 Ric - a Ric^2

In 3D Q is evaluated through the Ricci tensor; the full contraction stays available as a
verification mode.
"""

from typing import Optional

from ..chart.field import MetricField
from ..chart.geometry import CurvatureField
from ..errors import GridMismatchError
from ..tensor3 import Curv3, SymBilinear3, quad_contraction, quad_via_ricci, ricci_square
from .kinds import Flow, FlowKind


def flow_rhs(
    flow: Flow, g: SymBilinear3, ric: SymBilinear3, riem: Optional[Curv3] = None, verify: bool = False
) -> SymBilinear3:
    """Pointwise (batched) right-hand side of a flow.

    Args:
        flow (Flow): flow kind and coupling.
        g (SymBilinear3): metric.
        ric (SymBilinear3): Ricci tensor of g.
        riem (Curv3): curvature tensor of g, required when `verify` is set.
        verify (bool): evaluate the quadratic Riemann term by full contraction.

    Returns:
        SymBilinear3: dg/dt.
    """
    kind, a = flow.kind, flow.a
    if kind in (FlowKind.SQUARED_RICCI, FlowKind.MIXED):
        quad = ricci_square(ric, g)
    elif verify:
        if riem is None:
            raise ValueError('The full contraction needs the curvature tensor.')
        quad = quad_contraction(riem, g)
    else:
        quad = quad_via_ricci(ric, g)
    if kind.has_ricci_term:
        # the Ricci flow is rg2 with a = 0
        return -2.0 * ric - a * quad
    return -a * quad


def rhs(field: MetricField, curv: CurvatureField, flow: Flow, verify: bool = False) -> SymBilinear3:
    """Right-hand side of a flow on a metric field.

    Args:
        field (MetricField): the metric field.
        curv (CurvatureField): its curvature.
        flow (Flow): flow kind and coupling.
        verify (bool): evaluate the quadratic Riemann term by full contraction.

    Returns:
        SymBilinear3: dg/dt per grid point.
    """
    if curv.ricci.shape != field.grid.shape:
        raise GridMismatchError(f'Curvature of shape {curv.ricci.shape} does not belong to grid {field.grid.shape}.')
    return flow_rhs(flow, field.metric, curv.ricci, curv.riemann, verify=verify)
