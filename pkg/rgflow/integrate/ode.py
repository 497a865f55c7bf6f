"""Constant-curvature reference solutions.

On data of constant sectional curvature k0 the flows keep g = c(t) g0 with Ric = 2 k0 g0
fixed, and the RG2 flow reduces to the scalar ODE

    dc/dt = -4 k0 - 4 a k0^2 / c.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger
from scipy.integrate import solve_ivp

from ..errors import DefinitenessError, InitialConditionRejected, StageFailure
from ..flows.kinds import Flow
from ..flows.rhs import flow_rhs
from ..symbol.ellipticity import parabolicity
from ..tensor3 import SymBilinear3, check_definite, operator_norm, riemann_from_ricci
from .state import Controls, StopReason
from .stepper import rk4_step

EXTINCTION_FRACTION = 1e-8
"""float: c / c0 below which the reference solution counts as extinct."""


@dataclass(frozen=True, eq=False)
class OdeSolution:
    """Samples of the scale factor c(t).

    Attributes:
        t (numpy.ndarray): sample times.
        c (numpy.ndarray): c at the sample times.
        extinction_time (float): time at which c reaches 0, None if it does not before t_end.
    """

    t: np.ndarray
    c: np.ndarray
    extinction_time: Optional[float] = None


def ode_reference(
    k0: float, a: float, c0: float, t_end: float, t_eval: Optional[np.ndarray] = None, rtol: float = 1e-12
) -> OdeSolution:
    """Solve dc/dt = -4 k0 - 4 a k0^2 / c with a high-order adaptive integrator.

    Args:
        k0 (float): sectional curvature of g0.
        a (float): coupling constant.
        c0 (float): initial scale factor, positive.
        t_end (float): final time.
        t_eval (numpy.ndarray): sample times, the integrator's own steps by default.
        rtol (float): relative tolerance.

    Returns:
        OdeSolution: samples up to t_end or extinction.
    """
    if not c0 > 0:
        raise ValueError(f'Initial scale factor must be positive, got {c0}.')

    def rhs(t, y):
        return [-4.0 * k0 - 4.0 * a * k0**2 / y[0]]

    def extinct(t, y):
        return y[0] - EXTINCTION_FRACTION * c0

    extinct.terminal = True
    extinct.direction = -1

    if t_eval is not None:
        # accumulated step times may overshoot t_end by rounding
        t_eval = np.clip(np.asarray(t_eval, dtype=float), 0.0, t_end)
    sol = solve_ivp(rhs, (0.0, t_end), [c0], method='DOP853', rtol=rtol, atol=rtol * c0, t_eval=t_eval, events=extinct)
    extinction = float(sol.t_events[0][0]) if sol.t_events[0].size else None
    if extinction is not None:
        logger.debug('Reference solution extinct at t={:.12g}', extinction)
    return OdeSolution(sol.t, sol.y[0], extinction)


@dataclass
class PointRun:
    """Pointwise constant-curvature run.

    Attributes:
        t (list): accepted times, starting at 0.
        c (list): scale factor g / g0 at those times.
        margin (list): parabolicity margin at those times.
        reason (StopReason): why the run halted.
    """

    t: List[float] = field(default_factory=list)
    c: List[float] = field(default_factory=list)
    margin: List[float] = field(default_factory=list)
    reason: StopReason = StopReason.T_END


def constant_curvature_point(k0: float, c: float = 1.0, g0: Optional[SymBilinear3] = None):
    """Metric c g0, its Ricci tensor 2 k0 g0 and curvature tensor, g0 the Euclidean metric by default."""
    if g0 is None:
        g0 = SymBilinear3.identity()
    g = c * g0
    ric = 2.0 * k0 * g0
    return g, ric, riemann_from_ricci(ric, g)


def run_constant_curvature(
    k0: float,
    flow: Flow,
    c0: float = 1.0,
    t_end: float = 0.1,
    dt: float = 1e-3,
    controls: Optional[Controls] = None,
    g0: Optional[SymBilinear3] = None,
) -> PointRun:
    """Integrate a flow pointwise on constant-curvature data with RK4.

    The Ricci tensor is held at 2 k0 g0 (it is scale invariant) while the metric evolves.
    The same parabolicity gate as for field runs applies at t = 0 and along the run.

    Args:
        k0 (float): sectional curvature of g0.
        flow (Flow): flow kind and coupling.
        c0 (float): initial scale factor.
        t_end (float): final time.
        dt (float): fixed time step (the last one is shortened to hit t_end).
        controls (Controls): halting controls; the CFL number is not used.
        g0 (SymBilinear3): background metric, Euclidean by default.

    Returns:
        PointRun: samples of c and the margin, and the stop reason.

    Raises:
        InitialConditionRejected: if the data are not parabolic and `controls.force` is unset.
    """
    if controls is None:
        controls = Controls()
    if g0 is None:
        g0 = SymBilinear3.identity()
    g, ric, riem = constant_curvature_point(k0, c0, g0)
    report = parabolicity(riem, g, flow, eps_par=controls.eps_par)
    if report.margin <= controls.eps_par and not controls.force:
        raise InitialConditionRejected(report.margin, (), report.plane)

    def f(metric: SymBilinear3) -> SymBilinear3:
        try:
            check_definite(metric)
        except DefinitenessError as err:
            raise StageFailure(str(err)) from err
        return flow_rhs(flow, metric, ric, riemann_from_ricci(ric, metric))

    out = PointRun()
    t = 0.0
    scale = float(g0.components[0])
    while True:
        riem = riemann_from_ricci(ric, g)
        margin = float(parabolicity(riem, g, flow, eps_par=controls.eps_par).margin)
        out.t.append(t)
        out.c.append(float(g.components[0]) / scale)
        out.margin.append(margin)
        if float(g.eigenvalues()[0]) < controls.eps_g:
            out.reason = StopReason.METRIC_DEGENERACY
            break
        if float(operator_norm(riem, g)) > controls.m_max:
            out.reason = StopReason.CURVATURE_BLOWUP
            break
        if margin <= controls.eps_par and not controls.force:
            out.reason = StopReason.PARABOLICITY_LOST
            break
        if t_end - t <= controls.dt_min:
            out.reason = StopReason.T_END
            break
        step = _advance(g, min(dt, t_end - t), f, controls.dt_min)
        if step is None:
            out.reason = StopReason.STEP_UNDERFLOW
            break
        g, taken = step
        t += taken
    return out


def _advance(g: SymBilinear3, dt: float, f, dt_min: float):
    """One RK4 step, halving dt after stage failures; None once dt underflows."""
    while dt >= dt_min:
        try:
            new = rk4_step(g, dt, f)
            check_definite(new)
            return new, dt
        except (StageFailure, DefinitenessError):
            logger.debug('Stage failure with dt={:.3g}, halving', dt)
            dt = dt / 2
    return None
