"""Explicit RK4 integration of the gauge-fixed flows with parabolicity monitoring."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from loguru import logger

from ..chart.field import MetricField
from ..chart.geometry import CurvatureField, curvature
from ..errors import DefinitenessError, InitialConditionRejected, StageFailure
from ..flows.deturck import rhs_gauge_fixed
from ..symbol.ellipticity import EllipticityReport, global_parabolicity, margin_field, symbol_bound
from ..tensor3 import SymBilinear3, operator_norm
from .state import Controls, Diagnostics, FlowState, StopReason


@dataclass
class RunResult:
    """Outcome of `run`.

    Attributes:
        final (FlowState): last accepted state.
        reason (StopReason): why the run halted.
        diagnostics (list): diagnostics rows, the initial state first.
        trajectory (list): accepted states kept every `snapshot_every` steps.
        rejected (int): number of steps retried after a stage failure.
        initial_report (EllipticityReport): the parabolicity gate at t = 0.
    """

    final: FlowState
    reason: StopReason
    diagnostics: List[Diagnostics] = field(default_factory=list)
    trajectory: List[FlowState] = field(default_factory=list)
    rejected: int = 0
    initial_report: Optional[EllipticityReport] = None


def rk4_step(y: SymBilinear3, dt: float, f: Callable[[SymBilinear3], SymBilinear3]) -> SymBilinear3:
    """Take one step using 4th order Runge-Kutta."""
    k1 = f(y)
    k2 = f(y + (dt / 2) * k1)
    k3 = f(y + (dt / 2) * k2)
    k4 = f(y + dt * k3)
    return y + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _stage_field(state: FlowState, metric: SymBilinear3) -> MetricField:
    try:
        return state.field.with_metric(metric)
    except DefinitenessError as err:
        raise StageFailure(str(err)) from err


def step_rk4(state: FlowState, dt: float, verify: bool = False, curv: Optional[CurvatureField] = None) -> FlowState:
    """Advance a state by one RK4 step of the gauge-fixed flow.

    Args:
        state (FlowState): current state.
        dt (float): time step, positive.
        verify (bool): evaluate the quadratic curvature term by full contraction.
        curv (CurvatureField): curvature of the current metric, if already known.

    Returns:
        FlowState: the state at t + dt.

    Raises:
        StageFailure: if a stage or the result leaves the positive cone.
    """
    if not dt > 0:
        raise ValueError(f'Time step must be positive, got {dt}.')

    def f(metric: SymBilinear3) -> SymBilinear3:
        if metric is state.field.metric:
            stage, stage_curv = state.field, curv
        else:
            stage, stage_curv = _stage_field(state, metric), None
        if stage_curv is None:
            stage_curv = curvature(stage)
        return rhs_gauge_fixed(stage, stage_curv, state.flow, state.g0, verify=verify)

    new = _stage_field(state, rk4_step(state.field.metric, dt, f))
    return FlowState(state.t + dt, new, state.flow, state.g0, steps=state.steps + 1)


def monitor(state: FlowState, curv: Optional[CurvatureField] = None, dt: float = 0.0) -> Diagnostics:
    """Diagnostics of a state: global margin, max |Riem| and smallest metric eigenvalue."""
    if curv is None:
        curv = curvature(state.field)
    g = state.field.metric
    margins = margin_field(state.flow, curv.riemann, curv.ricci, g)
    return Diagnostics(
        t=state.t,
        dt=dt,
        margin=float(np.min(margins)),
        max_riem=float(np.max(operator_norm(curv.riemann, g))),
        min_eig_g=float(np.min(g.eigenvalues()[..., 0])),
        kind=state.flow.kind.value,
        a=state.flow.a,
    )


def gate(state: FlowState, curv: Optional[CurvatureField] = None, eps_par: float = 1e-8) -> EllipticityReport:
    """Gauge-fixed parabolicity report of a state at its worst point."""
    if curv is None:
        curv = curvature(state.field)
    return global_parabolicity(curv.riemann, curv.ricci, state.field.metric, state.flow, eps_par)


def stable_step(state: FlowState, curv: CurvatureField, cfl: float) -> float:
    """Parabolic CFL step cfl h^2 / Lambda, Lambda the symbol bound over the smallest metric eigenvalue."""
    g = state.field.metric
    bound = symbol_bound(state.flow, curv.riemann, curv.ricci, g) / g.eigenvalues()[..., 0]
    return cfl * state.field.grid.spacing**2 / float(np.max(bound))


def _halt(diag: Diagnostics, controls: Controls) -> Optional[StopReason]:
    if diag.min_eig_g < controls.eps_g:
        return StopReason.METRIC_DEGENERACY
    if diag.max_riem > controls.m_max:
        return StopReason.CURVATURE_BLOWUP
    if diag.margin <= controls.eps_par and not controls.force:
        return StopReason.PARABOLICITY_LOST
    return None


def run(
    state0: FlowState,
    dt0: float,
    t_end: float,
    controls: Optional[Controls] = None,
    on_step: Optional[Callable[[FlowState, Diagnostics], None]] = None,
) -> RunResult:
    """Integrate a gauge-fixed flow until t_end or a singularity detector fires.

    Args:
        state0 (FlowState): initial state.
        dt0 (float): largest time step.
        t_end (float): final time.
        controls (Controls): step-size and halting controls.
        on_step (callable): called with every accepted state and its diagnostics.

    Returns:
        RunResult: final state, stop reason, diagnostics and stored states.

    Raises:
        InitialConditionRejected: if the initial data are not parabolic and `controls.force` is unset.
    """
    if controls is None:
        controls = Controls()
    if not dt0 > 0 or t_end < 0:
        raise ValueError(f'Need dt0 > 0 and t_end >= 0, got dt0={dt0}, t_end={t_end}.')

    state = state0
    curv = curvature(state.field)
    report = gate(state, curv, controls.eps_par)
    if report.margin <= controls.eps_par:
        if not controls.force:
            raise InitialConditionRejected(report.margin, report.point, report.plane)
        logger.warning('Initial data not parabolic (margin {:.6g}), running anyway', report.margin)
    logger.info('Starting {} run to t={} (margin {:.6g})', state.flow, t_end, report.margin)

    diag = monitor(state, curv)
    result = RunResult(final=state, reason=StopReason.T_END, diagnostics=[diag], initial_report=report)
    dt_stable = stable_step(state, curv, controls.cfl)
    dt_cap = dt0

    while True:
        # the gate comes before the t_end check
        reason = _halt(diag, controls)
        if reason is None and t_end - state.t <= controls.dt_min:
            reason = StopReason.T_END
        if reason is not None:
            break

        dt = min(dt_cap, dt_stable, t_end - state.t)
        if dt < controls.dt_min:
            reason = StopReason.STEP_UNDERFLOW
            break
        try:
            new = step_rk4(state, dt, controls.verify, curv)
        except StageFailure as err:
            result.rejected += 1
            dt_cap = dt / 2
            logger.debug('Stage failure at t={:.6g} with dt={:.3g}: {}', state.t, dt, err)
            continue

        state = new
        dt_cap = min(dt0, 2 * dt_cap)
        curv = curvature(state.field)
        if state.steps % controls.refresh == 0:
            dt_stable = stable_step(state, curv, controls.cfl)
        diag = monitor(state, curv, dt)
        state = FlowState(state.t, state.field, state.flow, state.g0, diag, state.steps)
        result.diagnostics.append(diag)
        if controls.snapshot_every and state.steps % controls.snapshot_every == 0:
            result.trajectory.append(state)
        if on_step is not None:
            on_step(state, diag)

        logger.debug(
            'step {} t={:.6g} dt={:.3g} margin={:.6g} |Riem|={:.6g}', state.steps, state.t, dt, diag.margin, diag.max_riem
        )
        if state.steps % 100 == 0:
            logger.info('step {} t={:.6g} |Riem|={:.6g}', state.steps, state.t, diag.max_riem)

    result.final = state
    result.reason = reason
    logger.info('Run stopped at t={:.6g} after {} steps: {}', state.t, state.steps, reason.value)
    return result
