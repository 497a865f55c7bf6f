"""Tests for the `integrate` sub-module."""

import numpy as np
import pytest

from rgflow.chart import GridSpec, MetricField, curvature
from rgflow.errors import InitialConditionRejected
from rgflow.flows import Flow, FlowKind
from rgflow.integrate import (
    DIAGNOSTICS_COLUMNS,
    Controls,
    FlowState,
    StopReason,
    gate,
    monitor,
    ode_reference,
    rk4_step,
    run,
    run_constant_curvature,
    stable_step,
    step_rk4,
)
from rgflow.presets import flat_perturbed
from rgflow.tensor3 import SymBilinear3


def _perturbed_state(flow, n=64, seed=0):
    return FlowState.initial(flat_perturbed(GridSpec(1, n), 1e-3, seed=seed), flow)


def test_rk4_step_exponential():
    """Test one RK4 step of dy/dt = -y."""
    y = rk4_step(SymBilinear3.identity(), 0.1, lambda v: -v)
    assert y.components[0] == pytest.approx(np.exp(-0.1), rel=1e-6)
    assert y.components[1] == 0.0


def test_controls_validation():
    """Test non-positive controls are refused."""
    with pytest.raises(ValueError):
        Controls(cfl=0.0)
    with pytest.raises(ValueError):
        Controls(refresh=0)


def test_diagnostics_row():
    """Test the diagnostics row follows the CSV column order."""
    state = FlowState.initial(MetricField.flat(GridSpec(1, 16)), Flow(FlowKind.RG2, 0.1))
    diag = monitor(state)
    assert tuple(diag.row()) == DIAGNOSTICS_COLUMNS
    assert diag.margin == 1.0
    assert diag.max_riem == 0.0
    assert diag.min_eig_g == pytest.approx(1.0)
    assert diag.kind == 'rg2'


def test_flat_is_fixed_point():
    """Test the flat torus does not move."""
    state = FlowState.initial(MetricField.flat(GridSpec(1, 16)), Flow(FlowKind.RG2, 0.1))
    result = run(state, 1e-3, 0.01)
    assert result.reason is StopReason.T_END
    assert result.final.t == pytest.approx(0.01)
    assert np.array_equal(result.final.field.metric.components, state.field.metric.components)


def test_step_rk4_rejects_bad_dt():
    """Test the step size must be positive."""
    with pytest.raises(ValueError):
        step_rk4(FlowState.initial(MetricField.flat(GridSpec(1, 16)), Flow(FlowKind.RICCI)), 0.0)


def test_stable_step_flat():
    """Test the CFL step on flat data is cfl h^2."""
    state = FlowState.initial(MetricField.flat(GridSpec(1, 64)), Flow(FlowKind.RG2, 0.1))
    h = state.field.grid.spacing
    assert stable_step(state, curvature(state.field), 0.2) == pytest.approx(0.2 * h**2)


def test_ricci_equals_rg2_at_zero_coupling():
    """Test the Ricci flow and RG2 with a = 0 produce identical runs."""
    ricci = run(_perturbed_state(Flow(FlowKind.RICCI), n=32), 1e-3, 0.01)
    rg2 = run(_perturbed_state(Flow(FlowKind.RG2, 0.0), n=32), 1e-3, 0.01)
    assert ricci.final.steps == rg2.final.steps
    assert np.array_equal(ricci.final.field.metric.components, rg2.final.field.metric.components)


def test_zero_end_time():
    """Test t_end = 0 gives one diagnostics row and no steps."""
    state = _perturbed_state(Flow(FlowKind.RG2, 0.01), n=32)
    result = run(state, 1e-3, 0.0)
    assert result.reason is StopReason.T_END
    assert result.final is state
    assert len(result.diagnostics) == 1
    assert result.trajectory == []


def test_gate_rejects_rg2zero_on_flat():
    """Test a non-parabolic start is refused with its margin."""
    state = FlowState.initial(MetricField.flat(GridSpec(1, 16)), Flow(FlowKind.RG2ZERO, 0.1))
    with pytest.raises(InitialConditionRejected) as info:
        run(state, 1e-3, 0.01)
    assert info.value.margin == 0.0


def test_gate_rejects_rg2zero_on_perturbed():
    """Test RG2zero with a > 0 is refused on data with negative sectional curvature."""
    state = _perturbed_state(Flow(FlowKind.RG2ZERO, 0.1), n=32)
    report = gate(state)
    assert report.margin < 0.0
    assert len(report.point) == 1
    with pytest.raises(InitialConditionRejected):
        run(state, 1e-3, 0.01)


def test_force_runs_non_parabolic_data():
    """Test force skips the gates."""
    state = FlowState.initial(MetricField.flat(GridSpec(1, 16)), Flow(FlowKind.RG2ZERO, 0.1))
    result = run(state, 1e-3, 0.005, Controls(force=True))
    assert result.reason is StopReason.T_END
    assert result.initial_report.margin == 0.0


@pytest.mark.parametrize(
    'controls, reason',
    [(Controls(m_max=1e-12), StopReason.CURVATURE_BLOWUP), (Controls(eps_g=2.0), StopReason.METRIC_DEGENERACY)],
)
def test_detectors_fire_at_start(controls, reason):
    """Test the singularity detectors stop a run before its first step."""
    result = run(_perturbed_state(Flow(FlowKind.RG2, 0.01), n=32), 1e-3, 0.1, controls)
    assert result.reason is reason
    assert result.final.steps == 0
    assert len(result.diagnostics) == 1


def test_short_run():
    """Test a short RG2 run from a perturbed flat torus."""
    steps = []
    result = run(
        _perturbed_state(Flow(FlowKind.RG2, 0.01)),
        1e-3,
        0.05,
        Controls(snapshot_every=5),
        on_step=lambda state, diag: steps.append(state.steps),
    )
    assert result.reason is StopReason.T_END
    assert result.final.t == pytest.approx(0.05)
    assert steps == list(range(1, result.final.steps + 1))
    assert len(result.diagnostics) == result.final.steps + 1
    times = [d.t for d in result.diagnostics]
    assert all(later > earlier for earlier, later in zip(times, times[1:]))
    assert all(d.dt <= 1e-3 for d in result.diagnostics)
    assert [s.steps % 5 for s in result.trajectory] == [0] * len(result.trajectory)
    assert len(result.trajectory) == result.final.steps // 5
    assert result.diagnostics[-1].max_riem < result.diagnostics[0].max_riem
    assert all(d.margin > 0.9 for d in result.diagnostics)


def test_run_is_deterministic():
    """Test two runs from the same seed agree bit for bit."""
    first = run(_perturbed_state(Flow(FlowKind.RG2, 0.01), n=32, seed=11), 1e-3, 0.02)
    second = run(_perturbed_state(Flow(FlowKind.RG2, 0.01), n=32, seed=11), 1e-3, 0.02)
    assert first.diagnostics == second.diagnostics
    assert np.array_equal(first.final.field.metric.components, second.final.field.metric.components)


@pytest.mark.slow
def test_smoothing_run():
    """Test RG2 with a small coupling smooths a perturbation by an order of magnitude by t = 0.5."""
    result = run(_perturbed_state(Flow(FlowKind.RG2, 0.01), n=128), 1e-3, 0.5)
    assert result.reason is StopReason.T_END
    assert result.diagnostics[-1].max_riem < 0.1 * result.diagnostics[0].max_riem


def test_ode_extinction():
    """Test the Ricci flow of the unit sphere data dies at t = 1/4."""
    ref = ode_reference(1.0, 0.0, 1.0, 0.3)
    assert ref.extinction_time == pytest.approx(0.25, abs=1e-8)


def test_ode_linear_ricci_limit():
    """Test c = 1 - 4 k0 t for a = 0."""
    t = np.linspace(0.0, 0.2, 5)
    ref = ode_reference(1.0, 0.0, 1.0, 0.2, t_eval=t)
    assert ref.extinction_time is None
    assert np.allclose(ref.c, 1.0 - 4.0 * t, atol=1e-11)


def test_ode_rejects_bad_scale():
    """Test the initial scale factor must be positive."""
    with pytest.raises(ValueError):
        ode_reference(1.0, 0.0, 0.0, 0.1)


@pytest.mark.parametrize('k0, a', [(1.0, 0.0), (1.0, 0.1), (-1.0, 0.4)])
def test_constant_curvature_run_matches_ode(k0, a):
    """Test the pointwise RK4 run against the reference solution."""
    out = run_constant_curvature(k0, Flow(FlowKind.RG2, a), t_end=0.1, dt=1e-3)
    assert out.reason is StopReason.T_END
    assert out.t[0] == 0.0
    assert out.t[-1] == pytest.approx(0.1)
    ref = ode_reference(k0, a, 1.0, 0.1, t_eval=out.t)
    assert np.max(np.abs(np.array(out.c) - ref.c) / np.abs(ref.c)) < 1e-8


def test_constant_curvature_rejected():
    """Test RG2 with a = 0.6 on curvature -1 is refused with margin -0.2."""
    with pytest.raises(InitialConditionRejected) as info:
        run_constant_curvature(-1.0, Flow(FlowKind.RG2, 0.6))
    assert info.value.margin == pytest.approx(-0.2)


def test_constant_curvature_loses_parabolicity():
    """Test RG2 with a = -0.3 on curvature 1 stops once 1 - 0.6 / c reaches zero."""
    out = run_constant_curvature(1.0, Flow(FlowKind.RG2, -0.3), t_end=0.5, dt=1e-3)
    assert out.reason is StopReason.PARABOLICITY_LOST
    assert out.margin[0] == pytest.approx(0.4)
    assert out.margin[-1] <= 1e-8
    assert out.c[-1] == pytest.approx(0.6, abs=5e-3)


def test_constant_curvature_forced():
    """Test the forced run continues towards the fixed point c = 0.3."""
    out = run_constant_curvature(1.0, Flow(FlowKind.RG2, -0.3), t_end=0.5, dt=1e-3, controls=Controls(force=True))
    assert out.reason is StopReason.T_END
    assert min(out.margin) < 0.0
    assert 0.3 < out.c[-1] < 0.6


def test_constant_curvature_extinction():
    """Test the Ricci flow of sphere data stops at the singularity near t = 1/4."""
    out = run_constant_curvature(1.0, Flow(FlowKind.RICCI), t_end=0.3, dt=1e-3)
    assert out.reason in (StopReason.CURVATURE_BLOWUP, StopReason.METRIC_DEGENERACY)
    assert out.t[-1] == pytest.approx(0.25, abs=1e-3)


def test_constant_curvature_rk4_order():
    """Test halving the step divides the error by about 16."""
    k0, a = -1.0, 0.4
    exact = ode_reference(k0, a, 1.0, 1.0).c[-1]
    errors = []
    for dt in (0.05, 0.025):
        out = run_constant_curvature(k0, Flow(FlowKind.RG2, a), t_end=1.0, dt=dt)
        errors.append(abs(out.c[-1] - exact))
    assert 12.8 <= errors[0] / errors[1] <= 19.2


def test_constant_curvature_background_metric():
    """Test the scale factor is measured against a non-Euclidean background."""
    g0 = SymBilinear3.diag([2.0, 3.0, 4.0])
    out = run_constant_curvature(-1.0, Flow(FlowKind.RG2, 0.4), t_end=0.1, dt=1e-3, g0=g0)
    ref = ode_reference(-1.0, 0.4, 1.0, 0.1, t_eval=out.t)
    assert np.allclose(out.c, ref.c, rtol=1e-8)
