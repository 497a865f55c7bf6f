"""Tests for the `chart` sub-module."""

import numpy as np
import pytest

from rgflow.chart import (
    GridSpec,
    MetricField,
    check_sign_convention,
    christoffel,
    covariant_derivative_sym2,
    curvature,
    curvature_from_jet,
    d1,
    d2,
    gradient,
    hessian,
    lower_index,
    mode_amplitude,
    modified_wavenumber_sq,
    periodic_spectrum,
    raise_index,
    stereographic_sphere_jet,
)
from rgflow.chart.linearize import linearize_L, predicted_action, symbol_action
from rgflow.errors import DefinitenessError, GridMismatchError, SignConventionError, StepTooLargeError
from rgflow.flows import Flow, FlowKind
from rgflow.presets import flat_perturbed, stretched, warped, warped_ricci
from rgflow.symbol import symbol_flow
from rgflow.tensor3 import Curv3, SymBilinear3, sectional_extrema


@pytest.mark.parametrize('dim, n', [(2, 16), (1, 4), (3, 64)])
def test_grid_validation(dim, n):
    """Test unsupported grids are rejected."""
    with pytest.raises(ValueError):
        GridSpec(dim, n)


def test_grid_geometry():
    """Test spacing, shape and coordinates of a grid."""
    grid = GridSpec(3, 8)
    assert grid.spacing == pytest.approx(np.pi / 4)
    assert grid.shape == (8, 8, 8)
    x, y, z = grid.coordinates()
    assert x[3, 0, 0] == pytest.approx(3 * np.pi / 4)
    assert y[0, 5, 0] == pytest.approx(5 * np.pi / 4)
    assert z.shape == (8, 8, 8)
    assert GridSpec(3, 64, max_n=64).n == 64


def test_metric_field_validation():
    """Test shape and definiteness checks of a metric field."""
    grid = GridSpec(1, 8)
    with pytest.raises(GridMismatchError):
        MetricField(grid, SymBilinear3.identity((9,)))
    bad = SymBilinear3.identity((8,)).components.copy()
    bad[5, 0] = -1.0
    with pytest.raises(DefinitenessError) as info:
        MetricField(grid, SymBilinear3(bad))
    assert info.value.location == (5,)


def test_check_same_grid():
    """Test fields on different grids are told apart."""
    with pytest.raises(GridMismatchError):
        MetricField.flat(GridSpec(1, 16)).check_same_grid(MetricField.flat(GridSpec(1, 32)))


def test_d1_fourth_order():
    """Test the first-derivative stencil converges at fourth order."""
    errors = []
    for n in (32, 64):
        x = np.arange(n) * 2 * np.pi / n
        errors.append(np.max(np.abs(d1(np.sin(3 * x), 2 * np.pi / n) - 3 * np.cos(3 * x))))
    assert 14.0 < errors[0] / errors[1] < 17.0


def test_d2_modified_wavenumber():
    """Test the second-derivative stencil acts on cos(omega x) by the modified wavenumber."""
    n, omega = 64, 7
    h = 2 * np.pi / n
    x = np.arange(n) * h
    assert np.allclose(d2(np.cos(omega * x), h), -modified_wavenumber_sq(omega, h) * np.cos(omega * x), atol=1e-10)
    assert modified_wavenumber_sq(omega, h) == pytest.approx(omega**2, rel=(omega * h) ** 4 / 80)


def test_gradient_layout():
    """Test the derivative index follows the grid axes and vanishes off-grid."""
    grid = GridSpec(1, 32)
    (x,) = grid.coordinates()
    f = np.stack([np.sin(x), np.cos(x)], axis=-1)
    df = gradient(f, grid.spacing, 1)
    assert df.shape == (32, 3, 2)
    assert np.allclose(df[:, 0, 0], np.cos(x), atol=1e-4)
    assert np.all(df[:, 1:] == 0.0)


def test_hessian_mixed_partial():
    """Test the mixed partial of sin(x) sin(y) on a 3D grid."""
    grid = GridSpec(3, 32)
    x, y, _ = grid.coordinates()
    ddf = hessian(np.sin(x) * np.sin(y), grid.spacing, 3)
    assert ddf.shape == (32, 32, 32, 3, 3)
    assert np.allclose(ddf[..., 0, 1], np.cos(x) * np.cos(y), atol=5e-4)
    assert np.allclose(ddf[..., 0, 1], ddf[..., 1, 0])
    assert np.allclose(ddf[..., 2, :], 0.0, atol=1e-10)


def test_christoffel_stretched():
    """Test G^1_11 of diag(1 + 0.1 sin x, 1, 1) against its closed form."""
    field = stretched(GridSpec(1, 128))
    (x,) = field.grid.coordinates()
    gamma = christoffel(field)
    assert np.max(np.abs(gamma[:, 0, 0, 0] - 0.05 * np.cos(x) / (1 + 0.1 * np.sin(x)))) < 1e-7
    gamma[:, 0, 0, 0] = 0.0
    assert np.max(np.abs(gamma)) < 1e-14


def test_stretched_is_flat():
    """Test a flat metric in a non-trivial chart has zero curvature."""
    curv = curvature(stretched(GridSpec(1, 128)))
    assert np.max(np.abs(curv.riemann.operator)) < 1e-7


def test_flat_curvature():
    """Test the flat torus has exactly vanishing curvature."""
    curv = curvature(MetricField.flat(GridSpec(1, 16)))
    assert np.all(curv.riemann.operator == 0.0)
    assert np.all(curv.ricci.components == 0.0)
    assert np.all(curv.k_min == 0.0)


def test_warped_ricci():
    """Test the Ricci tensor of the warped product against its closed form."""
    field = warped(GridSpec(1, 128))
    (x,) = field.grid.coordinates()
    curv = curvature(field)
    assert np.max(np.abs(curv.ricci.components - warped_ricci(x).components)) < 1e-6
    assert np.all(curv.k_min <= curv.k_max)


def test_warped_ricci_convergence():
    """Test the curvature converges at fourth order."""
    errors = []
    for n in (64, 128):
        field = warped(GridSpec(1, n))
        (x,) = field.grid.coordinates()
        errors.append(np.max(np.abs(curvature(field).ricci.components - warped_ricci(x).components)))
    assert abs(errors[0] / errors[1] - 16.0) < 3.2


def test_sphere_jet_curvature(rng):
    """Test the exact stereographic jet gives K = 1 at random points."""
    for x in rng.uniform(-1.0, 1.0, size=(5, 3)):
        g, dg, ddg = stereographic_sphere_jet(x)
        metric = SymBilinear3.from_matrix(g)
        k_min, k_max = sectional_extrema(Curv3.from_dense(curvature_from_jet(g, dg, ddg), metric), metric)
        assert k_min == pytest.approx(1.0, abs=1e-10)
        assert k_max == pytest.approx(1.0, abs=1e-10)


def test_sign_convention():
    """Test the sign self-check passes and catches a flipped kernel."""
    k_min, k_max = check_sign_convention()
    assert k_min == pytest.approx(1.0)
    with pytest.raises(SignConventionError):
        check_sign_convention(lambda g, dg, ddg: -curvature_from_jet(g, dg, ddg))


def test_metric_compatibility():
    """Test nabla g = 0 for the Levi-Civita connection."""
    field = flat_perturbed(GridSpec(1, 128), amplitude=1e-2, seed=3)
    nabla = covariant_derivative_sym2(field, field.metric)
    assert nabla.shape == (128, 3, 3, 3)
    assert np.max(np.abs(nabla)) < 1e-6


def test_lower_raise_index(rng):
    """Test raising undoes lowering."""
    field = flat_perturbed(GridSpec(1, 16), amplitude=0.1, seed=1)
    v = rng.normal(size=(16, 3))
    assert np.allclose(raise_index(field, lower_index(field, v)), v)


def test_3d_grid_matches_1d():
    """Test a metric depending on x1 only has the same curvature on 1D and 3D grids."""
    curv1 = curvature(warped(GridSpec(1, 16)))
    grid = GridSpec(3, 16)
    x, _, _ = grid.coordinates()
    f = 1.0 + 0.1 * np.sin(x)
    field = MetricField(grid, SymBilinear3.diag(np.stack([np.ones_like(x), f**2, f**2], axis=-1)))
    curv3 = curvature(field)
    assert curv3.ricci.shape == (16, 16, 16)
    assert np.allclose(curv3.ricci.components[:, 4, 9], curv1.ricci.components, atol=1e-12)


def test_3d_perturbed_curvature():
    """Test curvature of a random perturbation on a small 3D grid is small and consistent."""
    field = flat_perturbed(GridSpec(3, 12), amplitude=1e-3, seed=7)
    curv = curvature(field)
    assert np.all(curv.k_min <= curv.k_max)
    assert 1e-6 < np.max(np.abs(curv.k_max)) < 1.0
    assert np.allclose(np.einsum('...ij,...ij->...', np.linalg.inv(field.metric.matrix), curv.ricci.matrix), curv.scalar)


def test_linearize_zero_perturbation():
    """Test the linearization vanishes on h = 0."""
    field = flat_perturbed(GridSpec(1, 32), seed=2)
    out = linearize_L(field, SymBilinear3(np.zeros((32, 6))), Flow(FlowKind.RG2, 0.1))
    assert np.max(np.abs(out.components)) < 1e-12


def test_linearize_step_too_large():
    """Test a step leaving the positive cone is reported."""
    field = MetricField.flat(GridSpec(1, 16))
    h = SymBilinear3.identity((16,)) * 2e4
    with pytest.raises(StepTooLargeError):
        linearize_L(field, h, Flow(FlowKind.RICCI))


@pytest.mark.parametrize('flow', [Flow(FlowKind.RICCI), Flow(FlowKind.RG2, 0.1), Flow(FlowKind.MIXED, 0.1)])
def test_symbol_action_flat(flow):
    """Test the measured plane-wave action on the flat torus is the stencil-exact symbol."""
    field = MetricField.flat(GridSpec(1, 64))
    omega = 4
    measured = symbol_action(field, flow, omega)
    expected = -modified_wavenumber_sq(omega, field.grid.spacing) * symbol_flow(flow, SymBilinear3(np.zeros(6)))
    assert np.max(np.abs(measured - expected)) < 1e-6 * omega**2


def test_symbol_action_needs_1d_grid():
    """Test plane-wave actions refuse 3D grids."""
    with pytest.raises(ValueError):
        symbol_action(MetricField.flat(GridSpec(3, 8)), Flow(FlowKind.RICCI), 2)


def test_mode_amplitude():
    """Test the cosine amplitude of a single mode."""
    x = np.arange(64) * 2 * np.pi / 64
    values = 0.7 * np.cos(3 * x) + 0.2 * np.sin(3 * x) + 0.5 * np.cos(5 * x)
    assert mode_amplitude(values, 3) == pytest.approx(0.7)
    assert mode_amplitude(np.stack([values, 2 * values], axis=-1), 5, axis=0) == pytest.approx([0.5, 1.0])
    with pytest.raises(ValueError):
        mode_amplitude(values, 32)


def test_periodic_spectrum():
    """Test the normalized coefficients of a cosine and a sine."""
    x = np.arange(32) * 2 * np.pi / 32
    spectrum = periodic_spectrum(np.cos(3 * x) + 0.5 * np.sin(2 * x))
    assert spectrum.shape == (32,)
    assert spectrum[3] == pytest.approx(0.5)
    assert spectrum[2] == pytest.approx(-0.25j)
    assert abs(spectrum[0]) < 1e-15


CURVED_FLOWS = [
    Flow(FlowKind.RICCI),
    Flow(FlowKind.RG2, 0.5),
    Flow(FlowKind.RG2, -0.5),
    Flow(FlowKind.RG2ZERO, 1.0),
    Flow(FlowKind.SQUARED_RICCI, 1.0),
    Flow(FlowKind.MIXED, 0.5),
]


def test_predicted_action_flat():
    """Test the chart symbol on the flat torus is the frame symbol with zero Ricci."""
    field = MetricField.flat(GridSpec(1, 16))
    for flow in CURVED_FLOWS:
        expected = symbol_flow(flow, SymBilinear3(np.zeros(6)))
        assert np.allclose(predicted_action(field, flow), expected, atol=1e-12)


@pytest.mark.parametrize('gauge_fixed', [False, True], ids=['ungauged', 'gauge-fixed'])
@pytest.mark.parametrize('flow', CURVED_FLOWS, ids=str)
def test_symbol_action_warped(flow, gauge_fixed):
    """Test the plane-wave action on a warped chart converges to the chart symbol."""
    field = warped(GridSpec(1, 256), eps=0.5)
    predicted = predicted_action(field, flow, gauge_fixed)
    assert np.linalg.norm(predicted) > 0.1
    errors = []
    for omega in (8, 16, 32):
        measured = symbol_action(field, flow, omega, gauge_fixed=gauge_fixed)
        measured = measured / -modified_wavenumber_sq(omega, field.grid.spacing)
        errors.append(np.linalg.norm(measured - predicted) / np.linalg.norm(predicted))
    assert errors[-1] < 0.05
    assert errors[-1] < errors[0]
