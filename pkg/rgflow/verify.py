"""Self-test suite: the numerical oracles of the laboratory, run against the installed build.

Every check returns an observed error and the tolerance it must stay within. The quick
subset skips the two checks that integrate or linearize on fine grids.
"""

import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger

from .chart.field import GridSpec, MetricField
from .chart.geometry import check_sign_convention, christoffel, curvature, curvature_from_jet
from .chart.linearize import predicted_action, symbol_action
from .chart.stencils import modified_wavenumber_sq
from .errors import InitialConditionRejected, SignConventionError
from .flows import Flow, FlowKind, deturck_vector, deturck_vector_trace_form, flow_rhs, lie_derivative_metric
from .integrate import Controls, FlowState, StopReason, ode_reference, run, run_constant_curvature
from .presets import flat_perturbed, point_preset, stretched, warped, warped_ricci
from .symbol import (
    EPS_PAR,
    Verdict,
    gauge_direction,
    parabolicity,
    plane_curvatures,
    sorted_eigenvalues,
    symbol_eigen,
    symbol_flow,
    symbol_gauge_fixed,
    symbol_L,
)
from .tensor3 import (
    SymBilinear3,
    constant_curvature,
    curvature_operator_spectrum,
    orthonormal_frame,
    quad_contraction,
    quad_via_ricci,
    riemann_from_ricci,
    rotate_frame_kill_r23,
    sectional,
)

CheckFunc = Callable[[np.random.Generator], Tuple[float, float]]


@dataclass(frozen=True)
class Check:
    """A registered oracle."""

    name: str
    func: CheckFunc
    quick: bool


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one oracle.

    Attributes:
        name (str): check name.
        passed (bool): whether `error` <= `tolerance`.
        error (float): observed error (count of failed cases for logical checks).
        tolerance (float): allowed error.
        seconds (float): wall time.
        detail (str): exception text when the check crashed.
    """

    name: str
    passed: bool
    error: float
    tolerance: float
    seconds: float
    detail: str = ''

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'error': self.error,
            'tolerance': self.tolerance,
            'seconds': self.seconds,
            'detail': self.detail,
        }


CHECKS: List[Check] = []

_sign_kernel = curvature_from_jet


def check(name: str, quick: bool = True):
    """Register an oracle under `name`."""

    def register(func: CheckFunc) -> CheckFunc:
        CHECKS.append(Check(name, func, quick))
        return func

    return register


def _random_sym(rng: np.random.Generator, n: int = None) -> SymBilinear3:
    shape = (6,) if n is None else (n, 6)
    return SymBilinear3(rng.uniform(-1.0, 1.0, size=shape))


def _random_metric(rng: np.random.Generator) -> SymBilinear3:
    return SymBilinear3.identity() + 0.3 * _random_sym(rng)


def _corrupted_kernel(g, dg, ddg):
    return -curvature_from_jet(g, dg, ddg)


@check('sign-convention')
def _sign_convention(rng):
    try:
        k_min, k_max = check_sign_convention(_sign_kernel)
    except SignConventionError:
        return np.inf, 1e-8
    return max(abs(k_min - 1.0), abs(k_max - 1.0)), 1e-8


@check('quad-identity')
def _quad_identity(rng):
    ric = _random_sym(rng, 1000)
    g = SymBilinear3.identity((1000,))
    full = quad_contraction(riemann_from_ricci(ric, g), g).components
    fast = quad_via_ricci(ric, g).components
    scale = np.maximum(np.max(np.abs(fast), axis=-1), 1e-300)
    return float(np.max(np.max(np.abs(full - fast), axis=-1) / scale)), 1e-11


@check('symbol-spectrum')
def _symbol_spectrum(rng):
    worst = 0.0
    gauge = np.stack([gauge_direction(nu) for nu in np.eye(3)], axis=1)
    for a in (-0.3, 0.0, 0.5):
        for c in rng.uniform(-1.0, 1.0, size=(1000, 6)):
            c[4] = 0.0
            ric = SymBilinear3(c)
            beta, gamma = plane_curvatures(ric)
            s = symbol_L(ric, a)
            expected = np.sort(np.concatenate([np.zeros(3), symbol_eigen(beta, gamma, a)]))
            observed = np.sort(np.real(sorted_eigenvalues(s)))
            worst = max(worst, float(np.max(np.abs(observed - expected))), 100.0 * float(np.max(np.abs(s @ gauge))))
    return worst, 1e-10


@check('rotation')
def _rotation(rng):
    worst = 0.0
    cases = list(rng.uniform(-1.0, 1.0, size=(1000, 3)))
    cases.append(np.array([0.7, 0.7, 0.3]))
    frame = orthonormal_frame(SymBilinear3.identity(), [1.0, 0.0, 0.0])
    for r22, r33, r23 in cases:
        ric = SymBilinear3([0.0, 0.0, 0.0, r22, r23, r33])
        rotated, _ = rotate_frame_kill_r23(frame, ric)
        worst = max(worst, abs(float(rotated.components(ric).matrix[1, 2])))
    return worst, 1e-12


@check('gauge-fixed-ellipticity')
def _gauge_fixed(rng):
    worst, mismatches = 0.0, 0
    for _ in range(1000):
        c = rng.uniform(-1.0, 1.0, size=6)
        c[4] = 0.0
        ric = SymBilinear3(c)
        a = float(rng.uniform(-0.5, 0.5))
        beta, gamma = plane_curvatures(ric)
        observed = np.sort(np.real(sorted_eigenvalues(symbol_gauge_fixed(ric, a))))
        expected = np.sort(np.concatenate([np.ones(3), symbol_eigen(beta, gamma, a)]))
        worst = max(worst, float(np.max(np.abs(observed - expected))))
    for _ in range(1000):
        g = _random_metric(rng)
        riem = riemann_from_ricci(_random_sym(rng), g)
        a = float(rng.uniform(0.0, 1.0))
        k, _ = curvature_operator_spectrum(riem, g)
        report = parabolicity(riem, g, Flow(FlowKind.RG2, a))
        mismatches += (report.verdict is Verdict.STRONG) != (1.0 + 2.0 * a * k[0] > EPS_PAR)
    return worst + mismatches, 1e-10


@check('sectional-extrema')
def _sectional_extrema(rng):
    worst = 0.0
    for _ in range(10):
        g = _random_metric(rng)
        riem = riemann_from_ricci(_random_sym(rng), g)
        k, planes = curvature_operator_spectrum(riem, g)
        for x, y in rng.normal(size=(1000, 2, 3)):
            value = sectional(riem, g, x, y)
            worst = max(worst, k[0] - value, value - k[-1])
        for i in (0, -1):
            w = planes[:, i]
            x = np.cross(w, np.eye(3)[int(np.argmin(np.abs(w)))])
            worst = max(worst, abs(sectional(riem, g, x, np.cross(w, x)) - k[i]))
    return worst, 1e-9


@check('christoffel')
def _christoffel(rng):
    field = stretched(GridSpec(1, 128))
    (x,) = field.grid.coordinates()
    exact = 0.05 * np.cos(x) / (1.0 + 0.1 * np.sin(x))
    return float(np.max(np.abs(christoffel(field)[:, 0, 0, 0] - exact))), 1e-7


@check('fd-convergence')
def _fd_convergence(rng):
    errors = []
    for n in (64, 128):
        field = warped(GridSpec(1, n))
        (x,) = field.grid.coordinates()
        errors.append(float(np.max(np.abs(curvature(field).ricci.components - warped_ricci(x).components))))
    ratio = errors[0] / errors[1]
    return abs(ratio - 16.0), 3.2


@check('lie-derivative')
def _lie_derivative(rng):
    field = MetricField.flat(GridSpec(1, 128))
    (x,) = field.grid.coordinates()
    v = np.zeros((128, 3))
    v[:, 0] = np.sin(x)
    lie = lie_derivative_metric(field, v).components
    expected = np.zeros_like(lie)
    expected[:, 0] = 2.0 * np.cos(x)
    return float(np.max(np.abs(lie - expected))), 1e-6


@check('deturck-forms')
def _deturck_forms(rng):
    grid = GridSpec(1, 128)
    field = flat_perturbed(grid, 1e-3, seed=int(rng.integers(2**32)))
    flat = MetricField.flat(grid)
    v = deturck_vector(field, flat)
    w = deturck_vector_trace_form(field, flat)
    zero = np.max(np.abs(deturck_vector(field, field)))
    return float(np.max(np.abs(v - w)) / np.max(np.abs(v)) + zero), 1e-3


@check('rhs-constant-curvature')
def _rhs_constant_curvature(rng):
    g = SymBilinear3.identity()
    riem = constant_curvature(1.0, g)
    ric = 2.0 * g
    flow = Flow(FlowKind.RG2, 0.1)
    worst = 0.0
    for verify in (False, True):
        out = flow_rhs(flow, g, ric, riem, verify=verify)
        worst = max(worst, float(np.max(np.abs(out.components - (-4.4 * g).components))))
    return worst, 1e-12


@check('ode-agreement')
def _ode_agreement(rng):
    worst = 0.0
    for k0, a in ((1.0, 0.0), (1.0, 0.1), (-1.0, 0.4)):
        out = run_constant_curvature(k0, Flow(FlowKind.RG2, a), t_end=0.1, dt=1e-3)
        t, c = np.array(out.t), np.array(out.c)
        ref = ode_reference(k0, a, 1.0, 0.1, t_eval=t)
        worst = max(worst, float(np.max(np.abs(c - ref.c) / np.abs(ref.c))))
        if a == 0.0:
            # the Ricci-flow limit is exactly linear
            worst = max(worst, 100.0 * float(np.max(np.abs(c - (1.0 - 4.0 * k0 * t)))))
    return worst, 1e-8


@check('ode-extinction')
def _ode_extinction(rng):
    ref = ode_reference(1.0, 0.0, 1.0, 0.3)
    if ref.extinction_time is None:
        return np.inf, 1e-8
    return abs(ref.extinction_time - 0.25), 1e-8


@check('parabolicity-gate')
def _parabolicity_gate(rng):
    failures = 0
    hyperbolic = point_preset('constant-curvature', k0=-1.0)
    for a, margin, ok in ((0.4, 0.2, True), (0.6, -0.2, False)):
        report = parabolicity(hyperbolic.riemann, hyperbolic.g, Flow(FlowKind.RG2, a))
        failures += abs(report.margin - margin) > 1e-12 or report.ok != ok
    try:
        run_constant_curvature(-1.0, Flow(FlowKind.RG2, 0.6))
        failures += 1
    except InitialConditionRejected as err:
        failures += abs(err.margin + 0.2) > 1e-12
    for k0, a in ((1.0, 0.4), (-1.0, -0.4)):
        sample = point_preset('constant-curvature', k0=k0)
        failures += not parabolicity(sample.riemann, sample.g, Flow(FlowKind.RG2ZERO, a)).ok
    mixed = point_preset('mixed-sign')
    for a in (0.4, -0.4):
        failures += parabolicity(mixed.riemann, mixed.g, Flow(FlowKind.RG2ZERO, a)).ok
    return float(failures), 0.0


@check('operator-vs-symbol', quick=False)
def _operator_vs_symbol(rng):
    flows = [Flow(FlowKind.RICCI)] + [Flow(kind, 1.0) for kind in list(FlowKind)[1:]]
    flat = MetricField.flat(GridSpec(1, 256))
    h = flat.grid.spacing
    zero = SymBilinear3(np.zeros(6))
    omega = 32
    dispersion = 0.0
    for flow in flows:
        measured = symbol_action(flat, flow, omega)
        error = np.max(np.abs(measured + modified_wavenumber_sq(omega, h) * symbol_flow(flow, zero))) / omega**2
        dispersion = max(dispersion, error)
    curved = warped(GridSpec(1, 256), eps=0.5)
    relative = 0.0
    for flow in flows:
        for gauge_fixed in (False, True):
            predicted = predicted_action(curved, flow, gauge_fixed)
            measured = symbol_action(curved, flow, omega, gauge_fixed=gauge_fixed) / -modified_wavenumber_sq(omega, h)
            relative = max(relative, np.linalg.norm(measured - predicted) / np.linalg.norm(predicted))
    # stencil-exact on the flat torus within 1e-6, chart symbol of the warped metric within 5%
    return float(max(5e-2 * dispersion / 1e-6, relative)), 5e-2


def _smoke_run(seed: int):
    field = flat_perturbed(GridSpec(1, 128), 1e-3, seed=seed)
    state = FlowState.initial(field, Flow(FlowKind.RG2, 0.01))
    return run(state, 1e-3, 0.5, Controls())


@check('stability-run', quick=False)
def _stability_run(rng):
    seed = int(rng.integers(2**32))
    first, second = _smoke_run(seed), _smoke_run(seed)
    failures = 0
    failures += first.reason is not StopReason.T_END
    failures += first.diagnostics[-1].max_riem >= 0.1 * first.diagnostics[0].max_riem
    failures += first.diagnostics != second.diagnostics
    failures += not np.array_equal(first.final.field.metric.components, second.final.field.metric.components)
    return float(failures), 0.0


def run_checks(
    quick: bool = False, seed: int = 0, corrupt_sign: bool = False, names: Optional[List[str]] = None
) -> List[CheckResult]:
    """Run the oracle suite.

    Args:
        quick (bool): run only the sub-second subset.
        seed (int): seed of the random cases.
        corrupt_sign (bool): feed the sign check a curvature kernel with the opposite sign,
            which must make it fail.
        names (list): run only these checks.

    Returns:
        list: one `CheckResult` per check run, in registration order.
    """
    global _sign_kernel
    _sign_kernel = _corrupted_kernel if corrupt_sign else curvature_from_jet
    results = []
    try:
        for item in CHECKS:
            if (quick and not item.quick) or (names is not None and item.name not in names):
                continue
            rng = np.random.default_rng(seed)
            start = time.perf_counter()
            detail = ''
            try:
                error, tolerance = item.func(rng)
            except Exception as err:
                error, tolerance, detail = np.inf, 0.0, repr(err)
            seconds = time.perf_counter() - start
            result = CheckResult(item.name, bool(error <= tolerance), float(error), tolerance, seconds, detail)
            logger.info(
                '{} {}: error {:.3g} (tolerance {:.3g}) in {:.2f}s',
                'PASS' if result.passed else 'FAIL',
                item.name,
                result.error,
                tolerance,
                seconds,
            )
            results.append(result)
    finally:
        _sign_kernel = curvature_from_jet
    return results
