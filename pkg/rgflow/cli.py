"""Command line interface of rgflow.

Exit codes: 0 on success, 1 when data fail the parabolicity condition or a self-test
fails, 2 on usage errors and malformed input files.
"""

import json
import pathlib
import sys
import time
from typing import Optional, Sequence

import click
import numpy as np
from loguru import logger

from . import __version__
from .chart.field import MetricField
from .chart.geometry import curvature
from .config import RunConfig, load_config
from .errors import ConfigError, FlowKindError, InitialConditionRejected, PointSampleError, SnapshotError
from .flows import Flow, FlowKind
from .integrate import Diagnostics, FlowState, RunResult, StopReason, run, run_constant_curvature
from .io import read_point_sample, read_snapshot, write_diagnostics, write_snapshot, write_trajectory
from .io.points import PointSample
from .presets import POINT_PRESETS, field_preset, point_preset
from .symbol import EPS_PAR, global_parabolicity, parabolicity, symbol_report
from .verify import run_checks

LOG_LEVELS = ('WARNING', 'INFO', 'DEBUG')
"""tuple: stderr log level by number of -v flags."""

KINDS = [kind.value for kind in FlowKind]


class InputError(click.ClickException):
    """Malformed input: exit code 2."""

    exit_code = 2


class CheckFailed(click.ClickException):
    """Data fail the parabolicity condition, or a self-test fails: exit code 1."""

    exit_code = 1


def _configure_logging(verbose: int) -> None:
    logger.remove()
    level = LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)]
    logger.add(sys.stderr, level=level, format='{time:HH:mm:ss} | {level} | {message}')
    logger.enable('rgflow')


def _flow(kind: str, a: float) -> Flow:
    try:
        return Flow(FlowKind(kind), a)
    except FlowKindError as err:
        raise InputError(str(err)) from err


def _point(sample: Optional[str], preset: str, k0: float, xi: Optional[Sequence[float]]) -> PointSample:
    try:
        point = read_point_sample(sample) if sample else point_preset(preset, k0)
    except (PointSampleError, OSError) as err:
        raise InputError(str(err)) from err
    if xi is not None:
        if not np.any(xi):
            raise InputError('The covector --xi must be non-zero.')
        point = PointSample(point.g, point.ric, np.asarray(xi, dtype=float))
    return point


def _matrix(m) -> str:
    return np.array2string(np.asarray(m), precision=6, suppress_small=True, max_line_width=120)


def _eigenvalues(values) -> str:
    return ', '.join(f'{re:.6g}' if im == 0 else f'{re:.6g}{im:+.6g}j' for re, im in values)


kind_option = click.option('--kind', type=click.Choice(KINDS), default='rg2', show_default=True, help='Flow kind.')
coupling_option = click.option('--a', 'a', type=float, default=0.0, show_default=True, help='Coupling constant a.')
json_option = click.option('--json', 'as_json', is_flag=True, help='Print machine-readable JSON.')
sample_option = click.option(
    '--sample', type=click.Path(dir_okay=False), default=None, help='Point-sample file (g, ric or k, xi).'
)
preset_option = click.option(
    '--preset', type=click.Choice(POINT_PRESETS), default='flat', show_default=True, help='Pointwise preset.'
)
k0_option = click.option(
    '--k0', type=float, default=-1.0, show_default=True, help='Sectional curvature of the constant-curvature preset.'
)


@click.group()
@click.version_option(__version__, prog_name='rgflow')
@click.option('-v', '--verbose', count=True, help='Log to stderr: -v info, -vv debug.')
def main(verbose):
    """Two-loop renormalization group flow laboratory on 3-manifolds."""
    _configure_logging(verbose)


@main.command()
@sample_option
@preset_option
@k0_option
@click.option('--xi', type=float, nargs=3, default=None, help='Covector, three chart components.')
@kind_option
@coupling_option
@click.option('--eps-par', type=float, default=EPS_PAR, show_default=True, help='Parabolicity threshold.')
@json_option
def symbol(sample, preset, k0, xi, kind, a, eps_par, as_json):
    """Principal symbol of a flow at one point and covector."""
    point = _point(sample, preset, k0, xi)
    report = symbol_report(point.riemann, point.g, point.xi, _flow(kind, a), eps_par)
    if as_json:
        click.echo(json.dumps(report, indent=2))
        return
    click.echo(f'flow: {report["kind"]} a={report["a"]:g}')
    click.echo(f'covector: {report["covector"]}')
    click.echo(f'coordinates: {", ".join(report["coordinates"])}')
    if report['symbol_unrotated'] is not None:
        click.echo('symbol (unrotated frame):')
        click.echo(_matrix(report['symbol_unrotated']))
    click.echo(f'alpha: {report["alpha"]:.12g}')
    click.echo('symbol (rotated frame):')
    click.echo(_matrix(report['symbol']))
    click.echo(f'eigenvalues: {_eigenvalues(report["eigenvalues"])}')
    click.echo(f'gauge-fixed eigenvalues: {_eigenvalues(report["gauge_fixed_eigenvalues"])}')
    click.echo(f'kernel dimension: {report["kernel_dim"]}')
    click.echo(f'margin: {report["margin"]:.12g}')
    click.echo(f'verdict: {report["verdict"]}')


@main.command()
@click.argument('field', type=click.Path(dir_okay=False), required=False)
@sample_option
@preset_option
@k0_option
@kind_option
@coupling_option
@click.option('--eps-par', type=float, default=EPS_PAR, show_default=True, help='Parabolicity threshold.')
@json_option
def check(field, sample, preset, k0, kind, a, eps_par, as_json):
    """Parabolicity of a metric field snapshot, or of pointwise data without FIELD."""
    flow = _flow(kind, a)
    if field is not None:
        try:
            metric_field, _ = read_snapshot(field)
        except (SnapshotError, OSError) as err:
            raise InputError(str(err)) from err
        curv = curvature(metric_field)
        report = global_parabolicity(curv.riemann, curv.ricci, metric_field.metric, flow, eps_par)
    else:
        point = _point(sample, preset, k0, None)
        report = parabolicity(point.riemann, point.g, flow, eps_par=eps_par)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(f'flow: {flow}')
        click.echo(f'margin: {report.margin:.12g}')
        click.echo(f'worst point: {report.point}')
        click.echo(f'worst plane: {None if report.plane is None else [round(float(w), 12) for w in report.plane]}')
        click.echo(f'verdict: {report.verdict.value}')
    if report.margin <= eps_par:
        raise CheckFailed(f'not parabolic: margin {report.margin:.6g} <= {eps_par:g}')


def _point_rows(cfg: RunConfig, flow: Flow, t, c, margin) -> list:
    rows = []
    for i, (ti, ci, mi) in enumerate(zip(t, c, margin)):
        dt = ti - t[i - 1] if i else 0.0
        rows.append(Diagnostics(ti, dt, mi, abs(cfg.k0) / ci, ci, flow.kind.value, flow.a))
    return rows


def _run_point(cfg: RunConfig, controls) -> dict:
    flow = cfg.flow
    out = run_constant_curvature(cfg.k0, flow, cfg.c0, cfg.t_end, cfg.dt0, controls)
    rows = _point_rows(cfg, flow, out.t, out.c, out.margin)
    return {'reason': out.reason, 't_final': out.t[-1], 'steps': len(out.t) - 1, 'rows': rows}


def _run_field(cfg: RunConfig, controls, directory: pathlib.Path) -> dict:
    flow = cfg.flow
    field = field_preset(cfg.preset, cfg.grid, cfg.amplitude, cfg.seed)
    g0 = field if cfg.background == 'initial' else MetricField.flat(cfg.grid)
    state = FlowState.initial(field, flow, g0)
    meta = {'kind': flow.kind.value, 'a': flow.a, 'seed': cfg.seed}
    write_snapshot(directory / 'snapshot_000000.json', field, 0.0, meta)

    def on_step(s: FlowState, _: Diagnostics) -> None:
        if cfg.snapshot_every and s.steps % cfg.snapshot_every == 0:
            write_snapshot(directory / f'snapshot_{s.steps:06d}.json', s.field, s.t, meta)

    result: RunResult = run(state, cfg.dt0, cfg.t_end, controls, on_step)
    write_snapshot(directory / 'final.json', result.final.field, result.final.t, meta)
    states = [state] + [s for s in result.trajectory if s is not result.final]
    if result.final is not state:
        states.append(result.final)
    write_trajectory(directory / 'trajectory.h5', states, meta)
    return {'reason': result.reason, 't_final': result.final.t, 'steps': result.final.steps, 'rows': result.diagnostics}


@main.command('run')
@click.option('--config', 'config_file', type=click.Path(dir_okay=False), default=None, help='Run configuration.')
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), default=None, help='Seed of random presets.')
@click.option('--output', type=click.Path(file_okay=False), default=None, help='Output directory.')
@click.option('--force', is_flag=True, help='Run even when the data are not parabolic.')
@json_option
def run_command(config_file, seed, output, force, as_json):
    """Integrate a gauge-fixed flow and write diagnostics, snapshots and a summary."""
    try:
        cfg = load_config(config_file).replace(seed=seed, directory=output)
    except ConfigError as err:
        raise InputError(str(err)) from err
    directory = pathlib.Path(cfg.directory)
    directory.mkdir(parents=True, exist_ok=True)
    cfg.write(directory / 'config.ini')
    controls = cfg.controls(force=force)

    start = time.perf_counter()
    try:
        if cfg.preset == 'constant-curvature':
            outcome = _run_point(cfg, controls)
        else:
            outcome = _run_field(cfg, controls, directory)
    except InitialConditionRejected as err:
        raise CheckFailed(str(err)) from err
    wall_ms = 1e3 * (time.perf_counter() - start)

    write_diagnostics(directory / 'diagnostics.csv', outcome['rows'])
    summary = {
        'stop_reason': outcome['reason'].value,
        't_final': outcome['t_final'],
        'steps': outcome['steps'],
        'wall_ms': wall_ms,
        'seed': cfg.seed,
    }
    with open(directory / 'summary.json', 'w') as f:
        json.dump(summary, f, indent=2)
    if as_json:
        click.echo(json.dumps(summary, indent=2))
    else:
        click.echo(f'{summary["stop_reason"]} at t={summary["t_final"]:.6g} after {summary["steps"]} steps')
    if outcome['reason'] is StopReason.PARABOLICITY_LOST:
        raise CheckFailed('parabolicity lost during the run')


@main.command()
@click.option('--quick', is_flag=True, help='Run the sub-second subset only.')
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), default=0, show_default=True, help='Seed of random cases.')
@click.option('--corrupt-sign', is_flag=True, hidden=True)
@json_option
def verify(quick, seed, corrupt_sign, as_json):
    """Run the self-test oracles."""
    results = run_checks(quick=quick, seed=seed, corrupt_sign=corrupt_sign)
    if as_json:
        click.echo(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        for r in results:
            status = 'PASS' if r.passed else 'FAIL'
            click.echo(f'{status}  {r.name:<26} error {r.error:.3g}  tolerance {r.tolerance:.3g}  {r.seconds:.2f}s')
            if r.detail:
                click.echo(f'      {r.detail}')
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise CheckFailed(f'{len(failed)} check(s) failed: {", ".join(failed)}')
