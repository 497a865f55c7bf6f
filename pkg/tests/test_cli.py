"""Tests for the command line interface."""

import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner
from loguru import logger

import rgflow
from rgflow import __version__, cli
from rgflow.chart import GridSpec
from rgflow.io import read_diagnostics, read_trajectory, write_snapshot
from rgflow.presets import flat_perturbed

FIELD_RUN = """
[geometry]
preset = flat-perturbed
n = 32

[time]
t_end = 0.01

[output]
snapshot_every = 5
"""

POINT_RUN = """
[flow]
a = {a}

[geometry]
preset = constant-curvature
k0 = -1

[time]
t_end = 0.05
"""


@pytest.fixture(autouse=True)
def _reset_logging():
    yield
    logger.remove()
    logger.disable('rgflow')


def _invoke(*args):
    return CliRunner().invoke(cli.main, [str(a) for a in args])


def _json(result):
    return json.JSONDecoder().raw_decode(result.output.lstrip())[0]


def test_version():
    """Test the version option."""
    result = _invoke('--version')
    assert result.exit_code == 0
    assert __version__ in result.output


def test_package_metadata():
    """Test the package metadata matches pyproject.toml."""
    toml = pytest.importorskip('toml')
    project = toml.load(Path(__file__).parents[1] / 'pyproject.toml')['tool']['poetry']
    assert project['version'] == __version__
    assert project['authors'] == [f'{rgflow.__author__} <{rgflow.__email__}>']


def test_symbol_flat_json():
    """Test the symbol of flat data."""
    result = _invoke('symbol', '--preset', 'flat', '--json')
    assert result.exit_code == 0
    report = _json(result)
    assert report['verdict'] == 'weakly-elliptic-with-gauge-kernel'
    assert report['kernel_dim'] == 3
    assert report['coordinates'] == ['h11', 'h12', 'h13', 'h22', 'h33', 'h23']
    assert np.allclose(report['symbol'], report['symbol_unrotated'])


def test_symbol_text():
    """Test the human-readable symbol output."""
    result = _invoke('symbol', '--preset', 'constant-curvature', '--k0', '-1', '--a', '0.4', '--xi', '0', '1', '0')
    assert result.exit_code == 0
    assert 'covector: [0.0, 1.0, 0.0]' in result.output
    assert 'symbol (unrotated frame):' in result.output
    assert 'margin: 0.2' in result.output
    assert 'verdict: weakly-elliptic-with-gauge-kernel' in result.output


def test_symbol_sample_file(tmp_path):
    """Test a point-sample file with R22 = 5, R33 = 1, R23 = 2."""
    (tmp_path / 'p.txt').write_text('ric = 0 0 0 5 2 1\nxi = 1 0 0\n')
    result = _invoke('symbol', '--sample', tmp_path / 'p.txt', '--a', '0.1', '--json')
    assert result.exit_code == 0
    assert _json(result)['alpha'] == pytest.approx(np.pi / 8)


@pytest.mark.parametrize(
    'args',
    [
        ('--xi', '0', '0', '0'),
        ('--kind', 'ricci', '--a', '0.1'),
        ('--kind', 'heat'),
        ('--sample', 'missing.txt'),
    ],
)
def test_symbol_bad_input(args):
    """Test malformed input exits with code 2."""
    result = _invoke('symbol', *args)
    assert result.exit_code == 2


def test_symbol_bad_sample(tmp_path):
    """Test the sample parse error is reported with its line."""
    (tmp_path / 'p.txt').write_text('k = 1\nzeta = 2\n')
    result = _invoke('symbol', '--sample', tmp_path / 'p.txt')
    assert result.exit_code == 2
    assert 'line 2' in result.output


@pytest.mark.parametrize('a, code', [(0.4, 0), (0.6, 1)])
def test_check_point(a, code):
    """Test the pointwise check on constant curvature -1."""
    result = _invoke('check', '--preset', 'constant-curvature', '--k0', '-1', '--a', a, '--json')
    assert result.exit_code == code
    assert _json(result)['margin'] == pytest.approx(1.0 - 2.0 * a)


def test_check_mixed_sign_rg2zero():
    """Test RG2zero fails on mixed-sign curvature for either sign of a."""
    for a in ('0.4', '-0.4'):
        result = _invoke('check', '--preset', 'mixed-sign', '--kind', 'rg2zero', '--a', a)
        assert result.exit_code == 1
        assert 'verdict: not-elliptic' in result.output


def test_check_field(tmp_path):
    """Test the check of a snapshot with RG2 and RG2zero."""
    write_snapshot(tmp_path / 'g.json', flat_perturbed(GridSpec(1, 32), seed=3))
    result = _invoke('check', tmp_path / 'g.json')
    assert result.exit_code == 0
    assert 'verdict: strongly-elliptic' in result.output
    result = _invoke('check', tmp_path / 'g.json', '--kind', 'rg2zero', '--a', '0.1', '--json')
    assert result.exit_code == 1
    report = _json(result)
    assert report['margin'] < 0.0
    assert len(report['point']) == 1


def test_check_bad_snapshot(tmp_path):
    """Test a malformed snapshot exits with code 2."""
    (tmp_path / 'g.json').write_text('{"grid": {"dim": 1, "n": 8}}')
    assert _invoke('check', tmp_path / 'g.json').exit_code == 2


def test_run_field(tmp_path):
    """Test a short field run and its output files."""
    (tmp_path / 'run.ini').write_text(FIELD_RUN)
    out = tmp_path / 'out'
    result = _invoke('run', '--config', tmp_path / 'run.ini', '--output', out, '--seed', '5', '--json')
    assert result.exit_code == 0
    summary = _json(result)
    assert summary['stop_reason'] == 't_end'
    assert summary['t_final'] == pytest.approx(0.01)
    assert summary['seed'] == 5
    assert json.loads((out / 'summary.json').read_text()) == summary
    assert 'seed = 5' in (out / 'config.ini').read_text()
    for name in ('snapshot_000000.json', 'snapshot_000005.json', 'snapshot_000010.json', 'final.json'):
        assert (out / name).exists()
    rows = read_diagnostics(out / 'diagnostics.csv')
    assert len(rows) == summary['steps'] + 1
    time, metric, attrs = read_trajectory(out / 'trajectory.h5')
    assert time[0] == 0.0
    assert metric.shape[1:] == (32, 6)
    assert attrs['seed'] == 5


def test_run_is_reproducible(tmp_path):
    """Test two runs from the same configuration write identical diagnostics."""
    (tmp_path / 'run.ini').write_text(FIELD_RUN)
    for name in ('first', 'second'):
        assert _invoke('run', '--config', tmp_path / 'run.ini', '--output', tmp_path / name).exit_code == 0
    first = (tmp_path / 'first' / 'diagnostics.csv').read_text()
    assert first == (tmp_path / 'second' / 'diagnostics.csv').read_text()
    rerun = _invoke('run', '--config', tmp_path / 'first' / 'config.ini', '--output', tmp_path / 'third')
    assert rerun.exit_code == 0
    assert first == (tmp_path / 'third' / 'diagnostics.csv').read_text()


def test_run_point(tmp_path):
    """Test a constant-curvature run writes diagnostics of c(t)."""
    (tmp_path / 'run.ini').write_text(POINT_RUN.format(a=0.4))
    out = tmp_path / 'out'
    result = _invoke('run', '--config', tmp_path / 'run.ini', '--output', out)
    assert result.exit_code == 0
    assert 't_end' in result.output
    rows = read_diagnostics(out / 'diagnostics.csv')
    assert rows[0].margin == pytest.approx(0.2)
    assert rows[-1].min_eig_g > 1.0
    assert not (out / 'trajectory.h5').exists()


def test_run_point_rejected(tmp_path):
    """Test a non-parabolic start exits with code 1 unless forced."""
    (tmp_path / 'run.ini').write_text(POINT_RUN.format(a=0.6))
    result = _invoke('run', '--config', tmp_path / 'run.ini', '--output', tmp_path / 'out')
    assert result.exit_code == 1
    assert 'margin -0.2' in result.output
    forced = _invoke('run', '--config', tmp_path / 'run.ini', '--output', tmp_path / 'forced', '--force')
    assert forced.exit_code == 0


def test_run_field_rejected(tmp_path):
    """Test RG2zero on a perturbed torus is refused."""
    (tmp_path / 'run.ini').write_text(FIELD_RUN + '\n[flow]\nkind = rg2zero\na = 0.1\n')
    assert _invoke('run', '--config', tmp_path / 'run.ini', '--output', tmp_path / 'out').exit_code == 1


@pytest.mark.parametrize('text', ['[geometry]\npreset = sample\n', '[flow]\nstrength = 1\n'])
def test_run_bad_config(tmp_path, text):
    """Test unusable configurations exit with code 2."""
    (tmp_path / 'run.ini').write_text(text)
    assert _invoke('run', '--config', tmp_path / 'run.ini', '--output', tmp_path / 'out').exit_code == 2


def test_verify_quick():
    """Test the quick self-test suite passes."""
    result = _invoke('verify', '--quick', '--json')
    assert result.exit_code == 0
    results = _json(result)
    assert all(r['passed'] for r in results)
    assert 'sign-convention' in [r['name'] for r in results]


def test_verify_corrupt_sign():
    """Test the flipped curvature sign is caught."""
    result = _invoke('verify', '--quick', '--corrupt-sign')
    assert result.exit_code == 1
    assert 'FAIL  sign-convention' in result.output
