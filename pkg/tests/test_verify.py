"""Tests for the self-test suite."""

import pytest

from rgflow.verify import CHECKS, CheckResult, run_checks

QUICK = [item.name for item in CHECKS if item.quick]


def test_registry():
    """Test the check names are unique and the slow checks are marked."""
    names = [item.name for item in CHECKS]
    assert len(names) == len(set(names))
    assert set(names) - set(QUICK) == {'operator-vs-symbol', 'stability-run'}


def test_quick_suite_passes():
    """Test every quick check passes in registration order."""
    results = run_checks(quick=True)
    assert [r.name for r in results] == QUICK
    failed = [(r.name, r.error, r.detail) for r in results if not r.passed]
    assert failed == []


def test_corrupted_sign_is_caught():
    """Test the flipped curvature kernel fails the sign check and nothing else uses it."""
    results = run_checks(names=['sign-convention', 'quad-identity'], corrupt_sign=True)
    assert [(r.name, r.passed) for r in results] == [('sign-convention', False), ('quad-identity', True)]
    (again,) = run_checks(names=['sign-convention'])
    assert again.passed


def test_names_filter():
    """Test a subset of checks runs alone."""
    results = run_checks(names=['ode-agreement', 'rotation'])
    assert [r.name for r in results] == ['rotation', 'ode-agreement']


def test_seed_changes_nothing_for_deterministic_checks():
    """Test checks without random cases report the same error for any seed."""
    (first,) = run_checks(names=['ode-extinction'], seed=1)
    (second,) = run_checks(names=['ode-extinction'], seed=2)
    assert first.error == second.error


def test_check_result_dict():
    """Test the JSON form of a result."""
    result = CheckResult('rotation', True, 1e-15, 1e-12, 0.01)
    assert result.to_dict() == {
        'name': 'rotation',
        'passed': True,
        'error': 1e-15,
        'tolerance': 1e-12,
        'seconds': 0.01,
        'detail': '',
    }


@pytest.mark.slow
def test_full_suite_passes():
    """Test the full suite, including the fine-grid checks."""
    results = run_checks()
    assert len(results) == len(CHECKS)
    assert all(r.passed for r in results), [r.name for r in results if not r.passed]
