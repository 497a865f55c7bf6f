"""Top-level package for the integrate sub-module."""

from .ode import OdeSolution, PointRun, constant_curvature_point, ode_reference, run_constant_curvature
from .state import DIAGNOSTICS_COLUMNS, Controls, Diagnostics, FlowState, StopReason
from .stepper import RunResult, gate, monitor, rk4_step, run, stable_step, step_rk4

__all__ = [
    'DIAGNOSTICS_COLUMNS',
    'Controls',
    'Diagnostics',
    'FlowState',
    'StopReason',
    'RunResult',
    'rk4_step',
    'step_rk4',
    'monitor',
    'gate',
    'stable_step',
    'run',
    'OdeSolution',
    'PointRun',
    'ode_reference',
    'constant_curvature_point',
    'run_constant_curvature',
]
