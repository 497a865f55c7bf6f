"""Top-level package for the flows sub-module."""

from .deturck import (
    DeTurckData,
    deturck,
    deturck_vector,
    deturck_vector_trace_form,
    lie_derivative_metric,
    rhs_gauge_fixed,
)
from .kinds import Flow, FlowKind
from .rhs import flow_rhs, rhs

__all__ = [
    'Flow',
    'FlowKind',
    'flow_rhs',
    'rhs',
    'DeTurckData',
    'deturck',
    'deturck_vector',
    'deturck_vector_trace_form',
    'lie_derivative_metric',
    'rhs_gauge_fixed',
]
