"""Top-level package for the io sub-module."""

from .diagnostics import read_diagnostics, write_diagnostics
from .points import PointSample, parse_point_sample, read_point_sample
from .snapshot import field_from_dict, read_snapshot, snapshot_dict, write_snapshot
from .trajectory import read_trajectory, write_trajectory

__all__ = [
    'write_snapshot',
    'read_snapshot',
    'snapshot_dict',
    'field_from_dict',
    'write_diagnostics',
    'read_diagnostics',
    'write_trajectory',
    'read_trajectory',
    'PointSample',
    'parse_point_sample',
    'read_point_sample',
]
