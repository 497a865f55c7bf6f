"""HDF5 trajectories: every stored state of a run in one file."""

import pathlib
from typing import Sequence, Tuple, Union

import h5py
import numpy as np

from ..chart.field import MAX_N_3D, GridSpec
from ..integrate.state import FlowState
from ..tensor3 import COMPONENT_NAMES


def write_trajectory(file_name: Union[str, pathlib.Path], states: Sequence[FlowState], meta: dict = None) -> None:
    """Write the metric components of a sequence of states on one grid.

    Layout: dataset 'time' of shape (T,), dataset 'metric' of shape (T,) + grid + (6,),
    the grid spec and `meta` as root attributes.
    """
    with h5py.File(file_name, 'w') as f:
        times = np.array([s.t for s in states], dtype=float)
        f.create_dataset('time', data=times)
        if states:
            metric = np.stack([s.field.metric.components for s in states])
            grid = states[0].field.grid
            f.attrs['dim'] = grid.dim
            f.attrs['n'] = grid.n
            f.attrs['kind'] = states[0].flow.kind.value
            f.attrs['a'] = states[0].flow.a
        else:
            metric = np.zeros((0, 6))
        f.create_dataset('metric', data=metric)
        f.attrs['components'] = ','.join(COMPONENT_NAMES)
        for key, value in (meta or {}).items():
            f.attrs[key] = value


def read_trajectory(file_name: Union[str, pathlib.Path]) -> Tuple[np.ndarray, np.ndarray, dict]:
    """Read a trajectory.

    Returns:
        (tuple): tuple containing
            time (numpy.ndarray): times, shape (T,).
            metric (numpy.ndarray): components, shape (T,) + grid + (6,).
            attrs (dict): root attributes, with a `grid` entry when the file holds states.
    """
    with h5py.File(file_name, 'r') as f:
        # read everything in as numpy.ndarray using `[()]`
        time = f['time'][()]
        metric = f['metric'][()]
        attrs = {key: (value.item() if isinstance(value, np.generic) else value) for key, value in f.attrs.items()}
    if 'dim' in attrs:
        attrs['grid'] = GridSpec(int(attrs['dim']), int(attrs['n']), max_n=max(int(attrs['n']), MAX_N_3D))
    return time, metric, attrs
