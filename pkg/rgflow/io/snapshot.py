"""JSON snapshots of metric fields.

A snapshot stores the grid spec, the chart name, optional time and metadata, and one
row-major array per component in the order (g11, g12, g13, g22, g23, g33).
"""

import json
import math
import pathlib
from typing import Optional, Tuple, Union

import numpy as np

from ..chart.field import MAX_N_3D, GridSpec, MetricField
from ..errors import RGFlowError, SnapshotError
from ..tensor3 import COMPONENT_NAMES, SymBilinear3

SNAPSHOT_FORMAT = 'rgflow-metric-field/1'
"""str: format tag written into every snapshot."""


def snapshot_dict(field: MetricField, t: Optional[float] = None, meta: Optional[dict] = None) -> dict:
    """JSON-ready view of a metric field."""
    return {
        'format': SNAPSHOT_FORMAT,
        'grid': field.grid.to_dict(),
        'chart': field.chart,
        't': t,
        'meta': meta or {},
        'components': list(COMPONENT_NAMES),
        'data': {name: field.metric.components[..., i].ravel().tolist() for i, name in enumerate(COMPONENT_NAMES)},
    }


def write_snapshot(
    file_name: Union[str, pathlib.Path], field: MetricField, t: Optional[float] = None, meta: Optional[dict] = None
) -> None:
    """Write a metric field to a JSON snapshot.

    Args:
        file_name (str): output path.
        field (MetricField): the field.
        t (float): flow time of the field, if any.
        meta (dict): extra JSON-serializable metadata (seed, flow, ...).
    """
    with open(file_name, 'w') as f:
        json.dump(snapshot_dict(field, t, meta), f)


def field_from_dict(doc: dict) -> Tuple[MetricField, dict]:
    """Rebuild a metric field from a snapshot document.

    Returns:
        (tuple): tuple containing
            field (MetricField): the field.
            info (dict): the remaining entries (t, meta, chart).

    Raises:
        SnapshotError: if the document is malformed.
    """
    try:
        grid_doc = doc['grid']
        grid = GridSpec(int(grid_doc['dim']), int(grid_doc['n']), max_n=max(int(grid_doc['n']), MAX_N_3D))
        if not math.isclose(float(grid_doc.get('period', 2 * math.pi)), 2 * math.pi):
            raise SnapshotError(f'Unsupported period {grid_doc["period"]}.')
        names = doc.get('components', list(COMPONENT_NAMES))
        if list(names) != list(COMPONENT_NAMES):
            raise SnapshotError(f'Component order must be {list(COMPONENT_NAMES)}, got {names}.')
        data = doc['data']
        components = np.stack(
            [np.asarray(data[name], dtype=float).reshape(grid.shape) for name in COMPONENT_NAMES], axis=-1
        )
        field = MetricField(grid, SymBilinear3(components), str(doc.get('chart', 'torus')))
    except SnapshotError:
        raise
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, RGFlowError) and not isinstance(err, SnapshotError):
            raise SnapshotError(f'Invalid metric field: {err}') from err
        raise SnapshotError(f'Malformed snapshot: {err!r}') from err
    return field, {'t': doc.get('t'), 'meta': doc.get('meta', {}), 'chart': field.chart}


def read_snapshot(file_name: Union[str, pathlib.Path]) -> Tuple[MetricField, dict]:
    """Read a metric field from a JSON snapshot.

    Args:
        file_name (str): snapshot path.

    Returns:
        (tuple): the field and the snapshot info (t, meta, chart).

    Raises:
        SnapshotError: if the file is not a valid snapshot.
    """
    try:
        with open(file_name, 'r') as f:
            doc = json.load(f)
    except json.JSONDecodeError as err:
        raise SnapshotError(f'{file_name}: line {err.lineno}: {err.msg}') from err
    if not isinstance(doc, dict):
        raise SnapshotError(f'{file_name}: expected a JSON object.')
    return field_from_dict(doc)
