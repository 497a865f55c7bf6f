"""Diagnostics CSV files."""

import csv
import pathlib
from typing import Iterable, List, Union

from ..integrate.state import DIAGNOSTICS_COLUMNS, Diagnostics


def _format(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_diagnostics(file_name: Union[str, pathlib.Path], rows: Iterable[Diagnostics]) -> None:
    """Write diagnostics rows with a header; floats keep their full repr so files are reproducible."""
    with open(file_name, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(DIAGNOSTICS_COLUMNS)
        for row in rows:
            values = row.row()
            writer.writerow([_format(values[name]) for name in DIAGNOSTICS_COLUMNS])


def read_diagnostics(file_name: Union[str, pathlib.Path]) -> List[Diagnostics]:
    """Read a diagnostics CSV written by `write_diagnostics`."""
    with open(file_name, 'r', newline='') as f:
        reader = csv.DictReader(f)
        return [
            Diagnostics(
                t=float(r['t']),
                dt=float(r['dt']),
                margin=float(r['margin']),
                max_riem=float(r['max_riem']),
                min_eig_g=float(r['min_eig_g']),
                kind=r['kind'],
                a=float(r['a']),
            )
            for r in reader
        ]
