"""Point-sample files: the algebraic data of one point of a 3-manifold.

Format, one `key = value` per line, '#' starts a comment:

    g   = g11 g12 g13 g22 g23 g33      (optional, Euclidean by default)
    ric = R11 R12 R13 R22 R23 R33      (exactly one of ric and k)
    k   = sectional curvature of constant-curvature data
    xi  = xi1 xi2 xi3                  (optional, dx1 by default)
"""

import pathlib
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import PointSampleError, RGFlowError
from ..tensor3 import Curv3, SymBilinear3, check_definite, riemann_from_ricci

_SIZES = {'g': 6, 'ric': 6, 'k': 1, 'xi': 3}


@dataclass(frozen=True, eq=False)
class PointSample:
    """Metric, Ricci tensor and covector at one point."""

    g: SymBilinear3
    ric: SymBilinear3
    xi: np.ndarray

    @property
    def riemann(self) -> Curv3:
        return riemann_from_ricci(self.ric, self.g)


def parse_point_sample(text: str, source: str = '<string>') -> PointSample:
    """Parse the content of a point-sample file.

    Raises:
        PointSampleError: naming the offending line or field.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise PointSampleError(f'{source}: line {lineno}: expected "key = values", got {raw.strip()!r}.')
        key, _, rest = (part.strip() for part in line.partition('='))
        key = key.lower()
        if key not in _SIZES:
            raise PointSampleError(f'{source}: line {lineno}: unknown field {key!r}.')
        if key in values:
            raise PointSampleError(f'{source}: line {lineno}: field {key!r} given twice.')
        try:
            numbers = [float(tok) for tok in rest.replace(',', ' ').split()]
        except ValueError as err:
            raise PointSampleError(f'{source}: line {lineno}: field {key!r}: {err}') from err
        if len(numbers) != _SIZES[key] or not np.all(np.isfinite(numbers)):
            raise PointSampleError(
                f'{source}: line {lineno}: field {key!r} needs {_SIZES[key]} finite numbers, got {len(numbers)}.'
            )
        values[key] = np.array(numbers)

    if ('ric' in values) == ('k' in values):
        raise PointSampleError(f'{source}: exactly one of the fields "ric" and "k" is required.')
    g = SymBilinear3(values['g']) if 'g' in values else SymBilinear3.identity()
    try:
        check_definite(g)
    except RGFlowError as err:
        raise PointSampleError(f'{source}: field "g": {err}') from err
    ric = SymBilinear3(values['ric']) if 'ric' in values else 2.0 * float(values['k'][0]) * g
    xi = values.get('xi', np.array([1.0, 0.0, 0.0]))
    if not np.any(xi):
        raise PointSampleError(f'{source}: field "xi": covector must be non-zero.')
    return PointSample(g, ric, xi)


def read_point_sample(file_name: Union[str, pathlib.Path]) -> PointSample:
    """Read a point-sample file."""
    with open(file_name, 'r') as f:
        return parse_point_sample(f.read(), str(file_name))
