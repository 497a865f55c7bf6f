"""Metric fields on periodic coordinate charts."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import GridMismatchError
from ..tensor3 import SymBilinear3, check_definite

MAX_N_3D = 32
"""int: default bound on the points per axis of a 3-dimensional grid."""

PERIOD = 2.0 * math.pi
"""float: period of every chart axis."""


@dataclass(frozen=True)
class GridSpec:
    """A periodic grid on [0, 2 pi)^dim.

    Attributes:
        dim (int): number of grid axes, 1 (the metric depends on x1 only) or 3.
        n (int): points per axis.
        max_n (int): upper bound on `n` for 3-dimensional grids.
    """

    dim: int
    n: int
    max_n: int = MAX_N_3D

    def __post_init__(self):
        if self.dim not in (1, 3):
            raise ValueError(f'Grid dimension must be 1 or 3, got {self.dim}.')
        if self.n < 5:
            raise ValueError(f'The five-point stencils need at least 5 points per axis, got {self.n}.')
        if self.dim == 3 and self.n > self.max_n:
            raise ValueError(f'3D grids are bounded to N<={self.max_n}, got {self.n}.')

    @property
    def spacing(self) -> float:
        """Grid spacing h = 2 pi / N."""
        return PERIOD / self.n

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.n,) * self.dim

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Coordinate arrays x1..x_dim, each of shape `shape`."""
        x = np.arange(self.n) * self.spacing
        return tuple(np.meshgrid(*([x] * self.dim), indexing='ij'))

    def to_dict(self) -> dict:
        return {'dim': self.dim, 'n': self.n, 'period': PERIOD}


@dataclass(frozen=True, eq=False)
class MetricField:
    """A positive definite metric sampled on a periodic grid.

    Attributes:
        grid (GridSpec): the grid.
        metric (SymBilinear3): per-point metric, leading shape `grid.shape`.
        chart (str): name of the chart.

    Raises:
        GridMismatchError: if the metric does not live on the grid.
        DefinitenessError: if some point is not positive definite, with its grid index.
    """

    grid: GridSpec
    metric: SymBilinear3
    chart: str = 'torus'

    def __post_init__(self):
        if self.metric.shape != self.grid.shape:
            raise GridMismatchError(f'Metric of shape {self.metric.shape} does not fit grid {self.grid.shape}.')
        if not np.all(np.isfinite(self.metric.components)):
            raise GridMismatchError('Metric field has non-finite components.')
        check_definite(self.metric)

    @classmethod
    def constant(cls, grid: GridSpec, g: SymBilinear3, chart: str = 'torus') -> 'MetricField':
        """Field equal to `g` at every point."""
        components = np.broadcast_to(g.components, grid.shape + (6,)).copy()
        return cls(grid, SymBilinear3(components), chart)

    @classmethod
    def flat(cls, grid: GridSpec) -> 'MetricField':
        """The flat torus."""
        return cls(grid, SymBilinear3.identity(grid.shape), 'flat-torus')

    def with_metric(self, metric: SymBilinear3) -> 'MetricField':
        """Same grid and chart, new metric."""
        return MetricField(self.grid, metric, self.chart)

    def check_same_grid(self, other: 'MetricField') -> None:
        """Raise `GridMismatchError` unless `other` lives on the same grid."""
        if self.grid != other.grid:
            raise GridMismatchError(f'Grids differ: {self.grid} and {other.grid}.')
