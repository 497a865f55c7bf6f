"""Named initial data: metric fields on grids and pointwise curvature samples."""

from typing import Optional

import numpy as np

from .chart.field import GridSpec, MetricField
from .io.points import PointSample
from .tensor3 import SymBilinear3

FIELD_PRESETS = ('flat', 'flat-perturbed', 'warped')
"""tuple: presets producing metric fields on a periodic grid."""

POINT_PRESETS = ('flat', 'constant-curvature', 'mixed-sign')
"""tuple: presets producing the algebraic data of a single point."""

PERTURBATION_MODES = (3, 4)
"""tuple: Fourier modes of the random flat-torus perturbation."""

WARP = 0.1
"""float: amplitude of the warping function f = 1 + WARP sin x."""


def flat_perturbed(
    grid: GridSpec, amplitude: float = 1e-3, seed: Optional[int] = 0, modes=PERTURBATION_MODES
) -> MetricField:
    """Flat torus plus a small random smooth perturbation.

    g = I + amplitude * sum over modes m and axes x of (A cos(m x) + B sin(m x)), with A, B
    random symmetric matrices with entries in [-1, 1] drawn from `numpy.random.default_rng(seed)`.

    Args:
        grid (GridSpec): the grid.
        amplitude (float): perturbation size.
        seed (int): random seed.
        modes (tuple): integer wavenumbers.

    Returns:
        MetricField: the perturbed field.
    """
    rng = np.random.default_rng(seed)
    components = SymBilinear3.identity(grid.shape).components.copy()
    for x in grid.coordinates():
        for m in modes:
            a, b = rng.uniform(-1.0, 1.0, size=(2, 6))
            components += amplitude * (np.cos(m * x)[..., None] * a + np.sin(m * x)[..., None] * b)
    return MetricField(grid, SymBilinear3(components), 'flat-perturbed')


def warping(x: np.ndarray, eps: float = WARP):
    """Warping function f = 1 + eps sin x and its first two derivatives."""
    return 1.0 + eps * np.sin(x), eps * np.cos(x), -eps * np.sin(x)


def warped(grid: GridSpec, eps: float = WARP) -> MetricField:
    """Warped product g = dx1^2 + f(x1)^2 (dx2^2 + dx3^2) on a 1-dimensional grid."""
    if grid.dim != 1:
        raise ValueError('The warped preset lives on 1-dimensional grids.')
    (x,) = grid.coordinates()
    f, _, _ = warping(x, eps)
    return MetricField(grid, SymBilinear3.diag(np.stack([np.ones_like(x), f**2, f**2], axis=-1)), 'warped')


def warped_ricci(x: np.ndarray, eps: float = WARP) -> SymBilinear3:
    """Exact Ricci tensor of `warped`: R11 = -2 f''/f, R22 = R33 = -(f f'' + f'^2)."""
    f, df, ddf = warping(x, eps)
    fiber = -(f * ddf + df**2)
    return SymBilinear3.diag(np.stack([-2.0 * ddf / f, fiber, fiber], axis=-1))


def stretched(grid: GridSpec, eps: float = WARP) -> MetricField:
    """Metric diag(1 + eps sin x1, 1, 1), a flat metric in a non-trivial chart."""
    if grid.dim != 1:
        raise ValueError('The stretched preset lives on 1-dimensional grids.')
    (x,) = grid.coordinates()
    one = np.ones_like(x)
    return MetricField(grid, SymBilinear3.diag(np.stack([1.0 + eps * np.sin(x), one, one], axis=-1)), 'stretched')


def field_preset(name: str, grid: GridSpec, amplitude: float = 1e-3, seed: Optional[int] = 0) -> MetricField:
    """Metric field preset by name, see `FIELD_PRESETS`."""
    if name == 'flat':
        return MetricField.flat(grid)
    if name == 'flat-perturbed':
        return flat_perturbed(grid, amplitude, seed)
    if name == 'warped':
        return warped(grid)
    raise ValueError(f'Unknown field preset {name!r}, expected one of {FIELD_PRESETS}.')


def point_preset(name: str, k0: float = -1.0) -> PointSample:
    """Pointwise preset by name, see `POINT_PRESETS`, on the Euclidean metric.

    constant-curvature has sectional curvature `k0` (Ric = 2 k0 g); mixed-sign has
    Ric = diag(2, 0, 0), i.e. sectional curvatures K23 = -1 and K12 = K13 = 1.
    """
    g = SymBilinear3.identity()
    xi = np.array([1.0, 0.0, 0.0])
    if name == 'flat':
        return PointSample(g, SymBilinear3(np.zeros(6)), xi)
    if name == 'constant-curvature':
        return PointSample(g, 2.0 * float(k0) * g, xi)
    if name == 'mixed-sign':
        return PointSample(g, SymBilinear3.diag([2.0, 0.0, 0.0]), xi)
    raise ValueError(f'Unknown point preset {name!r}, expected one of {POINT_PRESETS}.')
