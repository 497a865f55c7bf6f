"""Fourth-order central differences on periodic grids.

    d1 f_i = (f_{i-2} - 8 f_{i-1} + 8 f_{i+1} - f_{i+2}) / (12 h)
    d2 f_i = (-f_{i-2} + 16 f_{i-1} - 30 f_i + 16 f_{i+1} - f_{i+2}) / (12 h^2)

Mixed partials are nested first derivatives. Grid axes lead; any trailing axes carry
tensor components and are left untouched.
"""

import numpy as np


def d1(f: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """First derivative along a periodic axis."""
    return (np.roll(f, 2, axis) - 8.0 * np.roll(f, 1, axis) + 8.0 * np.roll(f, -1, axis) - np.roll(f, -2, axis)) / (
        12.0 * h
    )


def d2(f: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """Second derivative along a periodic axis."""
    return (
        -np.roll(f, 2, axis) + 16.0 * np.roll(f, 1, axis) - 30.0 * f + 16.0 * np.roll(f, -1, axis) - np.roll(f, -2, axis)
    ) / (12.0 * h**2)


def gradient(f: np.ndarray, h: float, dim: int) -> np.ndarray:
    """All first partials of a field on a `dim`-dimensional grid embedded in 3 coordinates.

    Args:
        f (numpy.ndarray): values of shape grid + tail, the first `dim` axes being periodic grid axes.
        h (float): grid spacing.
        dim (int): number of grid axes; derivatives along coordinates >= dim vanish.

    Returns:
        numpy.ndarray: shape grid + (3,) + tail, derivative index right after the grid axes.
    """
    parts = [d1(f, h, c) if c < dim else np.zeros_like(f) for c in range(3)]
    return np.stack(parts, axis=dim)


def hessian(f: np.ndarray, h: float, dim: int) -> np.ndarray:
    """All second partials, shape grid + (3, 3) + tail (symmetric in the two derivative indices)."""
    out = np.zeros(f.shape[:dim] + (3, 3) + f.shape[dim:])
    for c in range(dim):
        out[(slice(None),) * dim + (c, c)] = d2(f, h, c)
        first = d1(f, h, c)
        for d in range(c + 1, dim):
            mixed = d1(first, h, d)
            out[(slice(None),) * dim + (c, d)] = mixed
            out[(slice(None),) * dim + (d, c)] = mixed
    return out


def modified_wavenumber_sq(omega: float, h: float) -> float:
    """Squared wavenumber seen by the second-derivative stencil on cos(omega x).

    Tends to omega^2 with relative error (omega h)^4 / 90.
    """
    theta = omega * h
    return -(-2.0 * np.cos(2.0 * theta) + 32.0 * np.cos(theta) - 30.0) / (12.0 * h**2)
