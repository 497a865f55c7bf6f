"""Symmetric bilinear forms on a 3-dimensional tangent space.

A form is stored by its six independent components in the order
(g11, g12, g13, g22, g23, g33), so symmetry is structural. Every function here is
batched: the components may carry any number of leading (grid) axes.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from ..errors import DefinitenessError

COMPONENT_NAMES = ('g11', 'g12', 'g13', 'g22', 'g23', 'g33')
"""tuple: names of the packed components, also the snapshot column order."""

_ROWS = np.array([0, 0, 0, 1, 1, 2])
_COLS = np.array([0, 1, 2, 1, 2, 2])
_UNPACK = np.array([[0, 1, 2], [1, 3, 4], [2, 4, 5]])


@dataclass(frozen=True, eq=False)
class SymBilinear3:
    """A (batch of) symmetric bilinear form(s) on R^3.

    Attributes:
        components (numpy.ndarray): array of shape (..., 6) in `COMPONENT_NAMES` order.
    """

    components: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.components, dtype=float)
        if c.ndim == 0 or c.shape[-1] != 6:
            raise ValueError(f'A symmetric bilinear form needs 6 components, got shape {c.shape}.')
        object.__setattr__(self, 'components', c)

    @classmethod
    def from_matrix(cls, m: npt.ArrayLike) -> 'SymBilinear3':
        """Pack a (batch of) 3x3 matrices, symmetrizing them first."""
        m = np.asarray(m, dtype=float)
        m = 0.5 * (m + np.swapaxes(m, -1, -2))
        return cls(m[..., _ROWS, _COLS])

    @classmethod
    def identity(cls, shape: Tuple[int, ...] = ()) -> 'SymBilinear3':
        """Return the Euclidean metric, broadcast to `shape`."""
        c = np.zeros(tuple(shape) + (6,))
        c[..., [0, 3, 5]] = 1.0
        return cls(c)

    @classmethod
    def diag(cls, d: npt.ArrayLike) -> 'SymBilinear3':
        """Return the diagonal form with entries `d` (shape (..., 3))."""
        d = np.asarray(d, dtype=float)
        c = np.zeros(d.shape[:-1] + (6,))
        c[..., [0, 3, 5]] = d
        return cls(c)

    @property
    def shape(self) -> Tuple[int, ...]:
        """Leading (batch) shape."""
        return self.components.shape[:-1]

    @property
    def matrix(self) -> np.ndarray:
        """Dense symmetric matrices of shape (..., 3, 3)."""
        return self.components[..., _UNPACK]

    def __getitem__(self, index) -> 'SymBilinear3':
        return SymBilinear3(self.components[index])

    def __add__(self, other: 'SymBilinear3') -> 'SymBilinear3':
        return SymBilinear3(self.components + other.components)

    def __sub__(self, other: 'SymBilinear3') -> 'SymBilinear3':
        return SymBilinear3(self.components - other.components)

    def __neg__(self) -> 'SymBilinear3':
        return SymBilinear3(-self.components)

    def __mul__(self, factor: npt.ArrayLike) -> 'SymBilinear3':
        factor = np.asarray(factor, dtype=float)
        if factor.ndim > 0:
            factor = factor[..., None]
        return SymBilinear3(self.components * factor)

    __rmul__ = __mul__

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues of every form in the batch, ascending, shape (..., 3)."""
        return np.linalg.eigvalsh(self.matrix)


def check_definite(g: SymBilinear3) -> np.ndarray:
    """Verify that every form of the batch is positive definite.

    Args:
        g (SymBilinear3): the metric(s) to verify.

    Returns:
        numpy.ndarray: smallest eigenvalue per point, shape `g.shape`.

    Raises:
        DefinitenessError: if some eigenvalue is not positive; carries that eigenvalue and its grid index.
    """
    lowest = g.eigenvalues()[..., 0]
    if not np.all(lowest > 0):
        bad = np.where(np.isnan(lowest), -np.inf, lowest)
        flat = int(np.argmin(bad))
        location = tuple(int(i) for i in np.unravel_index(flat, lowest.shape)) if lowest.ndim else None
        raise DefinitenessError(lowest.ravel()[flat], location)
    return lowest


def inverse_metric(g: SymBilinear3) -> SymBilinear3:
    """Invert a positive definite metric, giving the contravariant form g^{jk}.

    Args:
        g (SymBilinear3): covariant metric components.

    Returns:
        SymBilinear3: the inverse metric.

    Raises:
        DefinitenessError: if `g` is not positive definite.
    """
    check_definite(g)
    return SymBilinear3.from_matrix(np.linalg.inv(g.matrix))


def cofactor(g: SymBilinear3) -> np.ndarray:
    """Cofactor matrix det(g) g^{-1}, the Gram form of g on 2-vectors written as cross products."""
    m = g.matrix
    return np.linalg.det(m)[..., None, None] * np.linalg.inv(m)


def generalized_eigh(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Solve the batched symmetric-definite problem a v = lambda b v.

    Args:
        a (numpy.ndarray): symmetric matrices, shape (..., 3, 3).
        b (numpy.ndarray): positive definite matrices, shape (..., 3, 3).

    Returns:
        (tuple): tuple containing
            values (numpy.ndarray): ascending eigenvalues, shape (..., 3).
            vectors (numpy.ndarray): b-orthonormal eigenvectors as columns, shape (..., 3, 3).
    """
    low = np.linalg.cholesky(b)
    half = np.linalg.solve(low, a)
    reduced = np.linalg.solve(low, np.swapaxes(half, -1, -2))
    reduced = 0.5 * (reduced + np.swapaxes(reduced, -1, -2))
    values, vectors = np.linalg.eigh(reduced)
    return values, np.linalg.solve(np.swapaxes(low, -1, -2), vectors)
