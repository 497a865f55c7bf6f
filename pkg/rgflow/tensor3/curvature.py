"""Algebraic curvature tensors in dimension three.

In 3D an algebraic curvature tensor is the same thing as a symmetric operator on
2-vectors. `Curv3` stores that operator in the coordinate 2-vector basis
{e2^e3, e3^e1, e1^e2}, i.e. M_AB = R(P_A, P_B). The dense R_ijkl is then
eps_Aij eps_Bkl M_AB, so antisymmetry, pair symmetry and the first Bianchi identity
hold by construction, and R(X, Y, X, Y) = w^T M w with w = X x Y.

Sign convention: R_1212 = K, so the unit round sphere has K = +1 and the Ricci
tensor R_ik = g^{jl} R_ijkl of the sphere is 2g.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from ..errors import DegeneratePlaneError
from .forms import SymBilinear3, cofactor, generalized_eigh, inverse_metric

LEVI_CIVITA = np.zeros((3, 3, 3))
"""numpy.ndarray: the permutation symbol eps_ijk."""
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0

_FIRST = np.array([1, 2, 0])
_SECOND = np.array([2, 0, 1])

DEGENERACY_TOL = 1e-14
"""float: relative tolerance under which a plane is considered degenerate."""


@dataclass(frozen=True, eq=False)
class Curv3:
    """An (batch of) algebraic curvature tensor(s) at a point of a 3-manifold.

    Attributes:
        operator (numpy.ndarray): symmetric matrices M_AB of shape (..., 3, 3) in the coordinate 2-vector basis.
        metric (SymBilinear3): the metric the tensor lives with.
    """

    operator: np.ndarray
    metric: SymBilinear3

    def __post_init__(self):
        m = np.asarray(self.operator, dtype=float)
        object.__setattr__(self, 'operator', 0.5 * (m + np.swapaxes(m, -1, -2)))

    @classmethod
    def from_dense(cls, riem: np.ndarray, metric: SymBilinear3) -> 'Curv3':
        """Build from dense components R_ijkl of shape (..., 3, 3, 3, 3)."""
        riem = np.asarray(riem, dtype=float)
        m = riem[..., _FIRST[:, None], _SECOND[:, None], _FIRST[None, :], _SECOND[None, :]]
        return cls(m, metric)

    @property
    def shape(self) -> Tuple[int, ...]:
        """Leading (batch) shape."""
        return self.operator.shape[:-2]

    def __getitem__(self, index) -> 'Curv3':
        return Curv3(self.operator[index], self.metric[index])

    def dense(self) -> np.ndarray:
        """Dense components R_ijkl, shape (..., 3, 3, 3, 3)."""
        return np.einsum('aij,bkl,...ab->...ijkl', LEVI_CIVITA, LEVI_CIVITA, self.operator)

    def in_frame(self, vectors: np.ndarray) -> 'Curv3':
        """Components with respect to an orthonormal frame.

        Args:
            vectors (numpy.ndarray): frame vectors as rows, shape (3, 3).

        Returns:
            Curv3: the tensor in the frame (its metric is the identity).
        """
        bivectors = np.cross(vectors[_FIRST], vectors[_SECOND])
        m = np.einsum('Ai,...ij,Bj->...AB', bivectors, self.operator, bivectors)
        return Curv3(m, SymBilinear3.identity(self.shape))


def kulkarni_nomizu(p: SymBilinear3, q: SymBilinear3) -> np.ndarray:
    """Kulkarni-Nomizu product of two symmetric bilinear forms.

    (p ^ q)_ijkl = p_ik q_jl + p_jl q_ik - p_il q_jk - p_jk q_il

    Args:
        p (SymBilinear3): first form.
        q (SymBilinear3): second form.

    Returns:
        numpy.ndarray: dense 4-tensor of shape (..., 3, 3, 3, 3).
    """
    a = p.matrix
    b = q.matrix
    return (
        np.einsum('...ik,...jl->...ijkl', a, b)
        + np.einsum('...jl,...ik->...ijkl', a, b)
        - np.einsum('...il,...jk->...ijkl', a, b)
        - np.einsum('...jk,...il->...ijkl', a, b)
    )


def scalar_curvature(ric: SymBilinear3, g: SymBilinear3) -> np.ndarray:
    """Trace of the Ricci tensor with respect to g."""
    return np.einsum('...ij,...ij->...', inverse_metric(g).matrix, ric.matrix)


def riemann_from_ricci(ric: SymBilinear3, g: SymBilinear3) -> Curv3:
    """Rebuild the Riemann tensor from the Ricci tensor (the Weyl tensor vanishes in 3D).

    R_ijkl = (Ric ^ g)_ijkl - R/4 (g ^ g)_ijkl

    Args:
        ric (SymBilinear3): Ricci tensor.
        g (SymBilinear3): metric.

    Returns:
        Curv3: the curvature tensor.
    """
    r = scalar_curvature(ric, g)
    dense = kulkarni_nomizu(ric, g) - 0.25 * r[..., None, None, None, None] * kulkarni_nomizu(g, g)
    return Curv3.from_dense(dense, g)


def ricci_from_riemann(riem: Curv3, g: SymBilinear3) -> SymBilinear3:
    """Trace R_ik = g^{jl} R_ijkl."""
    gi = inverse_metric(g).matrix
    return SymBilinear3.from_matrix(np.einsum('...jl,...ijkl->...ik', gi, riem.dense()))


def sectional(riem: Curv3, g: SymBilinear3, x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    """Sectional curvature K(X, Y) of the plane spanned by X and Y.

    Args:
        riem (Curv3): curvature tensor at a single point.
        g (SymBilinear3): metric at that point.
        x (array_like): first vector, chart components.
        y (array_like): second vector, chart components.

    Returns:
        float: Riem(X, Y, X, Y) / (g(X, X) g(Y, Y) - g(X, Y)^2).

    Raises:
        DegeneratePlaneError: if X and Y are numerically dependent.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = g.matrix
    gram = (x @ m @ x) * (y @ m @ y) - (x @ m @ y) ** 2
    if gram <= DEGENERACY_TOL * (x @ x) * (y @ y):
        raise DegeneratePlaneError(f'Vectors {x} and {y} do not span a plane.')
    w = np.cross(x, y)
    return float(w @ riem.operator @ w / gram)


def curvature_operator_spectrum(riem: Curv3, g: SymBilinear3) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of the curvature operator in a g-orthonormal 2-vector basis.

    In 3D every 2-vector is decomposable, so the eigenvalues are exactly the
    critical values of the sectional curvature and the extreme ones bound K sharply.

    Returns:
        (tuple): tuple containing
            values (numpy.ndarray): ascending eigenvalues, shape (..., 3).
            planes (numpy.ndarray): matching 2-vectors (cross-product components) as columns, shape (..., 3, 3).
    """
    return generalized_eigh(riem.operator, cofactor(g))


def sectional_extrema(riem: Curv3, g: SymBilinear3) -> Tuple[np.ndarray, np.ndarray]:
    """Smallest and largest sectional curvature over all planes.

    Returns:
        (tuple): tuple containing
            k_min (numpy.ndarray): minimum sectional curvature per point.
            k_max (numpy.ndarray): maximum sectional curvature per point.
    """
    values, _ = curvature_operator_spectrum(riem, g)
    return values[..., 0], values[..., -1]


def operator_norm(riem: Curv3, g: SymBilinear3) -> np.ndarray:
    """Operator norm |Riem| of the curvature operator, max(|K_min|, |K_max|)."""
    values, _ = curvature_operator_spectrum(riem, g)
    return np.max(np.abs(values), axis=-1)


def ricci_square(ric: SymBilinear3, g: SymBilinear3) -> SymBilinear3:
    """Ric^2_ik = R_ij R_lk g^{jl}."""
    gi = inverse_metric(g).matrix
    r = ric.matrix
    return SymBilinear3.from_matrix(np.einsum('...ij,...jl,...lk->...ik', r, gi, r))


def quad_contraction(riem: Curv3, g: SymBilinear3) -> SymBilinear3:
    """Quadratic curvature term R_ijlm R_kstu g^{js} g^{lt} g^{mu} by full contraction."""
    gi = inverse_metric(g).matrix
    dense = riem.dense()
    raised = np.einsum('...ijlm,...js,...lt,...mu->...istu', dense, gi, gi, gi, optimize=True)
    return SymBilinear3.from_matrix(np.einsum('...istu,...kstu->...ik', raised, dense))


def quad_via_ricci(ric: SymBilinear3, g: SymBilinear3) -> SymBilinear3:
    """The same quadratic term written with the Ricci tensor, valid in 3D only.

    2 R R_ik - 2 R^2_ik + 2 |Ric|^2 g_ik - R^2 g_ik
    """
    gi = inverse_metric(g).matrix
    r = ric.matrix
    scalar = np.einsum('...ij,...ij->...', gi, r)
    square = np.einsum('...ij,...jl,...lk->...ik', r, gi, r)
    norm2 = np.einsum('...ik,...ki->...', np.einsum('...ij,...jk->...ik', gi, r), np.einsum('...ij,...jk->...ik', gi, r))
    coeff = (2.0 * norm2 - scalar**2)[..., None, None]
    return SymBilinear3.from_matrix(2.0 * scalar[..., None, None] * r - 2.0 * square + coeff * g.matrix)


def constant_curvature(k: float, g: SymBilinear3) -> Curv3:
    """Curvature tensor of constant sectional curvature k, (k/2) g ^ g."""
    return Curv3.from_dense(0.5 * k * kulkarni_nomizu(g, g), g)
