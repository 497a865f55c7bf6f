"""Levi-Civita connection and curvature of metric fields.

The curvature kernel works on metric jets (g, dg, ddg) with layout
dg[..., c, i, j] = d_c g_ij and ddg[..., c, d, i, j] = d_c d_d g_ij, so exact jets
(for instance of the round sphere) go through the same code as finite differences.

    R_ijkl = (g_il,jk + g_jk,il - g_ik,jl - g_jl,ik) / 2 + g_ef (G^e_jk G^f_il - G^e_jl G^f_ik)

With this sign the round sphere has R_1212 > 0.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
import numpy.typing as npt
from loguru import logger

from ..errors import SignConventionError
from ..tensor3 import Curv3, SymBilinear3, inverse_metric, ricci_from_riemann, scalar_curvature, sectional_extrema
from .field import MetricField
from .stencils import gradient, hessian

SIGN_CHECK_POINT = (0.3, -0.2, 0.1)
"""tuple: chart point of the stereographic sphere used by the sign self-check."""

SIGN_CHECK_TOL = 1e-8
"""float: tolerance on K = 1 in the sign self-check."""

_sign_checked = False


@dataclass(frozen=True, eq=False)
class CurvatureField:
    """Pointwise curvature of a metric field.

    Attributes:
        christoffel (numpy.ndarray): G^k_ij with layout [..., k, i, j].
        riemann (Curv3): curvature tensors.
        ricci (SymBilinear3): Ricci tensors.
        scalar (numpy.ndarray): scalar curvature.
        k_min (numpy.ndarray): smallest sectional curvature per point.
        k_max (numpy.ndarray): largest sectional curvature per point.
    """

    christoffel: np.ndarray
    riemann: Curv3
    ricci: SymBilinear3
    scalar: np.ndarray
    k_min: np.ndarray
    k_max: np.ndarray


def metric_jet(field: MetricField) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Metric components and their first and second partials by finite differences."""
    g = field.metric.matrix
    h, dim = field.grid.spacing, field.grid.dim
    return g, gradient(g, h, dim), hessian(g, h, dim)


def christoffel_from_jet(g: np.ndarray, dg: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Christoffel symbols of both kinds.

    Returns:
        (tuple): tuple containing
            lowered (numpy.ndarray): G_lij = (d_i g_lj + d_j g_li - d_l g_ij) / 2, layout [..., l, i, j].
            raised (numpy.ndarray): G^k_ij = g^kl G_lij, layout [..., k, i, j].
    """
    lowered = 0.5 * (
        np.einsum('...ilj->...lij', dg) + np.einsum('...jli->...lij', dg) - np.einsum('...lij->...lij', dg)
    )
    raised = np.einsum('...kl,...lij->...kij', np.linalg.inv(g), lowered)
    return lowered, raised


def curvature_from_jet(g: np.ndarray, dg: np.ndarray, ddg: np.ndarray) -> np.ndarray:
    """Dense Riemann tensor R_ijkl from a metric jet."""
    second = 0.5 * (
        np.einsum('...jkil->...ijkl', ddg)
        + np.einsum('...iljk->...ijkl', ddg)
        - np.einsum('...jlik->...ijkl', ddg)
        - np.einsum('...ikjl->...ijkl', ddg)
    )
    lowered, raised = christoffel_from_jet(g, dg)
    quadratic = np.einsum('...fjk,...fil->...ijkl', lowered, raised) - np.einsum(
        '...fjl,...fik->...ijkl', lowered, raised
    )
    return second + quadratic


def stereographic_sphere_jet(x: npt.ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact jet of the unit round sphere in stereographic coordinates, g = 4 (1 + |x|^2)^-2 delta."""
    x = np.asarray(x, dtype=float)
    q = 1.0 + x @ x
    eye = np.eye(3)
    phi = 4.0 * q**-2
    dphi = -16.0 * x * q**-3
    ddphi = -16.0 * eye * q**-3 + 96.0 * np.outer(x, x) * q**-4
    g = phi * eye
    dg = np.einsum('c,ij->cij', dphi, eye)
    ddg = np.einsum('cd,ij->cdij', ddphi, eye)
    return g, dg, ddg


def check_sign_convention(
    kernel: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray] = curvature_from_jet,
    point: npt.ArrayLike = SIGN_CHECK_POINT,
) -> Tuple[float, float]:
    """Feed the exact unit-sphere jet through a curvature kernel and require K = 1.

    Args:
        kernel (callable): curvature kernel (g, dg, ddg) -> R_ijkl.
        point (array_like): chart point of the stereographic sphere.

    Returns:
        (tuple): the sectional curvature extrema (k_min, k_max) found.

    Raises:
        SignConventionError: if the kernel does not return K = 1 within `SIGN_CHECK_TOL`.
    """
    g, dg, ddg = stereographic_sphere_jet(point)
    metric = SymBilinear3.from_matrix(g)
    k_min, k_max = sectional_extrema(Curv3.from_dense(kernel(g, dg, ddg), metric), metric)
    k_min, k_max = float(k_min), float(k_max)
    if abs(k_min - 1.0) > SIGN_CHECK_TOL or abs(k_max - 1.0) > SIGN_CHECK_TOL:
        raise SignConventionError(f'Unit sphere has sectional curvature in [{k_min:.6g}, {k_max:.6g}], expected 1.')
    return k_min, k_max


def ensure_sign_convention() -> None:
    """Run `check_sign_convention` once per process."""
    global _sign_checked
    if not _sign_checked:
        k_min, k_max = check_sign_convention()
        logger.debug('Curvature sign self-check passed: K in [{:.12f}, {:.12f}]', k_min, k_max)
        _sign_checked = True


def christoffel(field: MetricField) -> np.ndarray:
    """Christoffel symbols G^k_ij of a metric field, layout [..., k, i, j]."""
    g, dg, _ = metric_jet(field)
    return christoffel_from_jet(g, dg)[1]


def curvature(field: MetricField) -> CurvatureField:
    """Curvature of a metric field.

    Args:
        field (MetricField): positive definite metric field.

    Returns:
        CurvatureField: Christoffel symbols, Riemann, Ricci, scalar curvature and sectional extrema per point.
    """
    ensure_sign_convention()
    g, dg, ddg = metric_jet(field)
    _, raised = christoffel_from_jet(g, dg)
    riem = Curv3.from_dense(curvature_from_jet(g, dg, ddg), field.metric)
    ric = ricci_from_riemann(riem, field.metric)
    k_min, k_max = sectional_extrema(riem, field.metric)
    return CurvatureField(raised, riem, ric, scalar_curvature(ric, field.metric), k_min, k_max)


def covariant_derivative_sym2(
    field: MetricField, t: SymBilinear3, gamma: Optional[np.ndarray] = None
) -> np.ndarray:
    """Covariant derivative of a symmetric 2-tensor field with the Levi-Civita connection of `field`.

    nabla_k T_ij = d_k T_ij - G^m_ki T_mj - G^m_kj T_im

    Args:
        field (MetricField): the metric whose connection is used.
        t (SymBilinear3): tensor field on the same grid.
        gamma (numpy.ndarray): precomputed Christoffel symbols of `field`.

    Returns:
        numpy.ndarray: nabla T with layout [..., k, i, j].
    """
    if gamma is None:
        gamma = christoffel(field)
    tm = t.matrix
    dt = gradient(tm, field.grid.spacing, field.grid.dim)
    return dt - np.einsum('...mki,...mj->...kij', gamma, tm) - np.einsum('...mkj,...im->...kij', gamma, tm)


def lower_index(field: MetricField, v: np.ndarray) -> np.ndarray:
    """Covector g_kj V^j of a vector field."""
    return np.einsum('...kj,...j->...k', field.metric.matrix, v)


def raise_index(field: MetricField, w: np.ndarray) -> np.ndarray:
    """Vector g^kj w_j of a covector field."""
    return np.einsum('...kj,...j->...k', inverse_metric(field.metric).matrix, w)
