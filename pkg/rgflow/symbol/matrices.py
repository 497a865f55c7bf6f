"""Principal symbols of the linearized flow operators in dimension three.

All matrices act on the coordinates (h11, h12, h13, h22, h33, h23) of a symmetric
2-tensor h, written in an orthonormal frame {e1, e2, e3} with the covector xi = g(e1, .)
of unit length. Column j is the image of the j-th unit coordinate vector, where the unit
vector of an off-diagonal coordinate stands for the symmetric tensor with h_ik = h_ki = 1.

Positivity (not negativity) of the eigenvalues is the ellipticity criterion: with this
normalization the symbol of -2 Ric is the non-negative matrix obtained for a = 0.
"""

from typing import Optional

import numpy as np
import numpy.typing as npt

from ..errors import FrameNotDiagonalizedError, FrameNotRotatedError
from ..flows.kinds import Flow, FlowKind
from ..tensor3 import Curv3, SymBilinear3

H_INDEX = ((0, 0), (0, 1), (0, 2), (1, 1), (2, 2), (1, 2))
"""tuple: (row, column) of each Symbol6 coordinate."""

H_NAMES = ('h11', 'h12', 'h13', 'h22', 'h33', 'h23')
"""tuple: names of the Symbol6 coordinates."""

ROTATION_TOL = 1e-10
"""float: largest |R_23| accepted as zero in a rotated frame."""

_H_ROWS = np.array([i for i, _ in H_INDEX])
_H_COLS = np.array([k for _, k in H_INDEX])


def h_vector(h: npt.ArrayLike) -> np.ndarray:
    """Symbol6 coordinates of a symmetric 3x3 matrix."""
    h = np.asarray(h, dtype=float)
    return h[..., _H_ROWS, _H_COLS]


def h_matrix(v: npt.ArrayLike) -> np.ndarray:
    """Symmetric 3x3 matrix with Symbol6 coordinates `v`."""
    v = np.asarray(v, dtype=float)
    h = np.zeros(v.shape[:-1] + (3, 3))
    h[..., _H_ROWS, _H_COLS] = v
    h[..., _H_COLS, _H_ROWS] = v
    return h


def gauge_direction(nu: npt.ArrayLike) -> np.ndarray:
    """Symbol6 coordinates of xi (x) nu + nu (x) xi with xi = e1^flat."""
    xi = np.array([1.0, 0.0, 0.0])
    nu = np.asarray(nu, dtype=float)
    return h_vector(np.outer(xi, nu) + np.outer(nu, xi))


def _ricci_entries(ric: SymBilinear3):
    r = ric.matrix
    return r, float(np.trace(r))


def symbol_L(ric: SymBilinear3, a: float) -> np.ndarray:
    """Symbol of the linearized RG2 operator, written with the Ricci tensor.

    Args:
        ric (SymBilinear3): Ricci tensor in an orthonormal frame {e1, e'2, e'3} with R'23 = 0.
        a (float): coupling constant.

    Returns:
        numpy.ndarray: the 6x6 symbol; its first three columns vanish.

    Raises:
        FrameNotRotatedError: if |R23| exceeds `ROTATION_TOL`.
    """
    r, scalar = _ricci_entries(ric)
    if abs(r[1, 2]) > ROTATION_TOL:
        raise FrameNotRotatedError(f'Frame has R23={r[1, 2]:.3g}; rotate it first.')
    return _symbol_ricci_form(r, scalar, a)


def _symbol_ricci_form(r: np.ndarray, scalar: float, a: float) -> np.ndarray:
    s = np.zeros((6, 6))
    d22 = 1.0 + a * (scalar - 2.0 * r[2, 2])
    d33 = 1.0 + a * (scalar - 2.0 * r[1, 1])
    s[0, 3:] = d22, d33, 4.0 * a * r[1, 2]
    s[1, 3:] = 0.0, a * r[0, 1], -a * r[0, 2]
    s[2, 3:] = a * r[0, 2], 0.0, -a * r[0, 1]
    s[3, 3:] = d22, 0.0, 2.0 * a * r[1, 2]
    s[4, 3:] = 0.0, d33, 2.0 * a * r[1, 2]
    s[5, 3:] = a * r[1, 2], a * r[1, 2], 1.0 + a * r[0, 0]
    return s


def symbol_L_unrotated(riem: Curv3, a: float) -> np.ndarray:
    """Symbol of the linearized RG2 operator from frame components of the curvature tensor.

    Args:
        riem (Curv3): curvature tensor in an orthonormal frame whose first vector is dual to xi.
        a (float): coupling constant.

    Returns:
        numpy.ndarray: the 6x6 symbol.
    """
    r = riem.dense()
    r1212, r1313, r1213 = r[0, 1, 0, 1], r[0, 2, 0, 2], r[0, 1, 0, 2]
    s = np.zeros((6, 6))
    s[0, 3:] = 1.0 + 2.0 * a * r1212, 1.0 + 2.0 * a * r1313, 4.0 * a * r1213
    s[1, 3:] = 0.0, a * r[0, 2, 1, 2], a * r[0, 1, 1, 2]
    s[2, 3:] = a * r[0, 1, 2, 1], 0.0, a * r[0, 2, 2, 1]
    s[3, 3:] = 1.0 + 2.0 * a * r1212, 0.0, 2.0 * a * r1213
    s[4, 3:] = 0.0, 1.0 + 2.0 * a * r1313, 2.0 * a * r1213
    s[5, 3:] = a * r1213, a * r1213, 1.0 + a * r1212 + a * r1313
    return s


def symbol_general(riem: Curv3, a: float) -> np.ndarray:
    """Symbol of the linearized RG2 operator from its dimension-free componentwise formula.

    sigma(h)_ik = h_ik + d_i1 d_k1 tr(h) - d_i1 h_1k - d_k1 h_i1
                  + a R_ks1u d_i1 h_su - a R_k11u h_iu + a R_is1u d_k1 h_su - a R_i11u h_ku

    Args:
        riem (Curv3): curvature tensor in an orthonormal frame whose first vector is dual to xi.
        a (float): coupling constant.

    Returns:
        numpy.ndarray: the 6x6 symbol, built column by column from unit tensors h.
    """
    r = riem.dense()
    e1 = np.array([1.0, 0.0, 0.0])
    d11 = np.outer(e1, e1)
    s = np.zeros((6, 6))
    for j in range(6):
        h = h_matrix(np.eye(6)[j])
        sigma = h + d11 * np.trace(h) - np.outer(e1, h[0]) - np.outer(h[0], e1)
        curv = np.einsum('ksu,su->k', r[:, :, 0, :], h)
        drift = np.einsum('ku,iu->ik', r[:, 0, 0, :], h)
        sigma = sigma + a * (np.outer(e1, curv) + np.outer(curv, e1) - drift - drift.T)
        s[:, j] = h_vector(sigma)
    return s


def symbol_eigen(beta: float, gamma: float, a: float):
    """Closed-form non-zero eigenvalues of the RG2 symbol.

    Args:
        beta (float): sectional curvature K(e1, e3).
        gamma (float): sectional curvature K(e1, e2).
        a (float): coupling constant.

    Returns:
        (tuple): (1 + 2 a gamma, 1 + 2 a beta, 1 + a (beta + gamma)).
    """
    return 1.0 + 2.0 * a * gamma, 1.0 + 2.0 * a * beta, 1.0 + a * (beta + gamma)


def plane_curvatures(ric: SymBilinear3):
    """Sectional curvatures (beta, gamma) = (K(e1, e3), K(e1, e2)) recovered from frame Ricci components."""
    r = ric.matrix
    beta = 0.5 * (r[0, 0] + r[2, 2] - r[1, 1])
    gamma = 0.5 * (r[0, 0] + r[1, 1] - r[2, 2])
    return float(beta), float(gamma)


def symbol_deturck_lie() -> np.ndarray:
    """Symbol of the linearized Lie derivative along the DeTurck vector field at g = g0."""
    s = np.zeros((6, 6))
    s[:3, :3] = -np.eye(3)
    s[0, 3] = s[0, 4] = 1.0
    return s


def symbol_H(ric: SymBilinear3, a: Optional[float] = None) -> np.ndarray:
    """Symbol of the linearized squared-Ricci operator H(g)_ik = R_ij R_k^j.

    sigma(DH)(h) = S(h) Ric + Ric S(h) with
    S(h)_ij = -(h_ij + d_1i d_1j tr(h) - d_1i h_1j - d_1j h_1i) / 2.
    In any dimension the matrix is upper triangular in the coordinates
    (h11, h1k, hkk, hik) once Ric is diagonal on the complement of e1, with diagonal
    (0, ..., 0, -R_kk, -(R_ii + R_kk)/2).

    Args:
        ric (SymBilinear3): Ricci tensor in an orthonormal frame diagonalizing Ric on e1^perp.
        a (float): if given, return the symbol of the flow term -a H instead.

    Returns:
        numpy.ndarray: the 6x6 symbol.

    Raises:
        FrameNotDiagonalizedError: if |R23| exceeds `ROTATION_TOL`.
    """
    r = ric.matrix
    if abs(r[1, 2]) > ROTATION_TOL:
        raise FrameNotDiagonalizedError(f'Ricci tensor has R23={r[1, 2]:.3g} on the complement of e1.')
    e1 = np.array([1.0, 0.0, 0.0])
    s = np.zeros((6, 6))
    for j in range(6):
        h = h_matrix(np.eye(6)[j])
        half = -0.5 * (h + np.outer(e1, e1) * np.trace(h) - np.outer(e1, h[0]) - np.outer(h[0], e1))
        s[:, j] = h_vector(half @ r + r @ half)
    if a is not None:
        s = -a * s
    return s


def symbol_flow(flow: Flow, ric: SymBilinear3) -> np.ndarray:
    """Ungauged symbol of any flow kind in a rotated frame.

    Args:
        flow (Flow): flow kind and coupling.
        ric (SymBilinear3): Ricci tensor in a frame {e1, e'2, e'3} with R'23 = 0.

    Returns:
        numpy.ndarray: the 6x6 symbol.
    """
    kind, a = flow.kind, flow.a
    if kind is FlowKind.RICCI:
        return symbol_L(ric, 0.0)
    if kind is FlowKind.RG2:
        return symbol_L(ric, a)
    if kind is FlowKind.RG2ZERO:
        return symbol_L(ric, a) - symbol_L(ric, 0.0)
    if kind is FlowKind.SQUARED_RICCI:
        return symbol_H(ric, a)
    return symbol_L(ric, 0.0) + symbol_H(ric, a)


def symbol_gauge_fixed(ric: SymBilinear3, a: float, flow: Optional[Flow] = None) -> np.ndarray:
    """Symbol of the DeTurck-modified operator, the flow symbol minus `symbol_deturck_lie`.

    Args:
        ric (SymBilinear3): Ricci tensor in a frame {e1, e'2, e'3} with R'23 = 0.
        a (float): coupling constant, used when `flow` is not given (RG2).
        flow (Flow): flow kind, RG2 with coupling `a` by default.

    Returns:
        numpy.ndarray: the 6x6 symbol.
    """
    if flow is None:
        flow = Flow(FlowKind.RG2, a)
    return symbol_flow(flow, ric) - symbol_deturck_lie()
