"""Orthonormal frames adapted to a covector."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from ..errors import ZeroCovectorError
from .forms import SymBilinear3, inverse_metric


@dataclass(frozen=True, eq=False)
class Frame3:
    """Three tangent vectors, orthonormal for `metric`.

    Attributes:
        vectors (numpy.ndarray): frame vectors as rows, shape (3, 3), chart components.
        metric (SymBilinear3): the metric of a single point.
    """

    vectors: np.ndarray
    metric: SymBilinear3

    def gram(self) -> np.ndarray:
        """Matrix g(e_i, e_j)."""
        return self.vectors @ self.metric.matrix @ self.vectors.T

    def residual(self) -> float:
        """Largest deviation of the Gram matrix from the identity."""
        return float(np.max(np.abs(self.gram() - np.eye(3))))

    def components(self, form: SymBilinear3) -> SymBilinear3:
        """Frame components form(e_i, e_j) of a bilinear form."""
        return SymBilinear3.from_matrix(self.vectors @ form.matrix @ self.vectors.T)


def _normalize(v: np.ndarray, m: np.ndarray) -> np.ndarray:
    return v / np.sqrt(v @ m @ v)


def orthonormal_frame(g: SymBilinear3, xi: npt.ArrayLike) -> Frame3:
    """Orthonormal frame whose first vector is dual to the covector xi.

    The completion is deterministic: e_2 comes from the coordinate axis least aligned with
    e_1, e_3 from whichever remaining axis keeps the largest component after projection.

    Args:
        g (SymBilinear3): metric at a single point.
        xi (array_like): covector, chart components.

    Returns:
        Frame3: frame with g(e_1, .) a positive multiple of xi.

    Raises:
        ZeroCovectorError: if xi vanishes.
    """
    xi = np.asarray(xi, dtype=float)
    if not np.any(xi):
        raise ZeroCovectorError('Cannot build a frame for the zero covector.')
    m = g.matrix
    e1 = _normalize(inverse_metric(g).matrix @ xi, m)

    axes = np.eye(3)
    alignment = np.abs(m @ e1) / np.sqrt(np.diag(m))
    first = int(np.argmin(alignment))
    e2 = _normalize(axes[first] - (axes[first] @ m @ e1) * e1, m)

    rest = [a for a in range(3) if a != first]
    residuals = [axes[a] - (axes[a] @ m @ e1) * e1 - (axes[a] @ m @ e2) * e2 for a in rest]
    norms = [np.sqrt(r @ m @ r) for r in residuals]
    e3 = residuals[int(np.argmax(norms))] / max(norms)

    return Frame3(np.array([e1, e2, e3]), g)


def rotate_frame_kill_r23(frame: Frame3, ric: SymBilinear3) -> Tuple[Frame3, float]:
    """Rotate e_2, e_3 in their plane until Ric(e'_2, e'_3) = 0.

    alpha = pi/4 if R_22 = R_33, otherwise alpha = arctan(2 R_23 / (R_22 - R_33)) / 2, and
    e'_2 = cos(alpha) e_2 + sin(alpha) e_3, e'_3 = -sin(alpha) e_2 + cos(alpha) e_3.

    Args:
        frame (Frame3): an orthonormal frame.
        ric (SymBilinear3): Ricci tensor at the frame's point, chart components.

    Returns:
        (tuple): tuple containing
            rotated (Frame3): the frame {e_1, e'_2, e'_3}.
            alpha (float): rotation angle in radians.
    """
    r = frame.components(ric).matrix
    r22, r33, r23 = r[1, 1], r[2, 2], r[1, 2]
    if r22 == r33:
        alpha = np.pi / 4
    else:
        alpha = 0.5 * np.arctan(2.0 * r23 / (r22 - r33))
    c, s = np.cos(alpha), np.sin(alpha)
    e1, e2, e3 = frame.vectors
    rotated = np.array([e1, c * e2 + s * e3, -s * e2 + c * e3])
    return Frame3(rotated, frame.metric), float(alpha)
