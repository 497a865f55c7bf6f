"""Ellipticity and parabolicity certificates for the flow symbols.

The parabolicity margin of a flow is the smallest non-gauge symbol eigenvalue over all
unit covectors, reduced to pointwise algebra:

    ricci            1
    rg2              min(1 + 2a Kmin, 1 + 2a Kmax)
    rg2zero          min(a Kmin, a Kmax)
    squared-ricci    min(a rho_min, a rho_max)
    mixed            1 + min(a rho_min, a rho_max)

where K ranges over the sectional curvatures and rho over the eigenvalues of Ric with
respect to g. All margin functions are batched over leading grid axes.
"""

import enum
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy.linalg import eigvals, null_space

from ..flows.kinds import Flow, FlowKind
from ..tensor3 import (
    Curv3,
    Frame3,
    SymBilinear3,
    curvature_operator_spectrum,
    generalized_eigh,
    inverse_metric,
    orthonormal_frame,
    ricci_from_riemann,
    rotate_frame_kill_r23,
)
from .matrices import H_NAMES, h_matrix, h_vector, symbol_deturck_lie, symbol_flow, symbol_L_unrotated

EPS_PAR = 1e-8
"""float: margins at or below this value count as a failure of parabolicity."""

KERNEL_RCOND = 1e-10
"""float: relative singular-value cut-off of `kernel_check`."""


class Verdict(str, enum.Enum):
    """Outcome of an ellipticity check."""

    STRONG = 'strongly-elliptic'
    WEAK = 'weakly-elliptic-with-gauge-kernel'
    NOT = 'not-elliptic'


@dataclass(frozen=True, eq=False)
class EllipticityReport:
    """Ellipticity verdict of a flow symbol.

    Attributes:
        flow (Flow): flow kind and coupling.
        eigenvalues (numpy.ndarray): symbol eigenvalues at `covector`, ascending real part.
        margin (float): parabolicity margin, see the module docstring.
        kernel_dim (int): dimension of the symbol kernel at `covector`.
        verdict (Verdict): the verdict.
        gauge_fixed (bool): whether the DeTurck term is included in the symbol.
        covector (numpy.ndarray): covector xi the eigenvalues refer to (chart components).
        plane (numpy.ndarray): worst plane as a 2-vector (coordinate cross-product components).
        point (tuple): grid index the report refers to, empty for pointwise data.
    """

    flow: Flow
    eigenvalues: np.ndarray
    margin: float
    kernel_dim: int
    verdict: Verdict
    gauge_fixed: bool = True
    covector: Optional[np.ndarray] = None
    plane: Optional[np.ndarray] = None
    point: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        """Whether the verdict is positive (strong, or weak up to the gauge kernel)."""
        return self.verdict is not Verdict.NOT

    def to_dict(self) -> dict:
        """JSON-friendly view of the report."""
        eig = np.asarray(self.eigenvalues)
        return {
            'kind': self.flow.kind.value,
            'a': self.flow.a,
            'gauge_fixed': self.gauge_fixed,
            'eigenvalues': [[float(v.real), float(v.imag)] for v in eig.astype(complex)],
            'margin': float(self.margin),
            'kernel_dim': int(self.kernel_dim),
            'verdict': self.verdict.value,
            'covector': None if self.covector is None else [float(v) for v in self.covector],
            'plane': None if self.plane is None else [float(v) for v in self.plane],
            'point': list(self.point),
        }


@dataclass(frozen=True, eq=False)
class SymbolAt:
    """The symbol pipeline evaluated at one point and covector.

    Attributes:
        frame (Frame3): orthonormal frame with e1 dual to xi, before the rotation.
        rotated (Frame3): the frame after the rotation killing R23.
        alpha (float): rotation angle.
        ricci (SymBilinear3): Ricci components in the rotated frame.
        matrix (numpy.ndarray): 6x6 symbol in the rotated frame.
        unrotated (numpy.ndarray): RG2-family symbol in the unrotated frame, None for the squared-Ricci kinds.
        eigenvalues (numpy.ndarray): eigenvalues of `matrix`, ascending real part.
    """

    frame: Frame3
    rotated: Frame3
    alpha: float
    ricci: SymBilinear3
    matrix: np.ndarray
    unrotated: Optional[np.ndarray]
    eigenvalues: np.ndarray


def sorted_eigenvalues(s: np.ndarray) -> np.ndarray:
    """Eigenvalues of a general real matrix, sorted by real part then imaginary part.

    Purely real spectra come back with a real dtype.
    """
    values = eigvals(s)
    values = values[np.lexsort((values.imag, values.real))]
    if np.all(np.abs(values.imag) <= 1e-12 * max(1.0, np.max(np.abs(values)))):
        values = values.real
    return values


def kernel_check(s: np.ndarray, rcond: float = KERNEL_RCOND) -> Tuple[int, np.ndarray]:
    """Dimension and orthonormal basis of the kernel of a symbol.

    Args:
        s (numpy.ndarray): 6x6 symbol.
        rcond (float): singular values below rcond times the largest count as zero.

    Returns:
        (tuple): tuple containing
            dim (int): kernel dimension.
            basis (numpy.ndarray): basis vectors as columns, shape (6, dim).
    """
    basis = null_space(s, rcond=rcond)
    return basis.shape[1], basis


def _unrotated_symbol(flow: Flow, riem_frame: Curv3) -> Optional[np.ndarray]:
    kind, a = flow.kind, flow.a
    if kind is FlowKind.RICCI:
        return symbol_L_unrotated(riem_frame, 0.0)
    if kind is FlowKind.RG2:
        return symbol_L_unrotated(riem_frame, a)
    if kind is FlowKind.RG2ZERO:
        return symbol_L_unrotated(riem_frame, a) - symbol_L_unrotated(riem_frame, 0.0)
    return None


def symbol_at(
    riem: Curv3, g: SymBilinear3, xi: npt.ArrayLike, flow: Flow, gauge_fixed: bool = False
) -> SymbolAt:
    """Run the symbol pipeline (frame, rotation, matrix, eigenvalues) at a covector.

    Args:
        riem (Curv3): curvature tensor at a single point, chart components.
        g (SymBilinear3): metric at that point.
        xi (array_like): non-zero covector.
        flow (Flow): flow kind and coupling.
        gauge_fixed (bool): subtract the DeTurck symbol.

    Returns:
        SymbolAt: every intermediate of the pipeline.
    """
    frame = orthonormal_frame(g, xi)
    ric = ricci_from_riemann(riem, g)
    rotated, alpha = rotate_frame_kill_r23(frame, ric)
    ric_rot = rotated.components(ric)
    s = symbol_flow(flow, ric_rot)
    unrotated = _unrotated_symbol(flow, riem.in_frame(frame.vectors))
    if gauge_fixed:
        s = s - symbol_deturck_lie()
        if unrotated is not None:
            unrotated = unrotated - symbol_deturck_lie()
    return SymbolAt(frame, rotated, alpha, ric_rot, s, unrotated, sorted_eigenvalues(s))


def chart_symbol(riem: Curv3, g: SymBilinear3, xi: npt.ArrayLike, flow: Flow, gauge_fixed: bool = False) -> np.ndarray:
    """Symbol at a covector acting on chart components (h11, h12, h13, h22, h33, h23).

    The rotated-frame symbol of `symbol_at` is conjugated back to chart components of the
    input and output forms and scaled by |xi|_g^2.

    Args:
        riem (Curv3): curvature tensor at a single point, chart components.
        g (SymBilinear3): metric at that point.
        xi (array_like): non-zero covector.
        flow (Flow): flow kind and coupling.
        gauge_fixed (bool): subtract the DeTurck symbol (background equal to g).

    Returns:
        numpy.ndarray: the 6x6 chart symbol.
    """
    at = symbol_at(riem, g, xi, flow, gauge_fixed)
    e = at.rotated.vectors
    e_inv = np.linalg.inv(e)
    xi = np.asarray(xi, dtype=float)
    out = np.zeros((6, 6))
    for j in range(6):
        h_frame = e @ h_matrix(np.eye(6)[j]) @ e.T
        image = h_matrix(at.matrix @ h_vector(h_frame))
        out[:, j] = h_vector(e_inv @ image @ e_inv.T)
    return float(xi @ inverse_metric(g).matrix @ xi) * out


def ricci_spectrum(ric: SymBilinear3, g: SymBilinear3) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues rho and g-orthonormal eigenvectors (columns) of Ric with respect to g."""
    return generalized_eigh(ric.matrix, g.matrix)


def _extremes(flow: Flow, riem: Curv3, ric: SymBilinear3, g: SymBilinear3) -> Tuple[np.ndarray, np.ndarray]:
    """Per-point (low, high) values of the varying symbol eigenvalue family."""
    kind, a = flow.kind, flow.a
    if kind in (FlowKind.SQUARED_RICCI, FlowKind.MIXED):
        rho, _ = ricci_spectrum(ric, g)
        lo, hi = a * rho[..., 0], a * rho[..., -1]
        if kind is FlowKind.MIXED:
            lo, hi = 1.0 + lo, 1.0 + hi
        return lo, hi
    k, _ = curvature_operator_spectrum(riem, g)
    if kind is FlowKind.RG2ZERO:
        return a * k[..., 0], a * k[..., -1]
    return 1.0 + 2.0 * a * k[..., 0], 1.0 + 2.0 * a * k[..., -1]


def margin_field(flow: Flow, riem: Curv3, ric: SymBilinear3, g: SymBilinear3) -> np.ndarray:
    """Parabolicity margin at every point of a batch.

    Args:
        flow (Flow): flow kind and coupling.
        riem (Curv3): curvature tensors.
        ric (SymBilinear3): Ricci tensors.
        g (SymBilinear3): metrics.

    Returns:
        numpy.ndarray: margin per point, shape `g.shape`.
    """
    if flow.kind is FlowKind.RICCI:
        return np.ones(g.shape)
    lo, hi = _extremes(flow, riem, ric, g)
    return np.minimum(lo, hi)


def symbol_bound(flow: Flow, riem: Curv3, ric: SymBilinear3, g: SymBilinear3) -> np.ndarray:
    """Upper bound of the gauge-fixed symbol eigenvalues at every point (at least 1)."""
    if flow.kind is FlowKind.RICCI:
        return np.ones(g.shape)
    lo, hi = _extremes(flow, riem, ric, g)
    if flow.kind is FlowKind.RG2ZERO:
        # the rg2zero eigenvalues are 2aK, the margin keeps the aK normalization
        lo, hi = 2.0 * lo, 2.0 * hi
    return np.maximum(1.0, np.maximum(lo, hi))


def worst_covector(flow: Flow, riem: Curv3, ric: SymBilinear3, g: SymBilinear3) -> Tuple[np.ndarray, np.ndarray]:
    """Covector whose symbol attains the margin at a single point, and the worst plane.

    Returns:
        (tuple): tuple containing
            xi (numpy.ndarray): covector, chart components.
            plane (numpy.ndarray): worst plane as a 2-vector.
    """
    lo, hi = _extremes(flow, riem, ric, g) if flow.kind is not FlowKind.RICCI else (0.0, 0.0)
    worst = 0 if lo <= hi else -1
    m = g.matrix
    if flow.kind in (FlowKind.SQUARED_RICCI, FlowKind.MIXED):
        _, vectors = ricci_spectrum(ric, g)
        # e1 along the best direction leaves the worst one inside e1^perp
        e1 = vectors[:, -1 - worst]
        return m @ e1, np.cross(e1, vectors[:, worst])
    _, planes = curvature_operator_spectrum(riem, g)
    w = planes[:, worst]
    axis = int(np.argmin(np.abs(w)))
    x = np.cross(w, np.eye(3)[axis])
    return m @ x, w


def _verdict(margin: float, kernel_dim: int, gauge_fixed: bool, eps_par: float) -> Verdict:
    if margin > eps_par and gauge_fixed:
        return Verdict.STRONG
    if margin > eps_par and kernel_dim == 3:
        return Verdict.WEAK
    return Verdict.NOT


def parabolicity(
    riem: Curv3, g: SymBilinear3, flow: Flow, eps_par: float = EPS_PAR, gauge_fixed: bool = True
) -> EllipticityReport:
    """Certify (or refute) parabolicity of a flow at a single point.

    Args:
        riem (Curv3): curvature tensor, chart components.
        g (SymBilinear3): metric.
        flow (Flow): flow kind and coupling.
        eps_par (float): margins at or below this threshold fail.
        gauge_fixed (bool): report on the DeTurck-modified symbol (strong ellipticity) or the plain
            one (weak ellipticity up to the gauge kernel).

    Returns:
        EllipticityReport: margin, verdict and the symbol spectrum at the worst covector.
    """
    ric = ricci_from_riemann(riem, g)
    margin = float(margin_field(flow, riem, ric, g))
    xi, plane = worst_covector(flow, riem, ric, g)
    at = symbol_at(riem, g, xi, flow, gauge_fixed=gauge_fixed)
    kernel_dim, _ = kernel_check(at.matrix)
    return EllipticityReport(
        flow=flow,
        eigenvalues=at.eigenvalues,
        margin=margin,
        kernel_dim=kernel_dim,
        verdict=_verdict(margin, kernel_dim, gauge_fixed, eps_par),
        gauge_fixed=gauge_fixed,
        covector=xi,
        plane=plane,
    )


def global_parabolicity(
    riem: Curv3, ric: SymBilinear3, g: SymBilinear3, flow: Flow, eps_par: float = EPS_PAR
) -> EllipticityReport:
    """Gauge-fixed parabolicity of a whole field, reported at its worst point.

    Args:
        riem (Curv3): curvature tensors with leading grid axes.
        ric (SymBilinear3): Ricci tensors.
        g (SymBilinear3): metrics.
        flow (Flow): flow kind and coupling.
        eps_par (float): margins at or below this threshold fail.

    Returns:
        EllipticityReport: report of the point with the smallest margin, with `point` set.
    """
    margins = margin_field(flow, riem, ric, g)
    point = tuple(int(i) for i in np.unravel_index(int(np.argmin(margins)), margins.shape))
    report = parabolicity(riem[point], g[point], flow, eps_par=eps_par)
    return EllipticityReport(
        flow=report.flow,
        eigenvalues=report.eigenvalues,
        margin=float(margins[point]),
        kernel_dim=report.kernel_dim,
        verdict=report.verdict,
        gauge_fixed=True,
        covector=report.covector,
        plane=report.plane,
        point=point,
    )


def symbol_report(riem: Curv3, g: SymBilinear3, xi: npt.ArrayLike, flow: Flow, eps_par: float = EPS_PAR) -> dict:
    """Everything the `symbol` command prints for one point and covector.

    Returns:
        dict: rotated and unrotated ungauged symbols, alpha, eigenvalues, kernel dimension,
        margin and the weak-ellipticity verdict, plus the gauge-fixed eigenvalues.
    """
    at = symbol_at(riem, g, xi, flow)
    fixed = symbol_at(riem, g, xi, flow, gauge_fixed=True)
    kernel_dim, _ = kernel_check(at.matrix)
    ric = ricci_from_riemann(riem, g)
    margin = float(margin_field(flow, riem, ric, g))
    report = EllipticityReport(
        flow=flow,
        eigenvalues=at.eigenvalues,
        margin=margin,
        kernel_dim=kernel_dim,
        verdict=_verdict(margin, kernel_dim, False, eps_par),
        gauge_fixed=False,
        covector=np.asarray(xi, dtype=float),
    )
    out = report.to_dict()
    out.update(
        {
            'coordinates': list(H_NAMES),
            'alpha': at.alpha,
            'symbol': at.matrix.tolist(),
            'symbol_unrotated': None if at.unrotated is None else at.unrotated.tolist(),
            'gauge_fixed_eigenvalues': [[float(v.real), float(v.imag)] for v in fixed.eigenvalues.astype(complex)],
        }
    )
    return out
