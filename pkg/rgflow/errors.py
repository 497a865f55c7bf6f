"""Exceptions raised across rgflow.

Every error derives from `RGFlowError`, itself a `ValueError`, so callers that only
care about bad input can keep catching `ValueError`.
"""

from typing import Optional, Sequence, Tuple


class RGFlowError(ValueError):
    """Base class of every rgflow error."""


class DefinitenessError(RGFlowError):
    """A symmetric bilinear form used as a metric is not positive definite.

    Attributes:
        eigenvalue (float): the offending (smallest) eigenvalue.
        location (tuple): grid index of the offending point, if any.
    """

    def __init__(self, eigenvalue: float, location: Optional[Tuple[int, ...]] = None):
        self.eigenvalue = float(eigenvalue)
        self.location = location
        where = '' if location is None else f' at grid point {location}'
        super().__init__(f'Metric is not positive definite{where}: eigenvalue {self.eigenvalue:.6g}.')


class DegeneratePlaneError(RGFlowError):
    """The two vectors spanning a plane are (numerically) linearly dependent."""


class ZeroCovectorError(RGFlowError):
    """A frame was requested for the zero covector."""


class FrameNotRotatedError(RGFlowError):
    """The Ricci tensor has a non-zero R_23 component in a frame that must kill it."""


class FrameNotDiagonalizedError(RGFlowError):
    """The Ricci tensor is not diagonal on the orthogonal complement of e_1."""


class GridMismatchError(RGFlowError):
    """Two fields that must share a grid do not."""


class FlowKindError(RGFlowError):
    """Flow kind and coupling constant are inconsistent."""


class StepTooLargeError(RGFlowError):
    """A finite-difference step pushed the metric out of the positive cone."""


class StageFailure(RGFlowError):
    """An intermediate Runge-Kutta stage lost definiteness; the caller should shrink dt."""


class InitialConditionRejected(RGFlowError):
    """The initial data violate the parabolicity condition of the chosen flow.

    Attributes:
        margin (float): the global parabolicity margin.
        point (tuple): grid index of the worst point.
        plane (numpy.ndarray): worst plane as a 2-vector (coordinate cross-product components).
    """

    def __init__(self, margin: float, point: Tuple[int, ...] = (), plane: Optional[Sequence[float]] = None):
        self.margin = float(margin)
        self.point = tuple(point)
        self.plane = None if plane is None else [float(w) for w in plane]
        super().__init__(
            f'Initial data rejected: parabolicity margin {self.margin:.6g} at point {self.point}, plane {self.plane}.'
        )


class SnapshotError(RGFlowError):
    """A metric field snapshot file is malformed."""


class PointSampleError(RGFlowError):
    """A point-sample file is malformed; the message names the line or field."""


class ConfigError(RGFlowError):
    """A run configuration is malformed; the message names the section and key."""


class SignConventionError(RGFlowError):
    """The curvature kernel returned the wrong sign on the round sphere."""
