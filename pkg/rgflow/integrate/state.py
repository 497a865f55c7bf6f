"""Flow states, run controls and diagnostics."""

import enum
import math
from dataclasses import asdict, dataclass
from typing import Optional

from ..chart.field import MetricField
from ..flows.kinds import Flow

DIAGNOSTICS_COLUMNS = ('t', 'dt', 'margin', 'max_riem', 'min_eig_g', 'kind', 'a')
"""tuple: column order of the diagnostics CSV."""


class StopReason(str, enum.Enum):
    """Why a run halted; exactly one per run."""

    T_END = 't_end'
    PARABOLICITY_LOST = 'parabolicity_lost'
    CURVATURE_BLOWUP = 'curvature_blowup'
    METRIC_DEGENERACY = 'metric_degeneracy'
    STEP_UNDERFLOW = 'step_underflow'


@dataclass(frozen=True)
class Controls:
    """Step-size and halting controls of a run.

    Attributes:
        cfl (float): parabolic CFL number, dt <= cfl h^2 / Lambda.
        eps_par (float): margins at or below this value stop the run.
        m_max (float): curvature operator norm that counts as blow-up.
        eps_g (float): smallest metric eigenvalue that counts as degeneracy.
        dt_min (float): step underflow threshold.
        refresh (int): accepted steps between two evaluations of Lambda.
        force (bool): run even when the data are not parabolic.
        verify (bool): evaluate the quadratic curvature term by full contraction.
        snapshot_every (int): accepted steps between two stored states, 0 stores none.
    """

    cfl: float = 0.2
    eps_par: float = 1e-8
    m_max: float = 1e6
    eps_g: float = 1e-8
    dt_min: float = 1e-12
    refresh: int = 10
    force: bool = False
    verify: bool = False
    snapshot_every: int = 0

    def __post_init__(self):
        for name in ('cfl', 'eps_par', 'm_max', 'eps_g', 'dt_min'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f'Control {name} must be positive, got {value}.')
        if self.refresh < 1 or self.snapshot_every < 0:
            raise ValueError('refresh must be >= 1 and snapshot_every >= 0.')


@dataclass(frozen=True)
class Diagnostics:
    """One diagnostics row."""

    t: float
    dt: float
    margin: float
    max_riem: float
    min_eig_g: float
    kind: str
    a: float

    def row(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class FlowState:
    """State of a gauge-fixed flow.

    Attributes:
        t (float): time.
        field (MetricField): the metric g(t).
        flow (Flow): flow kind and coupling.
        g0 (MetricField): background metric of the DeTurck vector field.
        diagnostics (Diagnostics): diagnostics of the step that produced the state.
        steps (int): accepted steps so far.
    """

    t: float
    field: MetricField
    flow: Flow
    g0: MetricField
    diagnostics: Optional[Diagnostics] = None
    steps: int = 0

    @classmethod
    def initial(cls, field: MetricField, flow: Flow, g0: Optional[MetricField] = None) -> 'FlowState':
        """State at t = 0; the background defaults to the initial metric."""
        if g0 is None:
            g0 = field
        field.check_same_grid(g0)
        return cls(0.0, field, flow, g0)
