"""Flow kinds and their coupling constant."""

import enum
import math
from dataclasses import dataclass

from ..errors import FlowKindError


class FlowKind(enum.Enum):
    """Geometric flows available in the laboratory.

    ricci:          dg/dt = -2 Ric
    rg2:            dg/dt = -2 Ric - a Riem^2 (two-loop renormalization group flow)
    rg2zero:        dg/dt = -a Riem^2
    squared-ricci:  dg/dt = -a Ric^2
    mixed:          dg/dt = -2 Ric - a Ric^2
    """

    RICCI = 'ricci'
    RG2 = 'rg2'
    RG2ZERO = 'rg2zero'
    SQUARED_RICCI = 'squared-ricci'
    MIXED = 'mixed'

    @property
    def has_ricci_term(self) -> bool:
        """Whether -2 Ric is part of the right-hand side."""
        return self in (FlowKind.RICCI, FlowKind.RG2, FlowKind.MIXED)

    @property
    def scale_invariant(self) -> bool:
        """Whether the right-hand side is homogeneous of degree -1 in g."""
        return self in (FlowKind.RG2ZERO, FlowKind.SQUARED_RICCI)


@dataclass(frozen=True)
class Flow:
    """A flow kind together with its coupling constant a.

    Attributes:
        kind (FlowKind): the flow.
        a (float): coupling constant, may be negative; must be 0 for the Ricci flow.
    """

    kind: FlowKind
    a: float = 0.0

    def __post_init__(self):
        kind = FlowKind(self.kind)
        a = float(self.a)
        if not math.isfinite(a):
            raise FlowKindError(f'Coupling constant must be finite, got {a}.')
        if kind is FlowKind.RICCI and a != 0.0:
            raise FlowKindError(f'The Ricci flow takes no coupling constant, got a={a}.')
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'a', a)

    def __str__(self) -> str:
        return self.kind.value if self.kind is FlowKind.RICCI else f'{self.kind.value}(a={self.a:g})'

