from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from statespace.models import SystemShape
from weights.models import Weight, WeightModel


def format_fraction(value):
    return str(Fraction(value))


@dataclass(frozen=True)
class BVector:
    """Exact coefficients b_r for one Cartan component of a (model, slots, S) context."""
    values: tuple[Fraction, ...]
    model: WeightModel
    slots: int
    target: Weight
    component: int = 0

    def __str__(self):
        return '(%s)' % ', '.join(format_fraction(v) for v in self.values)

    @property
    def total(self):
        return sum(self.values, Fraction(0))

    def annihilates(self, rows):
        return all(sum(b * n for b, n in zip(self.values, row)) == 0 for row in rows)

    def scaled(self, factor):
        factor = Fraction(factor)
        return BVector(tuple(v * factor for v in self.values), self.model, self.slots, self.target, self.component)

    def shifted(self, delta):
        return tuple(v + Fraction(delta) for v in self.values)

    def as_floats(self):
        return np.array([float(v) for v in self.values])


@dataclass(frozen=True)
class RelationContext:
    """A fixed index I0 on the first M particles of `positions` and a sector weight w.

    `positions` is a relabelling of the particles: positions[:m] carry I0,
    positions[m:] are the candidate sites `*`.
    """
    shape: SystemShape
    w: Weight
    m: int
    i0: tuple[int, ...]
    positions: tuple[int, ...]
    s: Weight
    feasible: bool

    def __str__(self):
        return 'M=%d I0=%s S=%s' % (self.m, self.i0, self.s)

    @property
    def slots(self):
        return self.shape.n - self.m

    @property
    def fixed_sites(self):
        return self.positions[:self.m]

    @property
    def free_sites(self):
        return self.positions[self.m:]


@dataclass(frozen=True)
class RelationResidual:
    context: RelationContext
    b: tuple[BVector, ...]
    residual: tuple[float, ...]
    relative: tuple[float, ...]

    @property
    def vacuous(self):
        return not self.context.feasible

    @property
    def max_residual(self):
        return max(self.residual)


@dataclass(frozen=True)
class TraceOfTrace:
    lhs: np.ndarray
    rhs: np.ndarray

    @property
    def max_abs_diff(self):
        return float(np.max(np.abs(self.lhs - self.rhs)))


@dataclass(frozen=True)
class PerfectDeviation:
    """Deviation from maximal mixedness keyed by the traced subset."""
    table: dict = field(default_factory=dict)

    @property
    def max_deviation(self):
        return max(self.table.values(), default=0.0)


@dataclass(frozen=True)
class ImpossibilityWitness:
    m: int
    i0: tuple[int, ...]
    s: Weight
    b: BVector

    def __str__(self):
        return 'M=%d I0=%s S=%s sum(b)=%s' % (self.m, self.i0, self.s, self.contradiction)

    @property
    def contradiction(self):
        return self.b.total
