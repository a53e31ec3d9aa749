from dataclasses import dataclass
from fractions import Fraction

import sympy

from weights.models import Weight, WeightModel


@dataclass(frozen=True)
class Partition:
    """A permutation coset of solutions, stored as per-basis frequencies n_r."""
    frequencies: tuple[int, ...]
    model: WeightModel
    slots: int
    target: Weight

    def __str__(self):
        return '(%s)' % ','.join(str(n) for n in self.frequencies)

    @property
    def basis_indices(self):
        """Nondecreasing multiset of basis positions represented by the frequencies."""
        return tuple(r for r, n in enumerate(self.frequencies) for _ in range(n))

    @property
    def weights(self):
        """The member weights, largest first, as printed in partition tables."""
        return tuple(sorted((self.model.weights[r] for r in self.basis_indices), reverse=True))

    def total_weight(self):
        return tuple(
            sum(n * alpha[c] for n, alpha in zip(self.frequencies, self.model.weights))
            for c in range(self.model.cartan_dim)
        )


@dataclass(frozen=True)
class FrequencyMatrix:
    """Stacked frequency vectors of every admissible partition; rows in canonical order."""
    rows: tuple[tuple[int, ...], ...]
    model: WeightModel
    slots: int
    target: Weight
    kind: str = 'linear-weight'

    def __str__(self):
        return 'A[%d x %d] slots=%d target=%s' % (len(self.rows), self.model.dimension, self.slots, self.target)

    @property
    def is_empty(self):
        return not self.rows

    @property
    def shape(self):
        return len(self.rows), self.model.dimension

    def as_sympy(self):
        return sympy.Matrix(self.rows) if self.rows else sympy.zeros(0, self.model.dimension)

    def augmented(self):
        """A with an all-ones row appended."""
        return self.as_sympy().col_join(sympy.ones(1, self.model.dimension))


@dataclass(frozen=True)
class RankReport:
    rank_a: int
    rank_a_tilde: int
    witness_b: tuple[Fraction, ...] | None = None

    def __str__(self):
        return 'rank_A=%d rank_A_tilde=%d' % (self.rank_a, self.rank_a_tilde)

    @property
    def has_witness(self):
        return self.witness_b is not None
