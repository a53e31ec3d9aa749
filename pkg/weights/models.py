from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from django.core.exceptions import ValidationError

Weight = tuple[int, ...]


def as_weight(value, cartan_dim=None):
    """Coerce an int or a sequence of ints into a weight tuple."""
    if isinstance(value, (int, np.integer)):
        weight = (int(value),)
    else:
        weight = tuple(int(c) for c in value)
    if cartan_dim is not None and len(weight) != cartan_dim:
        raise ValidationError(
            'Weight %(weight)s has %(got)s components, expected %(expected)s',
            code='cartan_mismatch',
            params={'weight': weight, 'got': len(weight), 'expected': cartan_dim},
        )
    return weight


@dataclass(frozen=True)
class WeightModel:
    """Weights of an orthonormal basis e_1..e_D of one particle space.

    Weights are stored doubled (2 x spin for SU(2)) so every entry is an integer.
    Basis position r in every downstream object refers to the order of `weights`.
    """
    cartan_dim: int
    weights: tuple[Weight, ...]
    label: str = ''

    def __post_init__(self):
        if self.cartan_dim < 1:
            raise ValidationError('cartan_dim must be positive', code='bad_cartan_dim')
        weights = tuple(as_weight(w, self.cartan_dim) for w in self.weights)
        if not weights:
            raise ValidationError('A weight model needs at least one basis vector', code='empty_model')
        object.__setattr__(self, 'weights', weights)

    def __str__(self):
        return self.label or 'custom %s' % (self.weights,)

    @property
    def dimension(self):
        return len(self.weights)

    @property
    def weight_sum(self):
        return tuple(sum(w[c] for w in self.weights) for c in range(self.cartan_dim))

    @property
    def is_balanced(self):
        """True when the weights sum to zero, as they do for full representations."""
        return not any(self.weight_sum)

    def as_array(self):
        return np.array(self.weights, dtype=np.int64).reshape(self.dimension, self.cartan_dim)

    def zero(self):
        return (0,) * self.cartan_dim

    @staticmethod
    def in_spin_units(value):
        """Halve a doubled-convention value exactly (display only)."""
        if isinstance(value, tuple):
            return tuple(Fraction(v) / 2 for v in value)
        return Fraction(value) / 2


@dataclass(frozen=True)
class ConstraintSpec:
    """An admissibility condition on frequency vectors: sum_r score_r * n_r == target."""
    LINEAR = 'linear-weight'
    QUADRATIC = 'quadratic-weight'
    CUSTOM = 'custom'
    KINDS = (LINEAR, QUADRATIC, CUSTOM)

    kind: str
    target: Weight
    scores: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValidationError('Unknown constraint kind %(kind)s', code='bad_constraint', params={'kind': self.kind})
        object.__setattr__(self, 'target', as_weight(self.target))
        if self.kind == self.CUSTOM:
            if self.scores is None:
                raise ValidationError('A custom constraint needs per-basis scores', code='bad_constraint')
            object.__setattr__(self, 'scores', tuple(int(s) for s in self.scores))
        if self.kind != self.LINEAR and len(self.target) != 1:
            raise ValidationError('Only linear-weight constraints take a vector target', code='bad_constraint')

    def scores_for(self, model):
        """Per-basis-vector score tuples, validated against `model`."""
        if self.kind == self.LINEAR:
            as_weight(self.target, model.cartan_dim)
            return model.weights
        if self.kind == self.QUADRATIC:
            return tuple((sum(c * c for c in w),) for w in model.weights)
        if len(self.scores) != model.dimension:
            raise ValidationError(
                'Custom constraint has %(got)s scores for a model of dimension %(expected)s',
                code='bad_constraint',
                params={'got': len(self.scores), 'expected': model.dimension},
            )
        return tuple((s,) for s in self.scores)
