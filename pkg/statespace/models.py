from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from weights.models import Weight, WeightModel, as_weight

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class SystemShape:
    """N identical particles, each carrying the weight system `model`."""
    model: WeightModel
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError('At least two particles are required, got %(n)s', code='too_few_particles', params={'n': self.n})

    def __str__(self):
        return '%s, N=%d' % (self.model, self.n)

    @property
    def local_dimension(self):
        return self.model.dimension

    @property
    def dimension(self):
        return self.local_dimension ** self.n

    @property
    def tensor_shape(self):
        return (self.local_dimension,) * self.n

    def check_index(self, index):
        index = tuple(int(i) for i in index)
        if len(index) != self.n or any(not 0 <= i < self.local_dimension for i in index):
            raise ValidationError('Invalid multi-index %(index)s for %(shape)s', code='bad_index', params={'index': index, 'shape': self})
        return index


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the full product basis or over one sector's basis.

    With `basis` None the amplitudes are the full D**N vector in row-major
    order (particle 0 most significant); otherwise amplitudes[i] belongs to
    basis[i].
    """
    shape: SystemShape
    amplitudes: np.ndarray
    basis: tuple[MultiIndex, ...] | None = None
    support_weight: Weight | None = None
    label: str = field(default='', compare=False)

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)
        expected = self.shape.dimension if self.basis is None else len(self.basis)
        if amplitudes.size != expected:
            raise ValidationError(
                'Expected %(expected)s amplitudes, got %(got)s', code='bad_amplitudes',
                params={'expected': expected, 'got': amplitudes.size},
            )
        if self.basis is not None:
            object.__setattr__(self, 'basis', tuple(self.shape.check_index(i) for i in self.basis))
            if len(set(self.basis)) != len(self.basis):
                raise ValidationError('Repeated basis index in state', code='bad_index')
        if self.support_weight is not None:
            w = as_weight(self.support_weight, self.shape.model.cartan_dim)
            object.__setattr__(self, 'support_weight', w)
            grid = weight_grid(self.shape)
            indices = self.basis if self.basis is not None else [
                np.unravel_index(k, self.shape.tensor_shape) for k in np.flatnonzero(amplitudes)
            ]
            for index in indices:
                if tuple(grid[tuple(index)]) != w:
                    raise ValidationError(
                        'Index %(index)s lies outside the declared sector %(w)s', code='support_mismatch',
                        params={'index': tuple(int(i) for i in index), 'w': w},
                    )

    def __str__(self):
        return self.label or 'state on %s' % self.shape

    @property
    def norm_squared(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def is_normalized(self):
        return abs(self.norm_squared - 1.0) <= settings.CWRDM['NORM_TOLERANCE']

    @cached_property
    def tensor(self):
        """Dense amplitudes with one axis per particle."""
        if self.basis is None:
            dense = self.amplitudes.copy()
        else:
            dense = np.zeros(self.shape.dimension, dtype=np.complex128)
            if self.basis:
                flat = np.ravel_multi_index(np.array(self.basis).T, self.shape.tensor_shape)
                dense[flat] = self.amplitudes
        dense = dense.reshape(self.shape.tensor_shape)
        dense.setflags(write=False)
        return dense

    @cached_property
    def probabilities(self):
        probabilities = np.abs(self.tensor) ** 2
        probabilities.setflags(write=False)
        return probabilities

    def items(self):
        """(multi-index, amplitude) pairs in lexicographic index order, zeros skipped."""
        if self.basis is not None:
            pairs = sorted(zip(self.basis, self.amplitudes), key=lambda pair: pair[0])
            return [(index, complex(a)) for index, a in pairs if a != 0]
        return [
            (tuple(int(i) for i in np.unravel_index(k, self.shape.tensor_shape)), complex(self.amplitudes[k]))
            for k in np.flatnonzero(self.amplitudes)
        ]


def weight_grid(shape):
    """Integer array of shape (D,)*N + (L,) holding weight(I) for every multi-index."""
    return _weight_grid(shape.model, shape.n)


@lru_cache(maxsize=64)
def _weight_grid(model, n):
    alphas = model.as_array()
    d = model.dimension
    grid = np.zeros((d,) * n + (model.cartan_dim,), dtype=np.int64)
    for k in range(n):
        shape = [1] * n + [model.cartan_dim]
        shape[k] = d
        grid = grid + alphas.reshape(shape)
    grid.setflags(write=False)
    return grid

