from dataclasses import dataclass, field

import numpy as np
from django.core.exceptions import ValidationError

from statespace.models import SystemShape


@dataclass(frozen=True, eq=False)
class MarginalFamily:
    """Two-body density matrices keyed by particle pairs (p, q) with p < q.

    Each matrix is D**2 x D**2 with row index i_p * D + i_q.
    """
    shape: SystemShape
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        d = self.shape.local_dimension
        entries = {}
        for (p, q), matrix in self.entries.items():
            if p == q or not (0 <= p < self.shape.n and 0 <= q < self.shape.n):
                raise ValidationError('Invalid pair (%(p)s, %(q)s)', code='bad_subset', params={'p': p, 'q': q})
            matrix = np.array(matrix, dtype=np.complex128)
            if matrix.shape != (d * d, d * d):
                raise ValidationError('Pair matrix must be %(size)s x %(size)s', code='bad_matrix', params={'size': d * d})
            if p > q:
                p, q, matrix = q, p, _swap(matrix, d)
            matrix.setflags(write=False)
            entries[(p, q)] = matrix
        object.__setattr__(self, 'entries', dict(sorted(entries.items())))

    def __str__(self):
        return '%d pair marginals on %s' % (len(self.entries), self.shape)

    @property
    def pairs(self):
        return tuple(self.entries)

    def matrix(self, p, q):
        """The marginal on (p, q) with p's index most significant, in either order."""
        if p < q:
            return self.entries[(p, q)]
        return _swap(self.entries[(q, p)], self.shape.local_dimension)

    def missing_pairs(self, pivot):
        return [tuple(sorted((pivot, q))) for q in range(self.shape.n) if q != pivot and tuple(sorted((pivot, q))) not in self.entries]

    def single_site(self, pivot, partner):
        """Trace the partner out of the (pivot, partner) marginal."""
        d = self.shape.local_dimension
        return np.einsum('aibi->ab', self.matrix(pivot, partner).reshape(d, d, d, d))

    def problems(self, hermitian_tolerance=1e-10, trace_tolerance=1e-10, psd_tolerance=1e-8):
        """(code, message) pairs for matrices that are not Hermitian, not PSD, or disagree in trace."""
        found = []
        traces = {}
        for pair, matrix in self.entries.items():
            if np.max(np.abs(matrix - matrix.conj().T), initial=0.0) > hermitian_tolerance:
                found.append(('not_hermitian', 'pair %s is not Hermitian' % (pair,)))
                continue
            traces[pair] = float(np.trace(matrix).real)
            if np.linalg.eigvalsh(matrix)[0] < -psd_tolerance:
                found.append(('not_psd', 'pair %s is not positive semidefinite' % (pair,)))
        if traces and max(traces.values()) - min(traces.values()) > trace_tolerance:
            found.append(('trace_mismatch', 'pair traces differ: %s' % traces))
        return found


def _swap(matrix, d):
    return matrix.reshape(d, d, d, d).transpose(1, 0, 3, 2).reshape(d * d, d * d)


@dataclass(frozen=True)
class CertificateRow:
    pivot: int
    i0: int
    mass: float
    candidate: tuple[float, ...] | None
    residual: tuple[float, ...] | None


@dataclass(frozen=True)
class CertificateVerdict:
    CONSISTENT = 'consistent'
    INCONSISTENT = 'inconsistent'
    UNDERDETERMINED = 'underdetermined'

    status: str
    w0: tuple[int, ...] | None
    spread: float
    snap_distance: float
    rows: tuple[CertificateRow, ...]

    def __str__(self):
        if self.status == self.CONSISTENT:
            return 'consistent(%s)' % ','.join(str(c) for c in self.w0)
        return self.status

    @property
    def is_consistent(self):
        return self.status == self.CONSISTENT
