from dataclasses import dataclass

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    """Marginal of a pure state on the kept particles.

    Rows and columns run over multi-indices of `kept` (ascending particle
    order) in lexicographic order.
    """
    kept: tuple[int, ...]
    local_dimension: int
    matrix: np.ndarray
    asymmetry: float = 0.0

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.complex128)
        size = self.local_dimension ** len(self.kept)
        if matrix.shape != (size, size):
            raise ValidationError(
                'Matrix shape %(shape)s does not match %(k)s kept particles', code='bad_matrix',
                params={'shape': matrix.shape, 'k': len(self.kept)},
            )
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    def __str__(self):
        return 'rho on %s' % (self.kept,)

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)

    @property
    def min_eigenvalue(self):
        return float(self.eigenvalues()[0])

    def is_hermitian(self, tolerance=None):
        tolerance = settings.CWRDM['NORM_TOLERANCE'] if tolerance is None else tolerance
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0)) <= tolerance

    def is_psd(self, tolerance=None):
        tolerance = settings.CWRDM['EIGEN_TOLERANCE'] if tolerance is None else tolerance
        return self.min_eigenvalue >= -tolerance

    def rank(self, tolerance=None):
        tolerance = settings.CWRDM['EIGEN_TOLERANCE'] if tolerance is None else tolerance
        return int(np.count_nonzero(self.eigenvalues() > tolerance))

    def row_index(self, k):
        """Multi-index over `kept` labelling row k."""
        return tuple(int(i) for i in np.unravel_index(k, (self.local_dimension,) * len(self.kept)))
