"""Partial traces of pure states and the diagnostics built on them."""
import logging

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from .models import ReducedDensity

logger = logging.getLogger(__name__)


def _check_positions(positions, n, allow_empty=False, allow_full=False):
    positions = tuple(int(p) for p in positions)
    if len(set(positions)) != len(positions) or any(not 0 <= p < n for p in positions):
        raise ValidationError('Invalid particle subset %(subset)s for N=%(n)s', code='bad_subset', params={'subset': positions, 'n': n})
    if (not positions and not allow_empty) or (len(positions) == n and not allow_full):
        raise ValidationError(
            'Traced subset must be proper and nonempty, got %(subset)s', code='bad_subset',
            params={'subset': positions, 'n': n},
        )
    return positions


def partial_trace(state, traced):
    """Trace out the particles in `traced` from psi psi^dagger.

    The amplitude tensor is permuted to (kept..., traced...), flattened to a
    (D**k, D**t) matrix X, and the marginal is X X^dagger. The result is
    symmetrised; the pre-symmetrisation asymmetry is kept for diagnostics.
    """
    n = state.shape.n
    d = state.shape.local_dimension
    traced = tuple(sorted(_check_positions(traced, n)))
    kept = tuple(p for p in range(n) if p not in traced)
    x = np.transpose(state.tensor, kept + traced).reshape(d ** len(kept), d ** len(traced))
    raw = x @ x.conj().T
    asymmetry = float(np.linalg.norm(raw - raw.conj().T))
    if asymmetry > settings.CWRDM['NORM_TOLERANCE']:
        logger.warning('partial trace over %s: asymmetry %.3e before symmetrisation', traced, asymmetry)
    matrix = (raw + raw.conj().T) / 2
    return ReducedDensity(kept=kept, local_dimension=d, matrix=matrix, asymmetry=asymmetry)


def diagonal(reduced):
    """rho_L for every kept multi-index L, in lexicographic order."""
    guard = settings.CWRDM['NORM_TOLERANCE']
    values = np.real(np.diagonal(reduced.matrix)).copy()
    values[(values < 0) & (values > -guard)] = 0.0
    return {reduced.row_index(k): float(v) for k, v in enumerate(values)}


def marginal_diagonal(state, kept):
    """Diagonal of the marginal on `kept`, read straight off |a_I|**2.

    Axes of the returned array follow the order of `kept` as given, which
    need not be ascending.
    """
    n = state.shape.n
    kept = _check_positions(kept, n, allow_empty=True, allow_full=True)
    traced = tuple(p for p in range(n) if p not in kept)
    reduced = state.probabilities.sum(axis=traced) if traced else state.probabilities
    ascending = sorted(kept)
    return np.transpose(reduced, [ascending.index(p) for p in kept])


def deviation_from_maximally_mixed(reduced):
    """Frobenius distance from (trace / dim) * identity."""
    identity = np.eye(reduced.dimension)
    return float(np.linalg.norm(reduced.matrix - (reduced.trace / reduced.dimension) * identity, 'fro'))


def rank_bound(reduced, traced_size):
    """Upper bound 1 + D**|traced| on the rank of a marginal of a pure state."""
    return 1 + reduced.local_dimension ** traced_size


def full_rank_possible(n, traced_size, d):
    """Whether a marginal keeping n - traced_size particles can be full rank."""
    return d ** (n - traced_size) <= 1 + d ** traced_size
