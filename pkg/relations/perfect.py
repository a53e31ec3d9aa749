"""Perfect-tensor diagnostics and the constant-weight obstruction to them."""
import logging
from itertools import combinations, product
from math import ceil

from django.core.exceptions import ValidationError

from partitions.enumeration import has_solutions
from rdm.traces import deviation_from_maximally_mixed, partial_trace
from weights.builders import achievable_weights
from weights.models import as_weight

from .coefficients import b_vector
from .models import ImpossibilityWitness, PerfectDeviation

logger = logging.getLogger(__name__)


def perfect_deviation(state):
    """Deviation of every marginal obtained by tracing out at least half of the particles."""
    n = state.shape.n
    table = {}
    for size in range(ceil(n / 2), n):
        for traced in combinations(range(n), size):
            table[traced] = deviation_from_maximally_mixed(partial_trace(state, traced))
    return PerfectDeviation(table=table)


def _witness_at(model, n, w, i0):
    m = len(i0)
    s = tuple(w[c] - sum(model.weights[i][c] for i in i0) for c in range(model.cartan_dim))
    if not any(s) or not has_solutions(model, n - m, s):
        return None
    for b in b_vector(model, n - m, s):
        if s[b.component] != 0:
            return ImpossibilityWitness(m=m, i0=i0, s=s, b=b)
    return None


def impossibility_witness(model, n, w, i0=None):
    """A feasible context whose b has a nonzero sum, ruling out a perfect tensor in V_(w).

    Without `i0`, M runs upward from 1 while M + 1 <= N // 2 and I0 runs over
    basis indices lexicographically; the first context with S != 0 in some
    component and a nonempty solution set is returned.
    """
    if n < 4:
        raise ValidationError(
            'Perfect tensors are only obstructed for N >= 4 (M + 1 <= N // 2 needs M >= 1)',
            code='too_few_particles',
        )
    w = as_weight(w, model.cartan_dim)
    if w not in achievable_weights(model, n):
        raise ValidationError('The sector %(w)s is empty for N=%(n)s', code='empty_sector', params={'w': w, 'n': n})
    if i0 is not None:
        i0 = tuple(int(i) for i in i0)
        if not 1 <= len(i0) <= n // 2 - 1 or any(not 0 <= i < model.dimension for i in i0):
            raise ValidationError('I0 %(i0)s does not give 1 <= M <= N // 2 - 1', code='bad_context', params={'i0': i0})
        candidates = [i0]
    else:
        candidates = (i for m in range(1, n // 2) for i in product(range(model.dimension), repeat=m))
    for candidate in candidates:
        witness = _witness_at(model, n, w, candidate)
        if witness is not None:
            logger.debug('witness for %s N=%d w=%s: %s', model, n, w, witness)
            return witness
    raise ValidationError('No obstruction found for %(w)s at N=%(n)s', code='no_witness', params={'w': w, 'n': n})
