"""Enumeration of the solution set of the constant-weight equation and its cosets."""
import logging
from functools import lru_cache
from math import factorial, prod

from django.core.exceptions import ValidationError
from sympy.utilities.iterables import multiset_permutations

from weights.builders import is_su2_irreducible
from weights.models import ConstraintSpec, as_weight

from .models import FrequencyMatrix, Partition

logger = logging.getLogger(__name__)


def _check_slots(slots):
    if slots < 1:
        raise ValidationError('slots must be at least 1', code='bad_slots')


def _frequency_vectors(scores, slots, target):
    """Frequency vectors n with sum n_r = slots and sum n_r * scores_r = target.

    Depth-first over basis positions, assigning n_0 first and from the largest
    count down, so results come out in descending lexicographic order. Each
    branch is pruned when the remaining slots cannot reach the remaining target
    using only the basis positions still unassigned.
    """
    d = len(scores)
    components = range(len(target))
    suffix_min = [None] * d
    suffix_max = [None] * d
    for r in reversed(range(d)):
        here = scores[r]
        if r == d - 1:
            suffix_min[r], suffix_max[r] = here, here
        else:
            suffix_min[r] = tuple(min(here[c], suffix_min[r + 1][c]) for c in components)
            suffix_max[r] = tuple(max(here[c], suffix_max[r + 1][c]) for c in components)

    found = []

    def descend(r, remaining, residual, prefix):
        if r == d - 1:
            if all(residual[c] == remaining * scores[r][c] for c in components):
                found.append(prefix + (remaining,))
            return
        lo, hi = suffix_min[r + 1], suffix_max[r + 1]
        for n in range(remaining, -1, -1):
            rest = tuple(residual[c] - n * scores[r][c] for c in components)
            k = remaining - n
            if all(k * lo[c] <= rest[c] <= k * hi[c] for c in components):
                descend(r + 1, k, rest, prefix + (n,))

    descend(0, slots, tuple(target), ())
    return found


def enumerate_partitions(model, slots, target):
    """One Partition per permutation coset of the solutions, canonically ordered."""
    _check_slots(slots)
    target = as_weight(target, model.cartan_dim)
    rows = _frequency_vectors(model.weights, slots, target)
    logger.debug('%s slots=%d target=%s: %d partitions', model, slots, target, len(rows))
    return [Partition(frequencies=row, model=model, slots=slots, target=target) for row in rows]


@lru_cache(maxsize=4096)
def has_solutions(model, slots, target):
    """Whether the solution set for (slots, target) is nonempty."""
    return bool(_frequency_vectors(model.weights, slots, as_weight(target, model.cartan_dim)))


def enumerate_tuples(model, slots, target):
    """All ordered tuples of basis positions whose weights sum to `target`, sorted."""
    tuples = []
    for partition in enumerate_partitions(model, slots, target):
        tuples.extend(tuple(p) for p in multiset_permutations(list(partition.basis_indices)))
    tuples.sort()
    return tuples


def multinomial_count(partition):
    """Number of ordered tuples in the coset: slots! / prod(n_r!)."""
    return factorial(partition.slots) // prod(factorial(n) for n in partition.frequencies)


def enumerate_constrained(model, slots, spec):
    _check_slots(slots)
    scores = spec.scores_for(model)
    target = as_weight(spec.target, len(scores[0]))
    rows = _frequency_vectors(scores, slots, target)
    return FrequencyMatrix(rows=tuple(rows), model=model, slots=slots, target=target, kind=spec.kind)


def frequency_matrix(model, slots, target):
    return enumerate_constrained(model, slots, ConstraintSpec(kind=ConstraintSpec.LINEAR, target=target))


def partition_count(model, slots, target):
    """Count partitions of an SU(2) irreducible with a generating-function recursion.

    Basis position r is graded by c_r = (alpha_r + two_j) / 2 = r. A multiset of
    `slots` positions has total weight `target` exactly when its grades sum to
    (target + slots * two_j) / 2, so the count is the coefficient of
    x**slots * t**total in prod_r 1 / (1 - x t**r), tracked in both variables.
    """
    _check_slots(slots)
    if not is_su2_irreducible(model):
        raise ValidationError(
            'partition_count only applies to SU(2) irreducibles; use enumerate_partitions',
            code='not_irreducible',
        )
    (target,) = as_weight(target, 1)
    two_j = model.dimension - 1
    doubled_total = target + slots * two_j
    if doubled_total < 0 or doubled_total % 2:
        return 0
    total = doubled_total // 2
    if total > slots * two_j:
        return 0
    # coefficients[k][g]: multisets of size k with grade sum g
    coefficients = [[0] * (total + 1) for _ in range(slots + 1)]
    coefficients[0][0] = 1
    for grade in range(model.dimension):
        for k in range(1, slots + 1):
            row, previous = coefficients[k], coefficients[k - 1]
            for g in range(grade, total + 1):
                row[g] += previous[g - grade]
    return coefficients[slots][total]
