"""Exact rational rank and null-space analysis of frequency matrices."""
import logging
from fractions import Fraction

from django.core.exceptions import ValidationError

from .enumeration import enumerate_constrained
from .models import RankReport

logger = logging.getLogger(__name__)


def _to_fraction(value):
    numerator, denominator = value.as_numer_denom()
    return Fraction(int(numerator), int(denominator))


def null_space(matrix):
    """Exact basis of {b : A b = 0}, one tuple of Fractions per basis vector."""
    return [tuple(_to_fraction(v) for v in vector) for vector in matrix.as_sympy().nullspace()]


def rank_analysis(matrix):
    """Ranks of A and of A with an all-ones row, plus a witness b when they differ.

    The witness is the first null-space basis vector with a nonzero sum; one
    exists exactly when the all-ones vector is outside the row space of A.
    """
    if matrix.is_empty:
        raise ValidationError('rank_analysis needs at least one partition', code='empty_matrix')
    a = matrix.as_sympy()
    rank_a = a.rank()
    rank_a_tilde = matrix.augmented().rank()
    witness = None
    if rank_a_tilde == rank_a + 1:
        for vector in null_space(matrix):
            if sum(vector) != 0:
                witness = vector
                break
    logger.debug('%s: rank_A=%d rank_A_tilde=%d', matrix, rank_a, rank_a_tilde)
    return RankReport(rank_a=rank_a, rank_a_tilde=rank_a_tilde, witness_b=witness)


def annihilates(b, rows):
    """Exact check that sum_r b_r n_r vanishes on every row."""
    return all(sum(Fraction(x) * n for x, n in zip(b, row)) == 0 for row in rows)


def constrained_witness(model, slots, spec):
    """A b with A b = 0 and nonzero sum for an arbitrary admissibility constraint, or None."""
    matrix = enumerate_constrained(model, slots, spec)
    if matrix.is_empty:
        return None
    return rank_analysis(matrix).witness_b
