"""Explicit coefficient vectors b_r = alpha_r - S / slots and their induction shifts."""
from fractions import Fraction
from functools import lru_cache

from django.core.exceptions import ValidationError

from weights.models import as_weight

from .models import BVector


def b_vector(model, slots, s):
    """One BVector per Cartan component, exact over the rationals."""
    if slots < 1:
        raise ValidationError('slots must be at least 1', code='bad_slots')
    return list(_b_vectors(model, slots, as_weight(s, model.cartan_dim)))


@lru_cache(maxsize=4096)
def _b_vectors(model, slots, s):
    return tuple(
        BVector(
            values=tuple(Fraction(alpha[c]) - Fraction(s[c], slots) for alpha in model.weights),
            model=model,
            slots=slots,
            target=s,
            component=c,
        )
        for c in range(model.cartan_dim)
    )


def induction_shift(model, n, m, s, s_prime):
    """Pass from the context (M, S) to (M - 1, S').

    Returns delta = S / (N - M) - S' / (N - M + 1) per component and the shifted
    vectors b' = b + delta, which coincide with b_vector(model, N - M + 1, S').
    """
    if not 1 <= m <= n - 1:
        raise ValidationError('M must satisfy 1 <= M <= N - 1', code='bad_context')
    s = as_weight(s, model.cartan_dim)
    s_prime = as_weight(s_prime, model.cartan_dim)
    slots, slots_prime = n - m, n - m + 1
    delta = tuple(Fraction(s[c], slots) - Fraction(s_prime[c], slots_prime) for c in range(model.cartan_dim))
    b_prime = [
        BVector(values=b.shifted(delta[b.component]), model=model, slots=slots_prime, target=s_prime, component=b.component)
        for b in b_vector(model, slots, s)
    ]
    return delta, b_prime
