"""Evaluation of the linear relations on marginal diagonals of a given state."""
import logging
from itertools import product

import numpy as np
from django.core.exceptions import ValidationError

from partitions.enumeration import has_solutions
from rdm.traces import marginal_diagonal, partial_trace
from statespace.states import weight_of
from weights.models import as_weight

from .coefficients import b_vector
from .models import RelationContext, RelationResidual, TraceOfTrace

logger = logging.getLogger(__name__)


def _positions(shape, positions):
    if positions is None:
        return tuple(range(shape.n))
    positions = tuple(int(p) for p in positions)
    if sorted(positions) != list(range(shape.n)):
        raise ValidationError('positions must be a permutation of the particles', code='bad_subset')
    return positions


def relation_context(shape, m, i0, w, positions=None):
    if not 1 <= m <= shape.n - 1:
        raise ValidationError('M must satisfy 1 <= M <= N - 1, got %(m)s', code='bad_context', params={'m': m})
    i0 = tuple(int(i) for i in i0)
    if len(i0) != m or any(not 0 <= i < shape.local_dimension for i in i0):
        raise ValidationError('I0 %(i0)s is not an index over %(m)s particles', code='bad_index', params={'i0': i0, 'm': m})
    w = as_weight(w, shape.model.cartan_dim)
    alphas = shape.model.weights
    s = tuple(w[c] - sum(alphas[i][c] for i in i0) for c in range(len(w)))
    return RelationContext(
        shape=shape, w=w, m=m, i0=i0, positions=_positions(shape, positions), s=s,
        feasible=has_solutions(shape.model, shape.n - m, s),
    )


def _free_site_totals(state, context):
    """T_r = sum over free sites * of the diagonal entry at (I0, r)."""
    totals = np.zeros(state.shape.local_dimension)
    for site in context.free_sites:
        totals += marginal_diagonal(state, context.fixed_sites + (site,))[context.i0]
    return totals


def _evaluate(context, totals):
    bs = tuple(b_vector(context.shape.model, context.slots, context.s))
    if not context.feasible:
        zeros = (0.0,) * len(bs)
        return RelationResidual(context=context, b=bs, residual=zeros, relative=zeros)
    residual, relative = [], []
    for b in bs:
        coefficients = b.as_floats()
        value = abs(float(coefficients @ totals))
        scale = float(np.abs(coefficients) @ totals)
        residual.append(value)
        relative.append(value / scale if scale > 0 else 0.0)
    return RelationResidual(context=context, b=bs, residual=tuple(residual), relative=tuple(relative))


def _check_support(state, w):
    if state.support_weight is not None and state.support_weight != w:
        raise ValidationError(
            'State is declared in sector %(declared)s, not %(w)s', code='support_mismatch',
            params={'declared': state.support_weight, 'w': w},
        )


def relation_residual(state, m, i0, w, positions=None):
    """|sum_r b_r sum_* rho^{fixed sites, *}_(I0; r)| per Cartan component.

    A context whose solution set is empty is reported as vacuous with zero
    residual.
    """
    w = as_weight(w, state.shape.model.cartan_dim)
    _check_support(state, w)
    context = relation_context(state.shape, m, i0, w, positions)
    if not context.feasible:
        logger.debug('vacuous context %s', context)
        return _evaluate(context, None)
    return _evaluate(context, _free_site_totals(state, context))


def relation_sweep(state, w, m_values=None, positions=None):
    """Residuals for every (M, I0), M ascending and I0 lexicographic.

    Diagonals are computed once per (M, *) and shared across all I0.
    """
    shape = state.shape
    w = as_weight(w, shape.model.cartan_dim)
    _check_support(state, w)
    positions = _positions(shape, positions)
    m_values = range(1, shape.n) if m_values is None else m_values
    d = shape.local_dimension
    results = []
    for m in m_values:
        fixed = positions[:m]
        totals = sum(marginal_diagonal(state, fixed + (site,)) for site in positions[m:])
        for i0 in product(range(d), repeat=m):
            context = relation_context(shape, m, i0, w, positions)
            results.append(_evaluate(context, totals[i0] if context.feasible else None))
    logger.debug('%s: swept %d contexts', state, len(results))
    return results


def trace_of_trace_check(state, pivot=0):
    """Compare sum over partners of the pivot's pair diagonals with (N-1) times its single-site diagonal."""
    n = state.shape.n
    if not 0 <= pivot < n:
        raise ValidationError('pivot %(pivot)s out of range', code='bad_subset', params={'pivot': pivot})
    others = tuple(p for p in range(n) if p != pivot)
    lhs = sum(marginal_diagonal(state, (pivot, q)).sum(axis=1) for q in others)
    single = partial_trace(state, others)
    rhs = (n - 1) * np.real(np.diagonal(single.matrix))
    return TraceOfTrace(lhs=lhs, rhs=rhs)
