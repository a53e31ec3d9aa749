"""Constant-weight liftability of two-body marginal families."""
import logging
from itertools import combinations

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from rdm.traces import partial_trace
from statespace.states import weight_components
from weights.builders import achievable_weights
from weights.models import as_weight

from .models import CertificateRow, CertificateVerdict, MarginalFamily

logger = logging.getLogger(__name__)


def _pair_matrix(state, p, q):
    n = state.shape.n
    if n == 2:
        psi = state.tensor.reshape(-1)
        return np.outer(psi, psi.conj())
    return partial_trace(state, [k for k in range(n) if k not in (p, q)]).matrix


def family_from_state(state, pivot=None):
    """Every pair marginal of `state`, or only the pairs containing `pivot`."""
    n = state.shape.n
    if pivot is None:
        pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    else:
        pairs = [tuple(sorted((pivot, q))) for q in range(n) if q != pivot]
    return MarginalFamily(shape=state.shape, entries={pair: _pair_matrix(state, *pair) for pair in pairs})


def _require_pairs(family, pivot):
    if not 0 <= pivot < family.shape.n:
        raise ValidationError('pivot %(pivot)s out of range', code='bad_subset', params={'pivot': pivot})
    missing = family.missing_pairs(pivot)
    if missing:
        raise ValidationError(
            'Family lacks the pairs %(missing)s', code='missing_pairs',
            params={'missing': ', '.join('{%d,%d}' % (p + 1, q + 1) for p, q in missing)},
        )


def trivial_compatibility(family, pivot):
    """Largest entrywise disagreement between any two of the pivot's single-site marginals."""
    _require_pairs(family, pivot)
    singles = [family.single_site(pivot, q) for q in range(family.shape.n) if q != pivot]
    return max((float(np.max(np.abs(a - b))) for a, b in combinations(singles, 2)), default=0.0)


def pivot_table(family, pivot):
    """T[i0, r] = sum over partners q of the diagonal entry ((i0, r), (i0, r)) of the (pivot, q) marginal."""
    d = family.shape.local_dimension
    table = np.zeros((d, d))
    for q in range(family.shape.n):
        if q != pivot:
            table += np.real(np.diagonal(family.matrix(pivot, q))).reshape(d, d)
    return table


def constant_weight_certificate(family, pivots=None, tolerance=None, mass_tolerance=None):
    """Decide whether the family can descend from a state of a single weight.

    For each pivot and each pivot index I0 with nonzero mass sum_r T_r, the
    relation sum_r b_r T_r = 0 with b_r = alpha_r - (w0 - alpha_I0) / (N - 1)
    is solved for w0. The family is consistent when all candidates agree,
    round to an integer vector and name an achievable sector.
    """
    tolerance = settings.CWRDM['CERTIFY_TOLERANCE'] if tolerance is None else tolerance
    mass_tolerance = settings.CWRDM['NORM_TOLERANCE'] if mass_tolerance is None else mass_tolerance
    shape = family.shape
    if pivots is None:
        pivots = range(shape.n)
    elif isinstance(pivots, int):
        pivots = [pivots]
    pivots = list(pivots)
    for pivot in pivots:
        _require_pairs(family, pivot)

    alphas = shape.model.as_array().astype(float)
    n = shape.n
    tables = {pivot: pivot_table(family, pivot) for pivot in pivots}
    raw = []
    for pivot in pivots:
        for i0, totals in enumerate(tables[pivot]):
            mass = float(totals.sum())
            candidate = alphas[i0] + (n - 1) * (alphas.T @ totals) / mass if mass > mass_tolerance else None
            raw.append((pivot, i0, mass, totals, candidate))

    candidates = np.array([c for *_, c in raw if c is not None])
    if not len(candidates):
        rows = tuple(CertificateRow(pivot, i0, mass, None, None) for pivot, i0, mass, _, _ in raw)
        logger.info('certificate underdetermined: no pivot population')
        return CertificateVerdict(CertificateVerdict.UNDERDETERMINED, None, 0.0, 0.0, rows)

    center = candidates.mean(axis=0)
    spread = float(np.max(candidates.max(axis=0) - candidates.min(axis=0)))
    snapped = tuple(int(v) for v in np.rint(center))
    snap_distance = float(np.max(np.abs(center - np.array(snapped))))
    consistent = spread <= tolerance and snap_distance <= tolerance and snapped in achievable_weights(shape.model, n)
    reference = np.array(snapped, dtype=float) if consistent else center

    rows = []
    for pivot, i0, mass, totals, candidate in raw:
        if candidate is None:
            rows.append(CertificateRow(pivot, i0, mass, None, None))
            continue
        b = alphas - (reference - alphas[i0]) / (n - 1)
        residual = tuple(float(abs(v)) for v in b.T @ totals)
        rows.append(CertificateRow(pivot, i0, mass, tuple(float(c) for c in candidate), residual))

    status = CertificateVerdict.CONSISTENT if consistent else CertificateVerdict.INCONSISTENT
    logger.info('certificate %s: spread %.3e, snap distance %.3e', status, spread, snap_distance)
    return CertificateVerdict(status, snapped if consistent else None, spread, snap_distance, tuple(rows))


def weight_variance(state, w0):
    """Mean offset and variance of the total weight around w0, from the sector decomposition."""
    w0 = np.array(as_weight(w0, state.shape.model.cartan_dim), dtype=float)
    if not state.is_normalized:
        logger.warning('%s is not normalized (norm^2 = %.15f)', state, state.norm_squared)
    mean_gap = np.zeros_like(w0)
    variance = np.zeros_like(w0)
    for w, (p, _) in weight_components(state).items():
        gap = np.array(w, dtype=float) - w0
        mean_gap += p * gap
        variance += p * gap ** 2
    return mean_gap, variance
