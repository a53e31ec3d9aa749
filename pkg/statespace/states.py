"""Sector bases, sampling and weight decomposition of multi-particle states."""
import logging

import numpy as np
from django.core.exceptions import ValidationError

from weights.models import as_weight

from .models import StateVector, weight_grid

logger = logging.getLogger(__name__)


def weight_of(shape, index):
    """weight(I): the componentwise sum of the weights the multi-index selects."""
    index = shape.check_index(index)
    alphas = shape.model.weights
    return tuple(sum(alphas[i][c] for i in index) for c in range(shape.model.cartan_dim))


def _sector_mask(shape, w):
    w = as_weight(w, shape.model.cartan_dim)
    return np.all(weight_grid(shape) == np.array(w, dtype=np.int64), axis=-1)


def constant_weight_basis(shape, w):
    """Multi-indices of weight w in lexicographic order."""
    return [tuple(int(i) for i in index) for index in np.argwhere(_sector_mask(shape, w))]


def sector_dimensions(shape):
    """dim V_(w) for every w with a nonempty sector, keyed in ascending order of w."""
    flat = weight_grid(shape).reshape(-1, shape.model.cartan_dim)
    weights, counts = np.unique(flat, axis=0, return_counts=True)
    return {tuple(int(c) for c in w): int(n) for w, n in zip(weights, counts)}


def sample_state(shape, w=None, seed=0):
    """A normalized state with i.i.d. standard complex Gaussian amplitudes.

    The generator is numpy's PCG64 seeded with `seed`; all real parts are drawn
    first, then all imaginary parts, one per basis vector of the support.
    """
    if not 0 <= seed < 2 ** 64:
        raise ValidationError(
            'seed %(seed)s is not an unsigned 64-bit integer', code='bad_seed', params={'seed': seed},
        )
    rng = np.random.default_rng(seed)
    if w is None:
        basis, size = None, shape.dimension
    else:
        w = as_weight(w, shape.model.cartan_dim)
        basis = tuple(constant_weight_basis(shape, w))
        if not basis:
            raise ValidationError('The sector %(w)s of %(shape)s is empty', code='empty_sector', params={'w': w, 'shape': shape})
        size = len(basis)
    real = rng.standard_normal(size)
    imag = rng.standard_normal(size)
    amplitudes = (real + 1j * imag) / np.sqrt(2)
    amplitudes /= np.linalg.norm(amplitudes)
    logger.debug('sampled %d amplitudes on %s sector=%s seed=%s', size, shape, w, seed)
    return StateVector(
        shape=shape, amplitudes=amplitudes, basis=basis, support_weight=w,
        label='sample seed=%s' % seed,
    )


def basis_state(shape, index):
    """The product basis vector e_I."""
    index = shape.check_index(index)
    return StateVector(shape=shape, amplitudes=[1.0], basis=(index,), support_weight=weight_of(shape, index))


def superpose(states, coefficients=None, normalize=True):
    """sum_k c_k psi_k as a full-space state; declares a sector only if all inputs share it."""
    states = list(states)
    if not states:
        raise ValidationError('Nothing to superpose', code='bad_amplitudes')
    shape = states[0].shape
    if any(s.shape != shape for s in states):
        raise ValidationError('States live on different systems', code='shape_mismatch')
    if coefficients is None:
        coefficients = [1.0] * len(states)
    dense = sum(c * s.tensor for c, s in zip(coefficients, states)).reshape(-1)
    if normalize:
        norm = np.linalg.norm(dense)
        if norm == 0:
            raise ValidationError('Superposition vanishes', code='bad_amplitudes')
        dense = dense / norm
    supports = {s.support_weight for s in states}
    support = supports.pop() if len(supports) == 1 else None
    return StateVector(shape=shape, amplitudes=dense, support_weight=support)


def weight_components(state):
    """Orthogonal split into sector projections: w -> (p_w, psi_w / sqrt(p_w))."""
    shape = state.shape
    grid = weight_grid(shape)
    probabilities = state.probabilities
    components = {}
    for w in sector_dimensions(shape):
        mask = np.all(grid == np.array(w, dtype=np.int64), axis=-1)
        p = float(probabilities[mask].sum())
        if p == 0:
            continue
        basis = tuple(tuple(int(i) for i in index) for index in np.argwhere(mask))
        amplitudes = state.tensor[mask] / np.sqrt(p)
        components[w] = (p, StateVector(shape=shape, amplitudes=amplitudes, basis=basis, support_weight=w))
    return components


def cartan_expectation(state):
    """<psi| H |psi> per Cartan component, with H acting as the total weight."""
    grid = weight_grid(state.shape)
    return np.tensordot(state.probabilities, grid, axes=state.shape.n)
