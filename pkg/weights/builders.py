"""Constructors and queries for single-particle weight systems."""
import logging
from functools import lru_cache

from django.core.exceptions import ValidationError

from .models import WeightModel, as_weight

logger = logging.getLogger(__name__)

# Diagonal Cartan generators of the SU(3) defining representation, scaled to
# integers: H1 = diag(1, -1, 0), H2 = diag(1, 1, -2).
SU3_FUNDAMENTAL_WEIGHTS = ((-1, 1), (0, -2), (1, 1))


def spin_model(two_j):
    """The spin-j irreducible of SU(2); weights are 2m for m = -j..j, ascending."""
    if two_j < 0:
        raise ValidationError('two_j must be nonnegative', code='bad_spin')
    weights = tuple((m,) for m in range(-two_j, two_j + 1, 2))
    return WeightModel(cartan_dim=1, weights=weights, label='spin two_j=%d' % two_j)


def direct_sum(models):
    """Concatenate weight lists block by block, keeping each block's order."""
    models = list(models)
    if not models:
        raise ValidationError('direct_sum needs at least one model', code='empty_model')
    cartan_dims = {m.cartan_dim for m in models}
    if len(cartan_dims) != 1:
        raise ValidationError(
            'Cannot sum models with Cartan dimensions %(dims)s',
            code='cartan_mismatch',
            params={'dims': sorted(cartan_dims)},
        )
    if len(models) == 1:
        return models[0]
    weights = tuple(w for m in models for w in m.weights)
    label = ' + '.join(str(m) for m in models)
    return WeightModel(cartan_dim=models[0].cartan_dim, weights=weights, label=label)


def su3_fundamental():
    return WeightModel(cartan_dim=2, weights=SU3_FUNDAMENTAL_WEIGHTS, label='su3 fundamental')


def custom_model(weights, cartan_dim=None, label=''):
    """Any explicit integer weight list; scalar entries are promoted to 1-tuples."""
    weights = [as_weight(w) for w in weights]
    if cartan_dim is None:
        cartan_dim = len(weights[0]) if weights else 1
    model = WeightModel(cartan_dim=cartan_dim, weights=tuple(weights), label=label)
    if not model.is_balanced:
        logger.debug('custom model %s has weight sum %s', model, model.weight_sum)
    return model


def is_su2_irreducible(model):
    d = model.dimension
    return model.cartan_dim == 1 and model.weights == tuple((2 * r - (d - 1),) for r in range(d))


@lru_cache(maxsize=256)
def achievable_weights(model, n):
    """Sorted total weights w for which the N-particle sector V_(w) is nonempty."""
    if n < 1:
        raise ValidationError('Particle number must be positive', code='bad_particle_number')
    distinct = sorted(set(model.weights))
    totals = {model.zero()}
    for _ in range(n):
        totals = {tuple(t + a for t, a in zip(total, alpha)) for total in totals for alpha in distinct}
    return tuple(sorted(totals))
