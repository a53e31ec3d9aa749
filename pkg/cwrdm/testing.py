"""Shared hypothesis profiles and strategies for the app test suites."""
import os

from hypothesis import settings, strategies as st

settings.register_profile('default', max_examples=25, deadline=None)
settings.register_profile('ci', max_examples=60, deadline=None)
settings.register_profile('thorough', max_examples=300, deadline=None)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))

seeds = st.integers(min_value=0, max_value=2**63 - 1)
small_two_j = st.integers(min_value=1, max_value=3)


@st.composite
def sector_shapes(draw, max_two_j=2, min_n=2, max_n=5):
    """(SystemShape, w) pairs with a nonempty sector, kept at desk scale."""
    from statespace.models import SystemShape
    from weights.builders import achievable_weights, spin_model

    two_j = draw(st.integers(min_value=1, max_value=max_two_j))
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    model = spin_model(two_j)
    w = draw(st.sampled_from(achievable_weights(model, n)))
    return SystemShape(model=model, n=n), w
