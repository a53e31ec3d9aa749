from itertools import combinations

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from cwrdm.testing import sector_shapes, seeds
from statespace.models import StateVector, SystemShape
from statespace.states import basis_state, sample_state, superpose
from weights.builders import spin_model

from .serializers import ReducedDensitySerializer
from .traces import (
    deviation_from_maximally_mixed, diagonal, full_rank_possible, marginal_diagonal,
    partial_trace, rank_bound,
)


def bell_state():
    shape = SystemShape(model=spin_model(1), n=2)
    return superpose([basis_state(shape, (0, 1)), basis_state(shape, (1, 0))])


def w_state():
    shape = SystemShape(model=spin_model(1), n=3)
    return superpose([basis_state(shape, index) for index in [(0, 1, 1), (1, 0, 1), (1, 1, 0)]])


class PartialTraceTests(SimpleTestCase):
    def test_bell_marginal_is_maximally_mixed(self):
        reduced = partial_trace(bell_state(), [1])
        assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)
        self.assertEqual(reduced.kept, (0,))

    def test_product_state_stays_pure(self):
        state = basis_state(SystemShape(model=spin_model(1), n=2), (0, 1))
        reduced = partial_trace(state, [0])
        assert_allclose(reduced.matrix, [[0, 0], [0, 1]], atol=1e-12)
        self.assertEqual(reduced.rank(), 1)

    def test_entry_formula_with_outer_particles_traced(self):
        shape = SystemShape(model=spin_model(1), n=4)
        state = sample_state(shape, seed=4)
        a = state.tensor
        expected = np.einsum('iabj,icdj->abcd', a, a.conj()).reshape(4, 4)
        reduced = partial_trace(state, [0, 3])
        self.assertEqual(reduced.kept, (1, 2))
        assert_allclose(reduced.matrix, expected, atol=1e-12)

    def test_empty_and_full_subsets_rejected(self):
        state = bell_state()
        for traced in ([], [0, 1], [2], [0, 0]):
            with self.subTest(traced=traced):
                with self.assertRaises(ValidationError) as ctx:
                    partial_trace(state, traced)
                self.assertEqual(ctx.exception.code, 'bad_subset')

    @given(sector_shapes(max_two_j=3, max_n=5), seeds, st.data())
    def test_density_invariants(self, shape_and_weight, seed, data):
        shape, w = shape_and_weight
        state = sample_state(shape, w, seed)
        size = data.draw(st.integers(min_value=1, max_value=shape.n - 1))
        traced = data.draw(st.permutations(range(shape.n)))[:size]
        reduced = partial_trace(state, traced)
        self.assertTrue(reduced.is_hermitian())
        self.assertAlmostEqual(reduced.trace, state.norm_squared, places=12)
        self.assertTrue(reduced.is_psd())
        self.assertLessEqual(reduced.rank(), rank_bound(reduced, size))

    @given(sector_shapes(max_n=5), seeds)
    def test_iterated_tracing(self, shape_and_weight, seed):
        shape, _ = shape_and_weight
        state = sample_state(shape, seed=seed)
        d, n = shape.local_dimension, shape.n
        # trace particle 0, then particle n-1 out of the marginal directly
        once = partial_trace(state, [0]).matrix.reshape((d,) * (2 * (n - 1)))
        twice = np.trace(once, axis1=n - 2, axis2=2 * (n - 1) - 1).reshape(d ** (n - 2), d ** (n - 2))
        if n > 2:
            assert_allclose(partial_trace(state, [0, n - 1]).matrix, twice, atol=1e-12)
        else:
            self.assertAlmostEqual(float(np.real(twice.sum())), state.norm_squared, places=12)

    def test_rank_deficit_when_few_particles_traced(self):
        shape = SystemShape(model=spin_model(1), n=5)
        state = sample_state(shape, seed=9)
        reduced = partial_trace(state, [0])
        self.assertFalse(full_rank_possible(5, 1, 2))
        self.assertLess(reduced.rank(), reduced.dimension)
        self.assertTrue(full_rank_possible(4, 2, 2))


class DiagonalTests(SimpleTestCase):
    def test_bell(self):
        self.assertEqual(diagonal(partial_trace(bell_state(), [1])), {(0,): 0.5, (1,): 0.5})

    def test_product_state(self):
        state = basis_state(SystemShape(model=spin_model(2), n=3), (2, 0, 1))
        values = diagonal(partial_trace(state, [1]))
        self.assertEqual([k for k, v in values.items() if v], [(2, 1)])
        self.assertAlmostEqual(values[(2, 1)], 1.0)

    def test_w_state_pairs(self):
        values = diagonal(partial_trace(w_state(), [2]))
        for key, expected in {(1, 1): 1 / 3, (1, 0): 1 / 3, (0, 1): 1 / 3, (0, 0): 0.0}.items():
            self.assertAlmostEqual(values[key], expected, places=12)

    @given(sector_shapes(max_n=5), seeds, st.data())
    def test_marginal_diagonal_matches_partial_trace(self, shape_and_weight, seed, data):
        shape, w = shape_and_weight
        state = sample_state(shape, w, seed)
        size = data.draw(st.integers(min_value=1, max_value=shape.n - 1))
        kept = tuple(sorted(data.draw(st.permutations(range(shape.n)))[:size]))
        traced = [p for p in range(shape.n) if p not in kept]
        expected = np.array(list(diagonal(partial_trace(state, traced)).values()))
        assert_allclose(marginal_diagonal(state, kept).reshape(-1), expected, atol=1e-12)
        self.assertAlmostEqual(sum(diagonal(partial_trace(state, traced)).values()), 1.0, places=12)

    def test_marginal_diagonal_axis_order(self):
        state = basis_state(SystemShape(model=spin_model(1), n=3), (0, 1, 1))
        forward = marginal_diagonal(state, (0, 2))
        backward = marginal_diagonal(state, (2, 0))
        self.assertEqual(forward[0, 1], 1.0)
        self.assertEqual(backward[1, 0], 1.0)


class DeviationTests(SimpleTestCase):
    def test_bell(self):
        self.assertLess(deviation_from_maximally_mixed(partial_trace(bell_state(), [0])), 1e-12)

    def test_product_marginal(self):
        state = basis_state(SystemShape(model=spin_model(1), n=2), (0, 0))
        self.assertAlmostEqual(deviation_from_maximally_mixed(partial_trace(state, [1])), np.sqrt(0.5), places=12)

    @given(sector_shapes(max_n=4), seeds)
    def test_nonnegative(self, shape_and_weight, seed):
        shape, w = shape_and_weight
        state = sample_state(shape, w, seed)
        for traced in combinations(range(shape.n), 1):
            self.assertGreaterEqual(deviation_from_maximally_mixed(partial_trace(state, traced)), 0.0)


class ReducedDensitySerializerTests(SimpleTestCase):
    def test_round_trip(self):
        state = w_state()
        reduced = partial_trace(state, [1])
        data = ReducedDensitySerializer(reduced, context={'shape': state.shape}).data
        self.assertEqual(data['kept'], [1, 3])
        self.assertEqual(len(data['matrix']), 16)
        self.assertEqual(data['matrix'][5], [float(reduced.matrix[1, 1].real), 0.0])
        serializer = ReducedDensitySerializer(data=data)
        serializer.is_valid(raise_exception=True)
        loaded = serializer.save()
        assert_allclose(loaded.matrix, reduced.matrix)
        self.assertEqual(loaded.kept, (0, 2))

    def test_non_square_rejected(self):
        payload = {'model': {'weights': [[-1], [1]]}, 'N': 2, 'kept': [1], 'matrix': [[[1, 0], [0, 0]]]}
        serializer = ReducedDensitySerializer(data=payload)
        self.assertFalse(serializer.is_valid())
        self.assertIn('matrix', serializer.errors)

    def test_unnormalized_state_accepted(self):
        shape = SystemShape(model=spin_model(1), n=2)
        state = StateVector(shape=shape, amplitudes=[0, 2, 0, 0])
        self.assertFalse(state.is_normalized)
        self.assertAlmostEqual(partial_trace(state, [0]).trace, 4.0)
