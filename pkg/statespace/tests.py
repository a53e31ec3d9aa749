import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose, assert_array_equal
from rest_framework import serializers

from cwrdm.testing import sector_shapes, seeds
from partitions.enumeration import enumerate_tuples
from weights.builders import spin_model, su3_fundamental

from .models import StateVector, SystemShape
from .serializers import StateSerializer
from .states import (
    basis_state, cartan_expectation, constant_weight_basis, sample_state, sector_dimensions,
    superpose, weight_components, weight_of,
)


class SystemShapeTests(SimpleTestCase):
    def test_single_particle_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            SystemShape(model=spin_model(1), n=1)
        self.assertEqual(ctx.exception.code, 'too_few_particles')

    def test_dimensions(self):
        shape = SystemShape(model=spin_model(2), n=4)
        self.assertEqual(shape.dimension, 81)
        self.assertEqual(shape.tensor_shape, (3, 3, 3, 3))


class WeightOfTests(SimpleTestCase):
    def test_doublet(self):
        self.assertEqual(weight_of(SystemShape(model=spin_model(1), n=3), (1, 1, 0)), (1,))

    def test_all_lowest(self):
        self.assertEqual(weight_of(SystemShape(model=spin_model(2), n=5), (0,) * 5), (-10,))

    def test_vector_weights_double(self):
        model = su3_fundamental()
        shape = SystemShape(model=model, n=2)
        for r, alpha in enumerate(model.weights):
            self.assertEqual(weight_of(shape, (r, r)), tuple(2 * a for a in alpha))

    def test_out_of_range(self):
        with self.assertRaises(ValidationError):
            weight_of(SystemShape(model=spin_model(1), n=2), (0, 2))


class ConstantWeightBasisTests(SimpleTestCase):
    def test_one_down_two_up(self):
        shape = SystemShape(model=spin_model(1), n=3)
        self.assertEqual(constant_weight_basis(shape, 1), [(0, 1, 1), (1, 0, 1), (1, 1, 0)])

    def test_half_filling(self):
        self.assertEqual(len(constant_weight_basis(SystemShape(model=spin_model(1), n=4), 0)), 6)

    def test_empty_sector(self):
        self.assertEqual(constant_weight_basis(SystemShape(model=spin_model(1), n=2), 3), [])

    @given(sector_shapes(max_two_j=2, max_n=5))
    def test_matches_ordered_tuples(self, shape_and_weight):
        shape, w = shape_and_weight
        self.assertEqual(constant_weight_basis(shape, w), enumerate_tuples(shape.model, shape.n, w))

    @given(st.integers(min_value=0, max_value=3), st.integers(min_value=2, max_value=5))
    def test_sectors_partition_the_basis(self, two_j, n):
        shape = SystemShape(model=spin_model(two_j), n=n)
        self.assertEqual(sum(sector_dimensions(shape).values()), shape.dimension)


class SampleStateTests(SimpleTestCase):
    def setUp(self):
        self.shape = SystemShape(model=spin_model(1), n=4)

    @given(seeds)
    def test_deterministic(self, seed):
        first = sample_state(self.shape, 0, seed)
        second = sample_state(self.shape, 0, seed)
        assert_array_equal(first.amplitudes, second.amplitudes)

    @given(sector_shapes(), seeds)
    def test_normalized_and_supported(self, shape_and_weight, seed):
        shape, w = shape_and_weight
        state = sample_state(shape, w, seed)
        self.assertTrue(state.is_normalized)
        self.assertEqual(state.support_weight, w)
        grid_weights = {weight_of(shape, index) for index, _ in state.items()}
        self.assertEqual(grid_weights, {w})
        mask = np.ones(shape.tensor_shape, dtype=bool)
        for index in constant_weight_basis(shape, w):
            mask[index] = False
        self.assertFalse(np.any(state.tensor[mask]))

    def test_full_space(self):
        state = sample_state(self.shape, seed=3)
        self.assertIsNone(state.support_weight)
        self.assertEqual(state.amplitudes.size, 16)
        self.assertAlmostEqual(state.norm_squared, 1.0, places=12)

    def test_empty_sector_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            sample_state(self.shape, 6, 0)
        self.assertEqual(ctx.exception.code, 'empty_sector')

    def test_seed_out_of_range_rejected(self):
        for seed in (-1, 2 ** 64):
            with self.subTest(seed=seed):
                with self.assertRaises(ValidationError) as ctx:
                    sample_state(self.shape, 0, seed)
                self.assertEqual(ctx.exception.code, 'bad_seed')

    def test_declared_support_enforced(self):
        with self.assertRaises(ValidationError) as ctx:
            StateVector(shape=self.shape, amplitudes=[1.0], basis=((1, 1, 1, 1),), support_weight=(0,))
        self.assertEqual(ctx.exception.code, 'support_mismatch')


class WeightComponentsTests(SimpleTestCase):
    def setUp(self):
        self.shape = SystemShape(model=spin_model(1), n=2)

    def test_constant_weight_input(self):
        state = sample_state(SystemShape(model=spin_model(2), n=3), 2, 5)
        components = weight_components(state)
        self.assertEqual(list(components), [(2,)])
        p, component = components[(2,)]
        self.assertAlmostEqual(p, 1.0, places=12)
        assert_allclose(component.tensor, state.tensor, atol=1e-12)

    def test_two_sector_split(self):
        state = superpose([basis_state(self.shape, (1, 1)), basis_state(self.shape, (0, 0))])
        components = weight_components(state)
        self.assertEqual(sorted(components), [(-2,), (2,)])
        for p, _ in components.values():
            self.assertAlmostEqual(p, 0.5, places=12)
        self.assertIsNone(state.support_weight)

    def test_zero_state(self):
        state = StateVector(shape=self.shape, amplitudes=np.zeros(4))
        self.assertEqual(weight_components(state), {})

    @given(sector_shapes(max_n=4), seeds)
    def test_idempotent(self, shape_and_weight, seed):
        shape, w = shape_and_weight
        state = sample_state(shape, seed=seed)
        for p, component in weight_components(state).values():
            again = weight_components(component)
            self.assertEqual(list(again), [component.support_weight])
            assert_allclose(again[component.support_weight][1].tensor, component.tensor, atol=1e-12)

    @given(sector_shapes(max_n=4), seeds)
    def test_masses_sum_to_norm(self, shape_and_weight, seed):
        shape, _ = shape_and_weight
        state = sample_state(shape, seed=seed)
        total = sum(p for p, _ in weight_components(state).values())
        self.assertAlmostEqual(total, state.norm_squared, places=12)


class CartanExpectationTests(SimpleTestCase):
    def test_sector_state(self):
        shape = SystemShape(model=su3_fundamental(), n=3)
        state = sample_state(shape, (0, 0), 1)
        assert_allclose(cartan_expectation(state), [0.0, 0.0], atol=1e-12)

    def test_equal_superposition(self):
        shape = SystemShape(model=spin_model(1), n=2)
        state = superpose([basis_state(shape, (1, 1)), basis_state(shape, (0, 0))], [1.0, np.sqrt(3)])
        assert_allclose(cartan_expectation(state), [0.25 * 2 + 0.75 * -2], atol=1e-12)


class StateSerializerTests(SimpleTestCase):
    def test_round_trip_sector_state(self):
        state = sample_state(SystemShape(model=spin_model(1), n=3), 1, 11)
        data = StateSerializer(state).data
        self.assertEqual(data['support_weight'], [1])
        self.assertEqual(data['amplitudes'][0]['index'], [1, 2, 2])
        serializer = StateSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        loaded = serializer.save()
        assert_allclose(loaded.tensor, state.tensor)
        self.assertEqual(loaded.support_weight, (1,))

    def test_full_space_state(self):
        payload = {
            'model': {'cartan_dim': 1, 'weights': [[-1], [1]]},
            'N': 2,
            'amplitudes': [{'index': [1, 2], 're': 0.6}, {'index': [2, 1], 're': 0.0, 'im': 0.8}],
        }
        serializer = StateSerializer(data=payload)
        serializer.is_valid(raise_exception=True)
        state = serializer.save()
        self.assertIsNone(state.support_weight)
        self.assertEqual(state.tensor[0, 1], 0.6)
        self.assertEqual(state.tensor[1, 0], 0.8j)

    def test_bad_index(self):
        payload = {
            'model': {'weights': [[-1], [1]]},
            'N': 2,
            'amplitudes': [{'index': [1, 3], 're': 1.0}],
        }
        serializer = StateSerializer(data=payload)
        self.assertFalse(serializer.is_valid())
        self.assertIn('amplitudes', serializer.errors)

    def test_off_sector_amplitude(self):
        payload = {
            'model': {'weights': [[-1], [1]]},
            'N': 2,
            'support_weight': [0],
            'amplitudes': [{'index': [2, 2], 're': 1.0}],
        }
        serializer = StateSerializer(data=payload)
        serializer.is_valid(raise_exception=True)
        with self.assertRaises(serializers.ValidationError):
            serializer.save()
