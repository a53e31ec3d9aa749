from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from cwrdm.testing import small_two_j  # noqa: F401  (loads the hypothesis profile)
from .builders import (
    SU3_FUNDAMENTAL_WEIGHTS, achievable_weights, custom_model, direct_sum,
    is_su2_irreducible, spin_model, su3_fundamental,
)
from .models import ConstraintSpec, WeightModel
from .serializers import WeightModelSerializer


class SpinModelTests(SimpleTestCase):
    def test_doublet(self):
        model = spin_model(1)
        self.assertEqual(model.weights, ((-1,), (1,)))
        self.assertEqual(model.dimension, 2)
        self.assertEqual(model.cartan_dim, 1)

    def test_spin_one(self):
        self.assertEqual(spin_model(2).weights, ((-2,), (0,), (2,)))

    def test_trivial(self):
        self.assertEqual(spin_model(0).weights, ((0,),))

    def test_negative_spin_rejected(self):
        with self.assertRaises(ValidationError):
            spin_model(-1)

    @given(st.integers(min_value=0, max_value=12))
    def test_weights_are_balanced_and_symmetric(self, two_j):
        model = spin_model(two_j)
        self.assertTrue(model.is_balanced)
        self.assertEqual(sorted(w[0] for w in model.weights), sorted(-w[0] for w in model.weights))
        self.assertTrue(is_su2_irreducible(model))

    def test_spin_units(self):
        self.assertEqual(WeightModel.in_spin_units(3), Fraction(3, 2))
        self.assertEqual(WeightModel.in_spin_units((2, -1)), (Fraction(1), Fraction(-1, 2)))


class DirectSumTests(SimpleTestCase):
    def test_two_doublets(self):
        model = direct_sum([spin_model(1), spin_model(1)])
        self.assertEqual(model.weights, ((-1,), (1,), (-1,), (1,)))
        self.assertEqual(model.dimension, 4)
        self.assertFalse(is_su2_irreducible(model))

    def test_single_summand_is_identity(self):
        self.assertEqual(direct_sum([spin_model(0)]).weights, ((0,),))

    def test_keeps_block_order(self):
        model = direct_sum([spin_model(2), spin_model(0)])
        self.assertEqual(model.weights, ((-2,), (0,), (2,), (0,)))
        self.assertTrue(model.is_balanced)

    def test_associative(self):
        a, b, c = spin_model(1), spin_model(2), spin_model(0)
        self.assertEqual(
            direct_sum([direct_sum([a, b]), c]).weights,
            direct_sum([a, direct_sum([b, c])]).weights,
        )

    def test_cartan_mismatch_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            direct_sum([spin_model(1), su3_fundamental()])
        self.assertEqual(ctx.exception.code, 'cartan_mismatch')


class Su3Tests(SimpleTestCase):
    def test_fundamental(self):
        model = su3_fundamental()
        self.assertEqual(model.dimension, 3)
        self.assertEqual(model.cartan_dim, 2)
        self.assertEqual(model.weight_sum, (0, 0))
        self.assertEqual(len(set(model.weights)), 3)
        self.assertEqual(model.weights, SU3_FUNDAMENTAL_WEIGHTS)
        self.assertEqual(list(model.weights), sorted(model.weights))

    def test_achievable_weights_respect_triality(self):
        model = su3_fundamental()
        self.assertIn((0, 0), achievable_weights(model, 3))
        self.assertNotIn((0, 0), achievable_weights(model, 4))


class CustomModelTests(SimpleTestCase):
    def test_scalar_weights_promoted(self):
        model = custom_model([3, -1, -1], label='unbalanced')
        self.assertEqual(model.weights, ((3,), (-1,), (-1,)))
        self.assertTrue(model.is_balanced)

    def test_unbalanced_reported(self):
        self.assertFalse(custom_model([1, 1]).is_balanced)

    def test_length_mismatch_rejected(self):
        with self.assertRaises(ValidationError):
            WeightModel(cartan_dim=2, weights=((1, 0), (1,)))

    def test_empty_rejected(self):
        with self.assertRaises(ValidationError):
            WeightModel(cartan_dim=1, weights=())


class AchievableWeightsTests(SimpleTestCase):
    def test_doublet(self):
        self.assertEqual(achievable_weights(spin_model(1), 3), ((-3,), (-1,), (1,), (3,)))

    @given(small_two_j, st.integers(min_value=1, max_value=5))
    def test_spin_range(self, two_j, n):
        weights = [w[0] for w in achievable_weights(spin_model(two_j), n)]
        self.assertEqual(weights, list(range(-two_j * n, two_j * n + 1, 2)))


class ConstraintSpecTests(SimpleTestCase):
    def test_quadratic_scores(self):
        spec = ConstraintSpec(kind=ConstraintSpec.QUADRATIC, target=8)
        self.assertEqual(spec.scores_for(spin_model(2)), ((4,), (0,), (4,)))

    def test_linear_target_length_checked(self):
        spec = ConstraintSpec(kind=ConstraintSpec.LINEAR, target=(1,))
        with self.assertRaises(ValidationError):
            spec.scores_for(su3_fundamental())

    def test_custom_needs_scores(self):
        with self.assertRaises(ValidationError):
            ConstraintSpec(kind=ConstraintSpec.CUSTOM, target=1)

    def test_unknown_kind(self):
        with self.assertRaises(ValidationError):
            ConstraintSpec(kind='cubic', target=1)


class WeightModelSerializerTests(SimpleTestCase):
    def test_round_trip(self):
        data = WeightModelSerializer(su3_fundamental()).data
        self.assertEqual(data['weights'], [[-1, 1], [0, -2], [1, 1]])
        serializer = WeightModelSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), su3_fundamental())

    def test_cartan_dim_inferred(self):
        serializer = WeightModelSerializer(data={'weights': [[-1], [1]]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().weights, spin_model(1).weights)

    def test_ragged_weights_invalid(self):
        serializer = WeightModelSerializer(data={'cartan_dim': 2, 'weights': [[1, 0], [1]]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('weights', serializer.errors)
