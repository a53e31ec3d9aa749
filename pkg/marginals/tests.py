import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given
from numpy.testing import assert_allclose
from rest_framework import serializers

from cwrdm.testing import sector_shapes, seeds
from statespace.models import SystemShape
from statespace.states import basis_state, sample_state, superpose
from weights.builders import achievable_weights, spin_model, su3_fundamental

from .certificate import (
    constant_weight_certificate, family_from_state, pivot_table, trivial_compatibility, weight_variance,
)
from .models import CertificateVerdict, MarginalFamily
from .serializers import MarginalFamilySerializer


def two_sector_state(shape, w, other, seed):
    return superpose([sample_state(shape, w, seed), sample_state(shape, other, seed + 1000)])


class FamilyFromStateTests(SimpleTestCase):
    @given(sector_shapes(min_n=3, max_n=5), seeds)
    def test_traces_and_consistency(self, shape_and_weight, seed):
        shape, w = shape_and_weight
        family = family_from_state(sample_state(shape, w, seed))
        self.assertEqual(len(family.pairs), shape.n * (shape.n - 1) // 2)
        for matrix in family.entries.values():
            self.assertAlmostEqual(float(np.trace(matrix).real), 1.0, places=12)
        self.assertLessEqual(trivial_compatibility(family, 0), 1e-12)
        self.assertEqual(family.problems(), [])

    def test_pivot_star(self):
        state = sample_state(SystemShape(model=spin_model(1), n=4), 0, 3)
        family = family_from_state(state, pivot=2)
        self.assertEqual(family.pairs, ((0, 2), (1, 2), (2, 3)))

    def test_two_particles(self):
        shape = SystemShape(model=spin_model(1), n=2)
        family = family_from_state(sample_state(shape, 0, 1))
        self.assertEqual(family.pairs, ((0, 1),))
        self.assertEqual(trivial_compatibility(family, 0), 0.0)

    def test_matrix_in_either_order(self):
        state = basis_state(SystemShape(model=spin_model(1), n=3), (0, 1, 1))
        family = family_from_state(state)
        forward = family.matrix(0, 1)
        backward = family.matrix(1, 0)
        self.assertEqual(forward[1, 1], 1.0)
        self.assertEqual(backward[2, 2], 1.0)


class TrivialCompatibilityTests(SimpleTestCase):
    def test_replaced_pair_mismatches(self):
        shape = SystemShape(model=spin_model(1), n=3)
        family = family_from_state(basis_state(shape, (0, 0, 0)))
        foreign = family_from_state(basis_state(shape, (1, 1, 1)))
        entries = dict(family.entries)
        entries[(0, 1)] = foreign.entries[(0, 1)]
        tampered = MarginalFamily(shape=shape, entries=entries)
        self.assertAlmostEqual(trivial_compatibility(tampered, 0), 1.0)

    def test_partners_compared_pairwise(self):
        shape = SystemShape(model=spin_model(1), n=4)
        down = family_from_state(basis_state(shape, (0, 0, 0, 0))).entries
        up = family_from_state(basis_state(shape, (1, 1, 1, 1))).entries
        entries = dict(down)
        entries[(0, 1)] = (down[(0, 1)] + up[(0, 1)]) / 2
        entries[(0, 3)] = up[(0, 3)]
        family = MarginalFamily(shape=shape, entries=entries)
        self.assertAlmostEqual(trivial_compatibility(family, 0), 1.0)

    def test_missing_pairs_listed(self):
        shape = SystemShape(model=spin_model(1), n=4)
        family = family_from_state(sample_state(shape, 0, 0), pivot=0)
        with self.assertRaises(ValidationError) as ctx:
            trivial_compatibility(family, 1)
        self.assertEqual(ctx.exception.code, 'missing_pairs')
        self.assertIn('{2,3}', ctx.exception.messages[0])


class CertificateTests(SimpleTestCase):
    def test_sector_states_are_consistent(self):
        for two_j, n in [(1, 3), (1, 4), (2, 4), (1, 6), (2, 5)]:
            shape = SystemShape(model=spin_model(two_j), n=n)
            for w in achievable_weights(shape.model, n):
                verdict = constant_weight_certificate(family_from_state(sample_state(shape, w, n)), pivots=0)
                with self.subTest(two_j=two_j, n=n, w=w):
                    self.assertEqual(verdict.status, CertificateVerdict.CONSISTENT)
                    self.assertEqual(verdict.w0, w)
                    self.assertLessEqual(verdict.spread, 1e-8)

    def test_two_sector_state_is_inconsistent(self):
        shape = SystemShape(model=spin_model(1), n=4)
        verdict = constant_weight_certificate(family_from_state(two_sector_state(shape, (2,), (-2,), 0)))
        self.assertEqual(verdict.status, CertificateVerdict.INCONSISTENT)
        self.assertGreater(verdict.spread, 0.01)
        self.assertIsNone(verdict.w0)
        self.assertEqual(str(verdict), 'inconsistent')

    def test_product_state(self):
        model = spin_model(2)
        shape = SystemShape(model=model, n=4)
        for r, (alpha,) in enumerate(model.weights):
            verdict = constant_weight_certificate(family_from_state(basis_state(shape, (r,) * 4)))
            self.assertEqual(verdict.w0, (4 * alpha,))
            self.assertEqual(str(verdict), 'consistent(%d)' % (4 * alpha))

    def test_zero_population_is_underdetermined(self):
        shape = SystemShape(model=spin_model(1), n=3)
        zero = np.zeros((4, 4))
        family = MarginalFamily(shape=shape, entries={(0, 1): zero, (0, 2): zero, (1, 2): zero})
        verdict = constant_weight_certificate(family, pivots=0)
        self.assertEqual(verdict.status, CertificateVerdict.UNDERDETERMINED)
        self.assertTrue(all(row.candidate is None for row in verdict.rows))

    def test_residual_table(self):
        shape = SystemShape(model=spin_model(1), n=3)
        verdict = constant_weight_certificate(family_from_state(sample_state(shape, 1, 4)), pivots=[0, 2])
        self.assertEqual([(row.pivot, row.i0) for row in verdict.rows], [(0, 0), (0, 1), (2, 0), (2, 1)])
        for row in verdict.rows:
            self.assertLess(row.residual[0], 1e-10)
            assert_allclose(row.candidate, [1.0], atol=1e-10)

    def test_vector_weights(self):
        shape = SystemShape(model=su3_fundamental(), n=3)
        verdict = constant_weight_certificate(family_from_state(sample_state(shape, (0, 0), 2)))
        self.assertEqual(str(verdict), 'consistent(0,0)')

    def test_phase_and_relabelling_invariance(self):
        shape = SystemShape(model=spin_model(2), n=4)
        state = two_sector_state(shape, (0,), (2,), 7)
        family = family_from_state(state)
        base = constant_weight_certificate(family)
        phased = constant_weight_certificate(family_from_state(superpose([state], [np.exp(0.7j)])))
        self.assertEqual(phased.status, base.status)
        relabelled = MarginalFamily(
            shape=shape,
            entries={(3 - p, 3 - q): matrix for (p, q), matrix in family.entries.items()},
        )
        self.assertEqual(constant_weight_certificate(relabelled).status, base.status)
        self.assertAlmostEqual(constant_weight_certificate(relabelled).spread, base.spread, places=10)

    def test_missing_pairs_rejected(self):
        shape = SystemShape(model=spin_model(1), n=3)
        family = family_from_state(sample_state(shape, 1, 0), pivot=0)
        with self.assertRaises(ValidationError):
            constant_weight_certificate(family)
        self.assertTrue(constant_weight_certificate(family, pivots=0).is_consistent)

    def test_pivot_table_counts_partners(self):
        shape = SystemShape(model=spin_model(1), n=4)
        table = pivot_table(family_from_state(sample_state(shape, 0, 5)), 0)
        self.assertAlmostEqual(float(table.sum()), 3.0, places=12)


class WeightVarianceTests(SimpleTestCase):
    def test_sector_state(self):
        state = sample_state(SystemShape(model=spin_model(2), n=3), 2, 0)
        mean_gap, variance = weight_variance(state, 2)
        assert_allclose(mean_gap, [0.0], atol=1e-12)
        assert_allclose(variance, [0.0], atol=1e-12)

    def test_two_sectors(self):
        shape = SystemShape(model=spin_model(1), n=2)
        state = superpose([basis_state(shape, (1, 1)), basis_state(shape, (0, 0))])
        mean_gap, variance = weight_variance(state, 0)
        assert_allclose(mean_gap, [0.0], atol=1e-12)
        assert_allclose(variance, [4.0], atol=1e-12)


class CertificateEquivalenceTests(SimpleTestCase):
    """The certificate and the weight variance must agree on every sampled state."""

    def test_single_and_two_sector_states(self):
        cases = 0
        for two_j in (1, 2):
            model = spin_model(two_j)
            for n in (3, 4, 5):
                shape = SystemShape(model=model, n=n)
                weights = achievable_weights(model, n)
                for seed in range(17):
                    w = weights[seed % len(weights)]
                    other = weights[(seed * 7 + 3) % len(weights)]
                    for state in (sample_state(shape, w, seed), two_sector_state(shape, w, other, seed)):
                        verdict = constant_weight_certificate(family_from_state(state))
                        _, variance = weight_variance(state, w)
                        single = float(variance.max()) <= 1e-10
                        with self.subTest(two_j=two_j, n=n, seed=seed, w=w, other=other):
                            self.assertEqual(verdict.is_consistent, single)
                            if single:
                                self.assertEqual(verdict.w0, w)
                        cases += 1
        self.assertGreaterEqual(cases, 200)


class MarginalFamilySerializerTests(SimpleTestCase):
    def test_round_trip(self):
        state = sample_state(SystemShape(model=spin_model(1), n=3), 1, 0)
        family = family_from_state(state)
        data = MarginalFamilySerializer(family).data
        self.assertEqual([(pair['p'], pair['q']) for pair in data['pairs']], [(1, 2), (1, 3), (2, 3)])
        serializer = MarginalFamilySerializer(data=data)
        serializer.is_valid(raise_exception=True)
        loaded = serializer.save()
        assert_allclose(loaded.matrix(0, 2), family.matrix(0, 2))

    def test_flat_matrix_accepted(self):
        payload = {
            'model': {'weights': [[-1], [1]]},
            'N': 2,
            'pairs': [{'p': 2, 'q': 1, 'matrix': [[0, 0]] * 5 + [[1, 0]] + [[0, 0]] * 10}],
        }
        serializer = MarginalFamilySerializer(data=payload)
        serializer.is_valid(raise_exception=True)
        family = serializer.save()
        self.assertEqual(family.pairs, ((0, 1),))
        self.assertEqual(family.matrix(1, 0)[1, 1], 1.0)
        self.assertEqual(family.matrix(0, 1)[2, 2], 1.0)

    def test_non_hermitian_rejected(self):
        matrix = [[[0, 0]] * 4 for _ in range(4)]
        matrix[0][1] = [1, 0]
        payload = {'model': {'weights': [[-1], [1]]}, 'N': 2, 'pairs': [{'p': 1, 'q': 2, 'matrix': matrix}]}
        serializer = MarginalFamilySerializer(data=payload)
        serializer.is_valid(raise_exception=True)
        with self.assertRaises(serializers.ValidationError) as ctx:
            serializer.save()
        self.assertIn('not Hermitian', str(ctx.exception.detail))

    def test_duplicate_pair_invalid(self):
        matrix = [[[0, 0]] * 4 for _ in range(4)]
        payload = {
            'model': {'weights': [[-1], [1]]},
            'N': 3,
            'pairs': [{'p': 1, 'q': 2, 'matrix': matrix}, {'p': 2, 'q': 1, 'matrix': matrix}],
        }
        serializer = MarginalFamilySerializer(data=payload)
        self.assertFalse(serializer.is_valid())
