from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given
from numpy.testing import assert_allclose

from cwrdm.testing import sector_shapes, seeds
from partitions.enumeration import enumerate_partitions
from statespace.models import SystemShape
from statespace.states import basis_state, sample_state, superpose
from weights.builders import achievable_weights, spin_model, su3_fundamental
from weights.models import WeightModel

from .coefficients import b_vector, induction_shift
from .perfect import impossibility_witness, perfect_deviation
from .residuals import relation_context, relation_residual, relation_sweep, trace_of_trace_check

F = Fraction
TOLERANCE = 1e-10


def rows_of(model, slots, s):
    return [p.frequencies for p in enumerate_partitions(model, slots, s)]


class BVectorTests(SimpleTestCase):
    def test_table_columns_in_spin_units(self):
        model = spin_model(2)
        (b,) = b_vector(model, 4, 2)
        self.assertEqual(tuple(WeightModel.in_spin_units(v) for v in b.values), (F(-5, 4), F(-1, 4), F(3, 4)))
        (b,) = b_vector(model, 4, -2)
        self.assertEqual(tuple(WeightModel.in_spin_units(v) for v in b.values), (F(-3, 4), F(1, 4), F(5, 4)))

    def test_middle_column_agrees_up_to_scale(self):
        (b,) = b_vector(spin_model(2), 4, 0)
        printed = (F(-1, 4), F(0), F(1, 4))
        self.assertEqual(b.scaled(F(1, 8)).values, printed)

    def test_doublet(self):
        (b,) = b_vector(spin_model(1), 3, 1)
        self.assertEqual(b.values, (F(-4, 3), F(2, 3)))
        self.assertTrue(b.annihilates([(1, 2)]))
        self.assertEqual(str(b), '(-4/3, 2/3)')

    def test_one_vector_per_cartan_component(self):
        bs = b_vector(su3_fundamental(), 3, (0, 0))
        self.assertEqual([b.component for b in bs], [0, 1])
        self.assertEqual(bs[1].values, (F(1), F(-2), F(1)))

    def test_annihilates_every_partition(self):
        for two_j in range(1, 5):
            model = spin_model(two_j)
            for slots in range(2, 7):
                for s in achievable_weights(model, slots):
                    rows = rows_of(model, slots, s)
                    for b in b_vector(model, slots, s):
                        with self.subTest(two_j=two_j, slots=slots, s=s):
                            self.assertTrue(b.annihilates(rows))
                            self.assertTrue(any(b.values))
                            self.assertEqual(b.total, F(-model.dimension * s[0], slots))
                            self.assertTrue(b.scaled(F(-7, 3)).annihilates(rows))
                            self.assertEqual(b.scaled(F(-7, 3)).total == 0, b.total == 0)

    def test_vector_weights_annihilate_per_component(self):
        model = su3_fundamental()
        for slots in range(2, 5):
            for s in achievable_weights(model, slots):
                rows = rows_of(model, slots, s)
                for b in b_vector(model, slots, s):
                    self.assertTrue(b.annihilates(rows))


class InductionShiftTests(SimpleTestCase):
    def test_zero_targets(self):
        delta, b_prime = induction_shift(spin_model(2), 5, 2, 0, 0)
        self.assertEqual(delta, (F(0),))
        self.assertEqual(b_prime[0].values, b_vector(spin_model(2), 3, 0)[0].values)

    def test_one_tenth_shift(self):
        model = spin_model(2)
        delta, (b_prime,) = induction_shift(model, 5, 1, 2, 2)
        self.assertEqual(delta, (F(1, 10),))
        self.assertEqual(b_prime.values, tuple(F(a) - F(2, 5) for (a,) in model.weights))
        self.assertTrue(b_prime.annihilates(rows_of(model, 5, 2)))

    def test_shift_reproduces_explicit_vectors(self):
        for two_j in range(1, 5):
            model = spin_model(two_j)
            for slots in range(2, 7):
                for s in achievable_weights(model, slots):
                    for alpha in set(model.weights):
                        s_prime = (s[0] + alpha[0],)
                        _, (b_prime,) = induction_shift(model, slots + 1, 1, s, s_prime)
                        with self.subTest(two_j=two_j, slots=slots, s=s, s_prime=s_prime):
                            self.assertEqual(b_prime.values, b_vector(model, slots + 1, s_prime)[0].values)
                            self.assertTrue(b_prime.annihilates(rows_of(model, slots + 1, s_prime)))

    def test_bad_m(self):
        with self.assertRaises(ValidationError):
            induction_shift(spin_model(1), 4, 4, 0, 0)


class RelationResidualTests(SimpleTestCase):
    def w_state(self):
        shape = SystemShape(model=spin_model(1), n=3)
        return superpose([basis_state(shape, index) for index in [(0, 1, 1), (1, 0, 1), (1, 1, 0)]])

    def test_w_state(self):
        result = relation_residual(self.w_state(), 1, (1,), 1)
        self.assertEqual(result.b[0].values, (F(-1), F(1)))
        self.assertLess(result.residual[0], 1e-15)
        self.assertFalse(result.vacuous)

    def test_vacuous_context(self):
        state = self.w_state()
        context = relation_context(state.shape, 2, (0, 0), 1)
        self.assertFalse(context.feasible)
        result = relation_residual(state, 2, (0, 0), 1)
        self.assertTrue(result.vacuous)
        self.assertEqual(result.residual, (0.0,))

    def test_declared_support_must_match(self):
        state = sample_state(SystemShape(model=spin_model(1), n=3), 1, 0)
        with self.assertRaises(ValidationError):
            relation_residual(state, 1, (0,), -1)

    def test_positions_relabel_the_fixed_sites(self):
        state = sample_state(SystemShape(model=spin_model(2), n=4), 2, 8)
        result = relation_residual(state, 2, (0, 2), 2, positions=(3, 1, 0, 2))
        self.assertEqual(result.context.fixed_sites, (3, 1))
        self.assertLess(result.max_residual, TOLERANCE)

    @given(sector_shapes(max_two_j=3, min_n=3, max_n=5), seeds)
    def test_sector_states_satisfy_every_relation(self, shape_and_weight, seed):
        shape, w = shape_and_weight
        state = sample_state(shape, w, seed)
        for result in relation_sweep(state, w):
            self.assertLessEqual(result.max_residual, TOLERANCE)

    def test_grid_of_sector_states(self):
        for two_j in (1, 2, 3):
            model = spin_model(two_j)
            for n in range(3, 7):
                shape = SystemShape(model=model, n=n)
                for w in achievable_weights(model, n):
                    for seed in (0, 1):
                        state = sample_state(shape, w, seed)
                        worst = max(r.max_residual for r in relation_sweep(state, w))
                        with self.subTest(two_j=two_j, n=n, w=w, seed=seed):
                            self.assertLessEqual(worst, TOLERANCE)

    def test_su3_sector_states(self):
        model = su3_fundamental()
        for n in (4, 5):
            shape = SystemShape(model=model, n=n)
            for w in achievable_weights(model, n):
                for seed in range(5):
                    results = relation_sweep(sample_state(shape, w, seed), w)
                    worst = max(max(result.residual) for result in results)
                    with self.subTest(n=n, w=w, seed=seed):
                        self.assertLessEqual(worst, TOLERANCE)

    def test_sweep_order(self):
        state = sample_state(SystemShape(model=spin_model(1), n=3), 1, 0)
        contexts = [(r.context.m, r.context.i0) for r in relation_sweep(state, 1)]
        self.assertEqual(contexts, [(1, (0,)), (1, (1,)), (2, (0, 0)), (2, (0, 1)), (2, (1, 0)), (2, (1, 1))])

    def test_sweep_matches_single_evaluation(self):
        state = sample_state(SystemShape(model=spin_model(2), n=4), 0, 5)
        broken = superpose([state, sample_state(state.shape, 2, 6)])
        for result in relation_sweep(broken, 0, m_values=[2]):
            single = relation_residual(broken, 2, result.context.i0, 0)
            self.assertAlmostEqual(result.residual[0], single.residual[0], places=12)

    def test_two_sector_states_violate_some_relation(self):
        for two_j, n, w, other in [(1, 3, 1, -1), (1, 4, 0, 2), (2, 4, 0, -2), (3, 5, 1, 3)]:
            shape = SystemShape(model=spin_model(two_j), n=n)
            for seed in range(5):
                state = superpose([sample_state(shape, w, seed), sample_state(shape, other, seed + 100)])
                worst = max(r.max_residual for r in relation_sweep(state, w))
                with self.subTest(two_j=two_j, n=n, seed=seed):
                    self.assertGreater(worst, 1e-3)


class TraceOfTraceTests(SimpleTestCase):
    @given(sector_shapes(max_two_j=2, min_n=2, max_n=6), seeds)
    def test_identity(self, shape_and_weight, seed):
        shape, _ = shape_and_weight
        check = trace_of_trace_check(sample_state(shape, seed=seed))
        self.assertLessEqual(check.max_abs_diff, 1e-12)
        self.assertAlmostEqual(float(check.lhs.sum()), shape.n - 1, delta=TOLERANCE)

    def test_product_state(self):
        shape = SystemShape(model=spin_model(2), n=4)
        check = trace_of_trace_check(basis_state(shape, (0, 0, 0, 0)))
        assert_allclose(check.lhs, [3.0, 0.0, 0.0])

    def test_other_pivot(self):
        shape = SystemShape(model=spin_model(1), n=3)
        check = trace_of_trace_check(sample_state(shape, 1, 2), pivot=2)
        self.assertLessEqual(check.max_abs_diff, 1e-12)


class PerfectDeviationTests(SimpleTestCase):
    def test_bell(self):
        shape = SystemShape(model=spin_model(1), n=2)
        bell = superpose([basis_state(shape, (0, 1)), basis_state(shape, (1, 0))])
        self.assertLess(perfect_deviation(bell).max_deviation, 1e-12)

    def test_ghz(self):
        shape = SystemShape(model=spin_model(1), n=4)
        ghz = superpose([basis_state(shape, (0,) * 4), basis_state(shape, (1,) * 4)])
        result = perfect_deviation(ghz)
        self.assertAlmostEqual(result.max_deviation, 0.5, places=12)
        self.assertLess(result.table[(1, 2, 3)], 1e-12)
        self.assertEqual(len(result.table), 6 + 4)

    def test_sampled_invariant_sector_states_are_not_perfect(self):
        for two_j in (1, 2):
            shape = SystemShape(model=spin_model(two_j), n=4)
            for seed in range(50):
                with self.subTest(two_j=two_j, seed=seed):
                    self.assertGreater(perfect_deviation(sample_state(shape, 0, seed)).max_deviation, 1e-3)


class ImpossibilityWitnessTests(SimpleTestCase):
    def test_doublet(self):
        witness = impossibility_witness(spin_model(1), 4, 0)
        self.assertEqual((witness.m, witness.i0, witness.s), (1, (0,), (1,)))
        self.assertEqual(witness.contradiction, F(-2, 3))

    def test_doublet_spin_up_pivot(self):
        witness = impossibility_witness(spin_model(1), 4, 0, i0=(1,))
        self.assertEqual(witness.s, (-1,))
        self.assertEqual(witness.contradiction, F(2, 3))

    def test_spin_one(self):
        witness = impossibility_witness(spin_model(2), 5, 0)
        self.assertEqual(witness.m, 1)
        self.assertEqual(witness.s, (2,))
        self.assertEqual(witness.contradiction, F(-3, 2))

    def test_every_sector(self):
        for two_j in (1, 2):
            model = spin_model(two_j)
            for n in range(4, 8):
                for w in achievable_weights(model, n):
                    witness = impossibility_witness(model, n, w)
                    c = witness.b.component
                    with self.subTest(two_j=two_j, n=n, w=w):
                        self.assertLessEqual(witness.m + 1, n // 2)
                        self.assertNotEqual(witness.contradiction, 0)
                        self.assertEqual(witness.contradiction, F(-model.dimension * witness.s[c], n - witness.m))

    def test_su3(self):
        model = su3_fundamental()
        for n in (4, 5):
            for w in achievable_weights(model, n):
                witness = impossibility_witness(model, n, w)
                c = witness.b.component
                self.assertEqual(witness.contradiction, F(-3 * witness.s[c], n - witness.m))

    def test_small_systems_refused(self):
        with self.assertRaises(ValidationError) as ctx:
            impossibility_witness(spin_model(1), 3, 1)
        self.assertEqual(ctx.exception.code, 'too_few_particles')

    def test_empty_sector(self):
        with self.assertRaises(ValidationError) as ctx:
            impossibility_witness(su3_fundamental(), 4, (0, 0))
        self.assertEqual(ctx.exception.code, 'empty_sector')

    def test_trivial_model_has_no_obstruction(self):
        with self.assertRaises(ValidationError) as ctx:
            impossibility_witness(spin_model(0), 4, 0)
        self.assertEqual(ctx.exception.code, 'no_witness')

    def test_explicit_i0_must_fit(self):
        with self.assertRaises(ValidationError):
            impossibility_witness(spin_model(1), 4, 0, i0=(0, 1))
