import io
from fractions import Fraction
from itertools import product

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from cwrdm.testing import small_two_j
from weights.builders import achievable_weights, direct_sum, spin_model, su3_fundamental
from weights.models import ConstraintSpec

from .enumeration import (
    enumerate_constrained, enumerate_partitions, enumerate_tuples, frequency_matrix,
    has_solutions, multinomial_count, partition_count,
)
from .models import FrequencyMatrix
from .rank import annihilates, constrained_witness, null_space, rank_analysis
from .serializers import write_frequency_matrix


def rows_of(partitions):
    return [p.frequencies for p in partitions]


class EnumeratePartitionsTests(SimpleTestCase):
    """The N=5, spin-1 table: slots 4 after fixing one particle."""

    def setUp(self):
        self.model = spin_model(2)

    def test_target_two(self):
        self.assertEqual(rows_of(enumerate_partitions(self.model, 4, 2)), [(1, 1, 2), (0, 3, 1)])

    def test_target_zero(self):
        self.assertEqual(rows_of(enumerate_partitions(self.model, 4, 0)), [(2, 0, 2), (1, 2, 1), (0, 4, 0)])

    def test_target_minus_two(self):
        self.assertEqual(rows_of(enumerate_partitions(self.model, 4, -2)), [(2, 1, 1), (1, 3, 0)])

    def test_out_of_range_target_is_empty(self):
        self.assertEqual(enumerate_partitions(spin_model(1), 2, 4), [])
        self.assertFalse(has_solutions(spin_model(1), 2, (4,)))

    def test_partition_weights_listed_largest_first(self):
        first = enumerate_partitions(self.model, 4, 2)[1]
        self.assertEqual(first.weights, ((2,), (0,), (0,), (0,)))
        self.assertEqual(first.basis_indices, (1, 1, 1, 2))

    def test_repeated_weights_counted_per_basis_position(self):
        model = direct_sum([spin_model(1), spin_model(1)])
        rows = rows_of(enumerate_partitions(model, 1, 1))
        self.assertEqual(rows, [(0, 1, 0, 0), (0, 0, 0, 1)])

    def test_vector_weights(self):
        model = su3_fundamental()
        rows = rows_of(enumerate_partitions(model, 3, (0, 0)))
        self.assertEqual(rows, [(1, 1, 1)])

    def test_zero_slots_rejected(self):
        with self.assertRaises(ValidationError):
            enumerate_partitions(self.model, 0, 0)

    def test_target_length_checked(self):
        with self.assertRaises(ValidationError) as ctx:
            enumerate_partitions(su3_fundamental(), 2, 1)
        self.assertEqual(ctx.exception.code, 'cartan_mismatch')

    @given(small_two_j, st.integers(min_value=1, max_value=6), st.data())
    def test_every_row_satisfies_both_conditions(self, two_j, slots, data):
        model = spin_model(two_j)
        target = data.draw(st.sampled_from(achievable_weights(model, slots)))
        partitions = enumerate_partitions(model, slots, target)
        self.assertTrue(partitions)
        rows = rows_of(partitions)
        self.assertEqual(rows, sorted(set(rows), reverse=True))
        for partition in partitions:
            self.assertEqual(sum(partition.frequencies), slots)
            self.assertEqual(partition.total_weight(), target)


class EnumerateTuplesTests(SimpleTestCase):
    def brute_force(self, model, slots, target):
        return sorted(
            t for t in product(range(model.dimension), repeat=slots)
            if sum(model.weights[r][0] for r in t) == target
        )

    def test_spin_one_slots_four(self):
        tuples = enumerate_tuples(spin_model(2), 4, 2)
        self.assertEqual(len(tuples), 16)
        self.assertEqual(tuples, self.brute_force(spin_model(2), 4, 2))

    def test_doublet(self):
        self.assertEqual(enumerate_tuples(spin_model(1), 3, 1), [(0, 1, 1), (1, 0, 1), (1, 1, 0)])

    def test_empty(self):
        self.assertEqual(enumerate_tuples(spin_model(1), 2, 4), [])

    @given(st.integers(min_value=1, max_value=2), st.integers(min_value=1, max_value=6), st.data())
    def test_count_matches_multinomials(self, two_j, slots, data):
        model = spin_model(two_j)
        target = data.draw(st.sampled_from(achievable_weights(model, slots)))[0]
        tuples = enumerate_tuples(model, slots, target)
        self.assertEqual(tuples, self.brute_force(model, slots, target))
        expected = sum(multinomial_count(p) for p in enumerate_partitions(model, slots, target))
        self.assertEqual(len(tuples), expected)


class EnumerateConstrainedTests(SimpleTestCase):
    def test_linear_matches_partitions(self):
        model = spin_model(2)
        spec = ConstraintSpec(kind=ConstraintSpec.LINEAR, target=0)
        matrix = enumerate_constrained(model, 4, spec)
        self.assertEqual(list(matrix.rows), rows_of(enumerate_partitions(model, 4, 0)))

    def test_quadratic_spin_one(self):
        spec = ConstraintSpec(kind=ConstraintSpec.QUADRATIC, target=8)
        matrix = enumerate_constrained(spin_model(2), 2, spec)
        self.assertEqual(matrix.rows, ((2, 0, 0), (1, 0, 1), (0, 0, 2)))

    def test_quadratic_doublet_admits_everything(self):
        spec = ConstraintSpec(kind=ConstraintSpec.QUADRATIC, target=3)
        matrix = enumerate_constrained(spin_model(1), 3, spec)
        self.assertEqual(matrix.rows, ((3, 0), (2, 1), (1, 2), (0, 3)))

    def test_custom_scores(self):
        spec = ConstraintSpec(kind=ConstraintSpec.CUSTOM, target=2, scores=(1, 0, 0))
        matrix = enumerate_constrained(spin_model(2), 3, spec)
        self.assertEqual(matrix.rows, ((2, 1, 0), (2, 0, 1)))


class RankAnalysisTests(SimpleTestCase):
    def matrix(self, rows, model=None):
        model = model or spin_model(2)
        return FrequencyMatrix(rows=tuple(rows), model=model, slots=sum(rows[0]), target=(0,))

    def test_target_zero_block(self):
        report = rank_analysis(self.matrix([(2, 0, 2), (1, 2, 1), (0, 4, 0)]))
        self.assertEqual((report.rank_a, report.rank_a_tilde), (2, 2))
        self.assertIsNone(report.witness_b)

    def test_target_two_block(self):
        rows = [(0, 3, 1), (1, 1, 2)]
        report = rank_analysis(self.matrix(rows))
        self.assertEqual((report.rank_a, report.rank_a_tilde), (2, 3))
        self.assertTrue(annihilates(report.witness_b, rows))
        self.assertNotEqual(sum(report.witness_b), 0)

    def test_single_basis_vector(self):
        report = rank_analysis(self.matrix([(1,)], model=spin_model(0)))
        self.assertEqual((report.rank_a, report.rank_a_tilde), (1, 1))
        self.assertFalse(report.has_witness)

    def test_empty_rejected(self):
        with self.assertRaises(ValidationError):
            rank_analysis(frequency_matrix(spin_model(1), 2, 4))

    def test_null_space_dimension(self):
        matrix = frequency_matrix(spin_model(2), 4, 2)
        basis = null_space(matrix)
        self.assertEqual(len(basis), 1)
        self.assertTrue(annihilates(basis[0], matrix.rows))
        self.assertIsInstance(basis[0][0], Fraction)

    def test_generic_rank_cases(self):
        # (two_j, slots, target) away from the extreme targets
        cases = [
            (2, 3, 0), (2, 4, 0), (2, 5, 0), (3, 4, 0), (4, 3, 0), (4, 4, 0),
            (2, 3, 2), (2, 4, 2), (2, 4, -2), (3, 3, 1), (3, 3, -1), (3, 3, 3), (3, 3, -3), (4, 3, 2),
        ]
        for two_j, slots, target in cases:
            with self.subTest(two_j=two_j, slots=slots, target=target):
                d = two_j + 1
                report = rank_analysis(frequency_matrix(spin_model(two_j), slots, target))
                self.assertEqual(report.rank_a, d - 1)
                self.assertEqual(report.rank_a_tilde, d if target else d - 1)

    def test_rank_collapses_near_extreme_targets(self):
        # a single partition {2, 2, 0}
        report = rank_analysis(frequency_matrix(spin_model(2), 3, 4))
        self.assertEqual(report.rank_a, 1)

    def test_rank_bounds_and_dichotomy(self):
        for two_j in (2, 3, 4):
            model = spin_model(two_j)
            d = model.dimension
            for slots in (3, 4, 5):
                for (target,) in achievable_weights(model, slots):
                    with self.subTest(two_j=two_j, slots=slots, target=target):
                        report = rank_analysis(frequency_matrix(model, slots, target))
                        self.assertLessEqual(report.rank_a, d - 1)
                        if target:
                            self.assertEqual(report.rank_a_tilde, report.rank_a + 1)
                        elif report.rank_a == d - 1:
                            self.assertEqual(report.rank_a_tilde, report.rank_a)

    def test_constrained_witness_quadratic(self):
        spec = ConstraintSpec(kind=ConstraintSpec.QUADRATIC, target=8)
        b = constrained_witness(spin_model(2), 2, spec)
        self.assertIsNotNone(b)
        self.assertTrue(annihilates(b, [(2, 0, 0), (1, 0, 1), (0, 0, 2)]))

    def test_constrained_witness_empty(self):
        spec = ConstraintSpec(kind=ConstraintSpec.QUADRATIC, target=1)
        self.assertIsNone(constrained_witness(spin_model(2), 2, spec))


class PartitionCountTests(SimpleTestCase):
    def test_table_values(self):
        self.assertEqual(partition_count(spin_model(2), 4, 2), 2)
        self.assertEqual(partition_count(spin_model(2), 4, 0), 3)
        self.assertEqual(partition_count(spin_model(1), 3, 1), 1)

    def test_parity_and_range(self):
        self.assertEqual(partition_count(spin_model(2), 4, 1), 0)
        self.assertEqual(partition_count(spin_model(2), 4, 10), 0)
        self.assertEqual(partition_count(spin_model(2), 4, -10), 0)

    def test_matches_enumeration(self):
        for two_j in range(1, 5):
            model = spin_model(two_j)
            for slots in range(1, 9):
                for target in range(-two_j * slots, two_j * slots + 1):
                    with self.subTest(two_j=two_j, slots=slots, target=target):
                        self.assertEqual(
                            partition_count(model, slots, target),
                            len(enumerate_partitions(model, slots, target)),
                        )

    def test_reducible_model_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            partition_count(direct_sum([spin_model(1), spin_model(1)]), 2, 0)
        self.assertEqual(ctx.exception.code, 'not_irreducible')


class FrequencyMatrixCsvTests(SimpleTestCase):
    def test_layout(self):
        stream = io.StringIO()
        write_frequency_matrix(frequency_matrix(spin_model(2), 4, 2), stream)
        self.assertEqual(
            stream.getvalue(),
            '# D=3 slots=4 target=2 kind=linear-weight\nn_1,n_2,n_3\n1,1,2\n0,3,1\n',
        )
