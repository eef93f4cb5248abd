from math import gcd

from django.test import SimpleTestCase
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_smith
from sympy.polys.domains import ZZ

from core.seeding import derive_rng, draw_ints
from lattice.intmatrix import IntMatrix
from lattice.normal_forms import (
    _extended_gcd,
    complete_to_unimodular,
    normalize_design_matrix,
    row_hermite_form,
    saturated_row_basis,
    smith_form,
    smith_normal_form,
    validate_design_matrix,
)

BINARY_FOUR_CYCLE = IntMatrix.from_rows(
    [
        [1] * 16,
        [0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 1],
        [0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1],
        [0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    ]
)


def _diagonal(D: IntMatrix) -> list[int]:
    return [D[i, i] for i in range(min(D.rows, D.cols))]


class SmithNormalFormTests(SimpleTestCase):
    def test_identity_is_fixed(self):
        D, U, V = smith_normal_form(IntMatrix.identity(3))
        self.assertEqual(D, IntMatrix.identity(3))
        self.assertEqual(U, IntMatrix.identity(3))
        self.assertEqual(V, IntMatrix.identity(3))

    def test_coprime_diagonal_merges(self):
        D, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
        self.assertEqual(_diagonal(D), [1, 6])

    def test_dividing_diagonal_is_kept(self):
        D, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 4]]))
        self.assertEqual(_diagonal(D), [2, 4])

    def test_random_round_trips(self):
        for trial in range(6):
            rng = derive_rng(11, "snf", trial)
            rows = 2 + trial
            cols = 4 + 2 * trial
            M = IntMatrix.from_rows(
                [draw_ints(rng, cols, -5, 5) for _ in range(rows)],
            )
            form = smith_form(M)
            D = form.D
            self.assertEqual(form.U @ M @ form.V, D)
            self.assertIn(form.U.det(), (1, -1))
            self.assertIn(form.V.det(), (1, -1))
            self.assertEqual(form.V @ form.V_inverse, IntMatrix.identity(cols))
            for i in range(D.rows):
                for j in range(D.cols):
                    if i != j:
                        self.assertEqual(D[i, j], 0)
            divisors = form.divisors
            for a, b in zip(divisors, divisors[1:]):
                self.assertEqual(b % a, 0)
            self.assertEqual(form.rank, M.rank())

    def test_full_scale_round_trip(self):
        rng = derive_rng(3, "snf", "8x16")
        M = IntMatrix.from_rows([draw_ints(rng, 16, -5, 5) for _ in range(8)])
        form = smith_form(M)
        self.assertEqual(form.U @ M @ form.V, form.D)
        self.assertEqual(form.V @ form.V_inverse, IntMatrix.identity(16))
        self.assertTrue(all(d > 0 for d in form.divisors))
        reference = sympy_smith(Matrix(M.to_rows()), domain=ZZ)
        expected = [abs(int(reference[i, i])) for i in range(8) if reference[i, i] != 0]
        self.assertEqual(list(form.divisors), expected)

    def test_binary_four_cycle_divisors_are_units(self):
        form = smith_form(BINARY_FOUR_CYCLE)
        self.assertEqual(form.divisors, (1,) * 9)
        self.assertEqual(form.U @ BINARY_FOUR_CYCLE @ form.V, form.D)

    def test_extended_gcd(self):
        for a, b in ((12, 18), (-4, 6), (7, -3), (0, 5), (5, 0), (-9, -6)):
            s, t, g = _extended_gcd(a, b)
            with self.subTest(a=a, b=b):
                self.assertEqual(g, gcd(a, b))
                self.assertEqual(s * a + t * b, g)

    def test_zero_matrix(self):
        form = smith_form(IntMatrix.zeros(2, 3))
        self.assertEqual(form.rank, 0)
        self.assertEqual(form.D, IntMatrix.zeros(2, 3))


class HermiteAndCompletionTests(SimpleTestCase):
    def test_hermite_drops_dependent_rows(self):
        rows = row_hermite_form([[2, 4, 6], [1, 2, 3], [0, 1, 1]])
        self.assertEqual(rows, [[1, 0, 1], [0, 1, 1]])

    def test_completion_keeps_first_row(self):
        for vector in ([3, 5], [2, 3, 5], [0, 0, 1], [6, 10, 15], [-1, 4]):
            completed = complete_to_unimodular(vector)
            self.assertEqual(list(completed.row(0)), vector)
            self.assertIn(completed.det(), (1, -1))

    def test_completion_rejects_non_primitive(self):
        with self.assertRaises(ValueError):
            complete_to_unimodular([2, 4])

    def test_saturated_basis_of_scaled_rows(self):
        basis = saturated_row_basis(IntMatrix.from_rows([[2, 2, 2], [0, 2, 4]]))
        self.assertEqual(basis.rows, 2)
        # (1,1,1) and (0,1,2) are in the saturation but not in the original row lattice.
        self.assertEqual(row_hermite_form(basis.to_rows()), [[1, 0, -1], [0, 1, 2]])


class ValidationTests(SimpleTestCase):
    def test_unit_segment_passes(self):
        report = validate_design_matrix(IntMatrix.from_rows([[1, 1], [0, 1]]))
        self.assertTrue(report.ok)
        self.assertEqual(report.failures(), [])

    def test_index_two_segment_fails_lattice_check(self):
        report = validate_design_matrix(IntMatrix.from_rows([[1, 1], [0, 2]]))
        self.assertTrue(report.first_row_ones)
        self.assertTrue(report.full_rank)
        self.assertFalse(report.lattice_index_one)
        self.assertEqual(report.lattice_index, 2)

    def test_binary_four_cycle_matrix_passes(self):
        self.assertTrue(validate_design_matrix(BINARY_FOUR_CYCLE).ok)

    def test_rank_deficiency_reported(self):
        report = validate_design_matrix(IntMatrix.from_rows([[1, 1, 1], [0, 1, 2], [0, 2, 4]]))
        self.assertFalse(report.full_rank)
        self.assertEqual(report.rank, 2)
        self.assertTrue(any("rank" in problem for problem in report.failures()))

    def test_missing_ones_row_reported(self):
        report = validate_design_matrix(IntMatrix.from_rows([[1, 2], [0, 1]]))
        self.assertFalse(report.first_row_ones)


class NormalizeDesignMatrixTests(SimpleTestCase):
    def test_redundant_rows_collapse(self):
        raw = IntMatrix.from_rows([[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])
        normalized = normalize_design_matrix(raw)
        self.assertEqual(normalized.rows, 3)
        self.assertEqual(normalized.row(0), (1, 1, 1, 1))
        self.assertTrue(validate_design_matrix(normalized).ok)

    def test_index_is_repaired(self):
        normalized = normalize_design_matrix(IntMatrix.from_rows([[1, 1, 1], [0, 2, 4]]))
        self.assertEqual(normalized.to_rows(), [[1, 1, 1], [0, 1, 2]])

    def test_ones_outside_row_space(self):
        with self.assertRaises(ValueError):
            normalize_design_matrix(IntMatrix.from_rows([[0, 1, 2]]))
