from django.conf import settings
from django.test import SimpleTestCase
from unittest import skipUnless

from core.seeding import derive_rng
from polytope.volume import normalized_volume
from toric.builders import dilated_cube_model, random_model
from toric.specs import load_spec
from likelihood.reports import NotAFlag, flag_report, monotonicity_report

SQUARE_ONES = dilated_cube_model(2, 2)


class MonotonicityReportTests(SimpleTestCase):
    def test_square_edges(self):
        report = monotonicity_report(SQUARE_ONES, depth=1)
        self.assertEqual(report.ml_degree, 4)
        self.assertEqual(len(report.rows), 5)
        self.assertEqual([row.ml_degree for row in report.rows[1:]], [2, 2, 2, 2])
        self.assertEqual([row.degree for row in report.rows[1:]], [2, 2, 2, 2])
        self.assertEqual(report.violations, ())

    def test_depth_zero_is_one_row(self):
        report = monotonicity_report(SQUARE_ONES, depth=0)
        self.assertEqual(len(report.rows), 1)
        self.assertEqual(report.rows[0].degree, 8)

    def test_full_depth_reaches_vertices(self):
        report = monotonicity_report(SQUARE_ONES, depth=2)
        vertices = [row for row in report.rows if row.dimension == 0]
        self.assertEqual(len(vertices), 4)
        self.assertTrue(all(row.ml_degree == 1 for row in vertices))

    def test_depth_out_of_range(self):
        with self.assertRaises(ValueError):
            monotonicity_report(SQUARE_ONES, depth=3)

    def test_workers_give_same_rows(self):
        sequential = monotonicity_report(SQUARE_ONES, depth=1, seed=4)
        threaded = monotonicity_report(SQUARE_ONES, depth=1, seed=4, workers=3)
        self.assertEqual(sequential.ml_degrees(), threaded.ml_degrees())
        self.assertEqual([row.face for row in sequential.rows], [row.face for row in threaded.rows])

    def test_random_models_are_monotone(self):
        for trial in range(3):
            model = random_model(derive_rng(21, "monotone", trial), 2, 6)
            report = monotonicity_report(model, depth=1, seed=trial)
            with self.subTest(trial=trial):
                self.assertEqual(report.violations, ())
                self.assertLessEqual(report.ml_degree, normalized_volume(model.configuration()))

    @skipUnless(settings.MLDEG_SLOW_TESTS, "set MLDEG_SLOW_TESTS=1 for acceptance-scale runs")
    def test_cube_facets(self):
        report = monotonicity_report(load_spec("cube_ones").model, depth=1)
        self.assertEqual(report.ml_degree, 8)
        self.assertEqual([row.ml_degree for row in report.rows[1:]], [4] * 6)

    @skipUnless(settings.MLDEG_SLOW_TESTS, "set MLDEG_SLOW_TESTS=1 for acceptance-scale runs")
    def test_binary_four_cycle_facet_census(self):
        report = monotonicity_report(load_spec("binary_four_cycle").model, depth=1)
        facets = [row.ml_degree for row in report.rows[1:]]
        self.assertEqual(sorted(facets), [1] * 8 + [5] * 16)

    @skipUnless(settings.MLDEG_SLOW_TESTS, "set MLDEG_SLOW_TESTS=1 for acceptance-scale runs")
    def test_random_models_property_suite(self):
        for trial in range(20):
            dim = 1 + trial % 3
            model = random_model(derive_rng(22, "monotone", trial), dim, 12)
            report = monotonicity_report(model, depth=1, seed=trial)
            with self.subTest(trial=trial):
                self.assertEqual(report.violations, ())
                self.assertLessEqual(report.ml_degree, normalized_volume(model.configuration()))


class FlagReportTests(SimpleTestCase):
    def test_square_flag(self):
        report = flag_report(SQUARE_ONES, [list(range(9)), [0, 1, 2], [0]])
        self.assertEqual(report.ml_degrees(), (4, 2, 1))
        self.assertEqual(report.degrees(), (8, 2, 1))
        self.assertEqual([row.dimension for row in report.rows], [2, 1, 0])

    def test_trivial_flag(self):
        report = flag_report(SQUARE_ONES, [list(range(9))])
        self.assertEqual(len(report.rows), 1)

    def test_not_a_face(self):
        with self.assertRaises(NotAFlag):
            flag_report(SQUARE_ONES, [list(range(9)), [0, 4]])

    def test_not_nested(self):
        with self.assertRaises(NotAFlag):
            flag_report(SQUARE_ONES, [list(range(9)), [0, 1, 2], [6]])

    @skipUnless(settings.MLDEG_SLOW_TESTS, "set MLDEG_SLOW_TESTS=1 for acceptance-scale runs")
    def test_binary_four_cycle_flag(self):
        spec = load_spec("binary_four_cycle")
        report = flag_report(spec.model, spec.flag)
        self.assertEqual(report.ml_degrees(), (13, 5, 3, 2, 2, 1, 1, 1, 1))
        self.assertEqual(report.degrees(), (64, 15, 8, 4, 4, 2, 1, 1, 1))
