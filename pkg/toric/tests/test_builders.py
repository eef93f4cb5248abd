from fractions import Fraction

from django.test import SimpleTestCase

from core.seeding import derive_rng
from lattice.intmatrix import IntMatrix
from polytope.faces import face_from_members
from polytope.volume import normalized_volume
from toric.builders import (
    delete_columns,
    dilated_cube_model,
    facial_submodel,
    independence_model,
    model_from_columns,
    pyramid_model,
    random_model,
    rescale_by_torus,
)
from toric.scaled_model import ModelSpecError, ScaledModel, ScalingLengthMismatch, SpanCollapse, preset_scaling

SQUARE_SCALING = [1, 2, 1, 2, 4, 2, 1, 2, 1]


class BuilderTests(SimpleTestCase):
    def test_independence_shape(self):
        M = independence_model(3, 3)
        self.assertEqual((M.A.rows, M.n), (5, 9))
        self.assertEqual(M.A.row(1), (1, 1, 1, 0, 0, 0, 0, 0, 0))
        with self.assertRaises(ValueError):
            independence_model(1, 3)

    def test_presets_flatten_row_major(self):
        self.assertEqual(preset_scaling("C3"), tuple(Fraction(v) for v in (1, 1, 1, 1, 2, 3, 1, 2, 3)))
        with self.assertRaises(ValueError):
            preset_scaling("c9")

    def test_independence_accepts_preset_names(self):
        M = independence_model(3, 3, scaling="c5")
        self.assertEqual(M.c, preset_scaling("c5"))
        self.assertEqual(independence_model(3, 3, scaling="C1").c, (Fraction(1),) * 9)
        with self.assertRaises(ModelSpecError):
            independence_model(3, 3, scaling="c9")
        with self.assertRaises(ScalingLengthMismatch):
            independence_model(2, 2, scaling="c2")

    def test_cube(self):
        M = dilated_cube_model(3, 2)
        self.assertEqual((M.n, M.d), (27, 3))
        self.assertEqual(normalized_volume(M.configuration()), 48)
        with self.assertRaises(ValueError):
            dilated_cube_model(0, 2)

    def test_facial_submodel_of_square_edge(self):
        M = dilated_cube_model(2, 2, SQUARE_SCALING)
        edge = face_from_members(M.configuration(), [0, 1, 2])
        sub = facial_submodel(M, edge)
        self.assertEqual((sub.n, sub.d), (3, 1))
        self.assertEqual(sub.c, (Fraction(1), Fraction(2), Fraction(1)))
        self.assertEqual(normalized_volume(sub.configuration()), 2)

    def test_delete_columns(self):
        M = dilated_cube_model(2, 2, SQUARE_SCALING)
        smaller = delete_columns(M, [8])
        self.assertEqual((smaller.n, smaller.d), (8, 2))
        self.assertEqual(normalized_volume(smaller.configuration()), 7)
        self.assertIs(delete_columns(M, []), M)
        with self.assertRaises(SpanCollapse):
            delete_columns(M, [3, 4, 5, 6, 7, 8])

    def test_pyramid(self):
        P = pyramid_model(dilated_cube_model(2, 2, SQUARE_SCALING), apex_scaling=3)
        self.assertEqual((P.n, P.d), (10, 3))
        self.assertEqual(P.c[-1], Fraction(3))
        self.assertEqual(P.exponents[-1], (0, 0, 1))

    def test_torus_rescaling(self):
        M = dilated_cube_model(2, 1)
        scaled = rescale_by_torus(M, [2, "1/3"])
        self.assertEqual(scaled.c, (Fraction(1), Fraction(1, 3), Fraction(2), Fraction(2, 3)))
        with self.assertRaises(ValueError):
            rescale_by_torus(M, [0, 1])
        with self.assertRaises(ValueError):
            rescale_by_torus(M, [1])

    def test_random_models_are_reproducible(self):
        first = random_model(derive_rng(3, "random-model"), dim=3, max_columns=10)
        second = random_model(derive_rng(3, "random-model"), dim=3, max_columns=10)
        self.assertEqual(first, second)
        self.assertLessEqual(first.n, 10)
        self.assertIn((0, 0, 0), first.exponents)
        self.assertIn((0, 0, 1), first.exponents)
        with self.assertRaises(ValueError):
            random_model(derive_rng(3, "random-model"), dim=3, max_columns=3)


class ScaledModelTests(SimpleTestCase):
    def test_validation(self):
        A = IntMatrix.from_rows([[1, 1], [0, 1]])
        with self.assertRaises(ScalingLengthMismatch):
            ScaledModel(A=A, c=(Fraction(1),))
        with self.assertRaises(ModelSpecError):
            ScaledModel(A=A, c=(Fraction(1), Fraction(0)))
        with self.assertRaises(ModelSpecError):
            model_from_columns([(0,), (2,)])

    def test_with_scaling(self):
        M = model_from_columns([(0,), (1,), (2,)])
        self.assertEqual(M.with_scaling(["1", "2", "1"]).c, (Fraction(1), Fraction(2), Fraction(1)))
        self.assertEqual(M.with_scaling("ones").c, (Fraction(1),) * 3)
