from fractions import Fraction

from django.test import SimpleTestCase

from polysolve.ratfunc import T, RationalFunction


class RationalFunctionTests(SimpleTestCase):
    def test_lowest_terms(self):
        self.assertEqual(RationalFunction.from_expr((T + 1) / (T**2 - 1)), 1 / RationalFunction.from_expr(T - 1))

    def test_arithmetic(self):
        a = RationalFunction.from_expr(T)
        b = RationalFunction.constant(Fraction(1, 2))
        self.assertEqual((a + b) * 2, RationalFunction.from_expr(2 * T + 1))
        self.assertEqual(a - a, RationalFunction.constant(0))
        self.assertEqual(a**-2, RationalFunction.monomial(1, -2))

    def test_valuation(self):
        self.assertEqual(RationalFunction.from_expr(T**3 / (T + T**2)).valuation(), 2)
        self.assertEqual(RationalFunction.monomial(3, -2).valuation(), -2)
        self.assertEqual(RationalFunction.constant(5).valuation(), 0)
        with self.assertRaises(ValueError):
            RationalFunction.constant(0).valuation()

    def test_evaluate(self):
        f = RationalFunction.from_expr((T**2 + 1) / (T - 1))
        self.assertEqual(f.evaluate(3), Fraction(5))
        with self.assertRaises(ZeroDivisionError):
            f.evaluate(1)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            RationalFunction.constant(1) / 0
