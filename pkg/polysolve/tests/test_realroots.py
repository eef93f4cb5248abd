from fractions import Fraction

import mpmath
from django.test import SimpleTestCase
from sympy import Poly, Symbol

from polysolve.groebner import NotZeroDimensional
from polysolve.realroots import _sign_at_root, real_positive_count, real_solutions, univariate_representation
from polysolve.rings import make_ring


class RealSolutionTests(SimpleTestCase):
    def setUp(self):
        self.ring = make_ring(["theta1"])
        (self.theta1,) = self.ring.gens

    def test_one_positive_root_of_two(self):
        solutions = real_solutions([self.theta1**2 - 2])
        self.assertEqual(len(solutions), 2)
        self.assertEqual(sorted(solution.signs for solution in solutions), [(-1,), (1,)])
        self.assertEqual(real_positive_count([self.theta1**2 - 2]), 1)

    def test_no_real_roots(self):
        self.assertEqual(real_solutions([self.theta1**2 + 1]), [])
        self.assertEqual(real_positive_count([self.theta1**2 + 1]), 0)

    def test_high_precision_value(self):
        (positive,) = [s for s in real_solutions([self.theta1**2 - 2]) if s.is_positive]
        self.assertIsNone(positive.exact)
        with mpmath.workdps(50):
            (value,) = positive.approximate(50)
            self.assertLess(abs(value - mpmath.sqrt(2)), mpmath.mpf(10) ** -40)

    def test_rational_roots_are_exact(self):
        solutions = real_solutions([(self.theta1 - 2) * (3 * self.theta1 + 1)])
        exact = sorted(solution.exact for solution in solutions)
        self.assertEqual(exact, [(Fraction(-1, 3),), (Fraction(2),)])

    def test_two_variables(self):
        ring = make_ring(["theta0", "theta1"])
        theta0, theta1 = ring.gens
        gens = [theta0 * theta1 - 1, theta1**2 - 3]
        solutions = real_solutions(gens)
        self.assertEqual(len(solutions), 2)
        self.assertEqual(sorted(solution.signs for solution in solutions), [(-1, -1), (1, 1)])
        self.assertEqual(real_positive_count(gens), 1)

    def test_multiple_root_is_radicalized(self):
        rep = univariate_representation([(self.theta1 - 1) ** 2 * (self.theta1 + 2)])
        self.assertEqual(rep.degree, 2)
        self.assertEqual(real_positive_count([(self.theta1 - 1) ** 2 * (self.theta1 + 2)]), 1)

    def test_positive_dimensional_input(self):
        ring = make_ring(["theta0", "theta1"])
        theta0, theta1 = ring.gens
        with self.assertRaises(NotZeroDimensional):
            real_solutions([theta0 - theta1])


class SignAtRootTests(SimpleTestCase):
    def test_sign_on_irrational_interval_is_an_int(self):
        x = Symbol("x")
        minimal = Poly(x**2 - 2, x, domain="QQ")
        ((lo, hi), _) = minimal.intervals()[1]
        above = _sign_at_root(minimal, Poly(x - 1, x, domain="QQ"), lo, hi)
        below = _sign_at_root(minimal, Poly(x - 2, x, domain="QQ"), lo, hi)
        self.assertEqual((above, below), (1, -1))
        self.assertIsInstance(above, int)

    def test_shared_root_has_sign_zero(self):
        x = Symbol("x")
        minimal = Poly(x**2 - 2, x, domain="QQ")
        ((lo, hi), _) = minimal.intervals()[1]
        self.assertEqual(_sign_at_root(minimal, Poly(x**3 - 2 * x, x, domain="QQ"), lo, hi), 0)
