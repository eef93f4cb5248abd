from fractions import Fraction

from django.test import SimpleTestCase

from core.rationals import format_rational, parse_rational, parse_rationals


class RationalTests(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(parse_rational("3/6"), Fraction(1, 2))
        self.assertEqual(parse_rational(" -4 "), Fraction(-4))
        self.assertEqual(parse_rational(7), Fraction(7))
        self.assertEqual(parse_rationals(["1", 2, Fraction(1, 3)]), (Fraction(1), Fraction(2), Fraction(1, 3)))

    def test_rejects_inexact_values(self):
        for raw in (0.5, True, "", "1/0", "abc", None):
            with self.subTest(raw=raw):
                with self.assertRaises(ValueError):
                    parse_rational(raw)

    def test_format(self):
        self.assertEqual(format_rational(Fraction(6, 3)), "2")
        self.assertEqual(format_rational(Fraction(-2, 6)), "-1/3")
