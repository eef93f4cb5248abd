from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import Poly, Rational, Symbol, cancel, fraction, sympify
from sympy.polys.domains import QQ

T = Symbol("t")


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value.set_domain(QQ)
    return Poly(sympify(value), T, domain=QQ)


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class RationalFunction:
    """Element of Q(t) in lowest terms with a monic denominator."""

    numerator: Poly
    denominator: Poly

    def __post_init__(self) -> None:
        num = _as_poly(self.numerator)
        den = _as_poly(self.denominator)
        if den.is_zero:
            raise ZeroDivisionError("Denominator of a rational function must be nonzero.")
        if num.is_zero:
            num, den = Poly(0, T, domain=QQ), Poly(1, T, domain=QQ)
        else:
            common = num.gcd(den)
            num, den = num.quo(common), den.quo(common)
            lead = den.LC()
            num, den = num.quo_ground(lead), den.quo_ground(lead)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_expr(cls, expr) -> RationalFunction:
        num, den = fraction(cancel(sympify(expr)))
        return cls(_as_poly(num), _as_poly(den))

    @classmethod
    def constant(cls, value) -> RationalFunction:
        return cls(_as_poly(Rational(str(Fraction(value)))), _as_poly(1))

    @classmethod
    def monomial(cls, coefficient, power: int) -> RationalFunction:
        """coefficient * t**power; negative powers land in the denominator."""
        c = Rational(str(Fraction(coefficient)))
        if power >= 0:
            return cls(_as_poly(c * T**power), _as_poly(1))
        return cls(_as_poly(c), _as_poly(T ** (-power)))

    @classmethod
    def coerce(cls, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        return cls.from_expr(value)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def to_expr(self):
        return self.numerator.as_expr() / self.denominator.as_expr()

    def to_domain(self, domain):
        return domain.from_sympy(self.to_expr())

    @classmethod
    def from_domain(cls, domain, element) -> RationalFunction:
        return cls.from_expr(domain.to_sympy(element))

    def __add__(self, other) -> RationalFunction:
        other = RationalFunction.coerce(other)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other) -> RationalFunction:
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = RationalFunction.coerce(other)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = RationalFunction.coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("Division by the zero rational function.")
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other) -> RationalFunction:
        return RationalFunction.coerce(other) / self

    def __pow__(self, exponent: int) -> RationalFunction:
        if exponent < 0:
            return RationalFunction(self.denominator**-exponent, self.numerator**-exponent)
        return RationalFunction(self.numerator**exponent, self.denominator**exponent)

    def evaluate(self, t0) -> Fraction:
        point = Rational(str(Fraction(t0)))
        den = self.denominator.eval(point)
        if den == 0:
            raise ZeroDivisionError(f"Denominator vanishes at t = {t0}.")
        return _to_fraction(self.numerator.eval(point) / den)

    def valuation(self) -> int:
        """Order of vanishing at t = 0 (negative for a pole)."""
        if self.is_zero:
            raise ValueError("The zero rational function has no finite valuation.")

        def order(poly: Poly) -> int:
            return min(monomial[0] for monomial in poly.monoms())

        return order(self.numerator) - order(self.denominator)

    def __str__(self) -> str:
        if self.denominator.degree() == 0:
            return str(self.numerator.as_expr())
        return f"({self.numerator.as_expr()})/({self.denominator.as_expr()})"
