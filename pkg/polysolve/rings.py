from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import Rational, Symbol, sympify
from sympy.polys.domains import QQ
from sympy.polys.orderings import ProductOrder, grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from .ratfunc import T, RationalFunction

MultiPoly = PolyElement

THETA_PREFIX = "theta"
AUXILIARY_NAME = "_sat"
ORDERS = {"grevlex": grevlex, "lex": lex}


def theta_names(d: int) -> list[str]:
    """theta0 .. theta_d."""
    return [f"{THETA_PREFIX}{i}" for i in range(d + 1)]


def rational_function_field():
    return QQ.frac_field(T)


def make_ring(names: Sequence[str], domain=QQ, order="grevlex") -> PolyRing:
    if isinstance(order, str):
        try:
            order = ORDERS[order]
        except KeyError as exc:
            raise ValueError(f"Unknown monomial order {order!r}.") from exc
    return PolyRing([Symbol(name) for name in names], domain, order)


def with_order(ring: PolyRing, order="grevlex", variable_order: Sequence[int] | None = None) -> PolyRing:
    """Same variables and domain; ``variable_order`` lists variable positions from largest to smallest."""
    names = [str(symbol) for symbol in ring.symbols]
    if variable_order is not None:
        if sorted(variable_order) != list(range(len(names))):
            raise ValueError(f"Variable order {list(variable_order)} is not a permutation of {len(names)} variables.")
        names = [names[i] for i in variable_order]
    return make_ring(names, ring.domain, order)


def elimination_ring(ring: PolyRing) -> PolyRing:
    """Ring with an auxiliary first variable, ordered by its degree first and grevlex on the rest."""
    names = [AUXILIARY_NAME, *(str(symbol) for symbol in ring.symbols)]
    order = ProductOrder((grevlex, lambda monomial: monomial[:1]), (grevlex, lambda monomial: monomial[1:]))
    return PolyRing([Symbol(name) for name in names], ring.domain, order)


def move(polys: Iterable[PolyElement], ring: PolyRing) -> list[PolyElement]:
    return [poly.set_ring(ring) for poly in polys]


def coerce_coefficient(domain, coefficient):
    if isinstance(coefficient, RationalFunction):
        return coefficient.to_domain(domain)
    if isinstance(coefficient, (int, Fraction)):
        value = Fraction(coefficient)
        return domain.from_sympy(Rational(value.numerator, value.denominator))
    return domain.from_sympy(sympify(coefficient))


def from_terms(ring: PolyRing, terms: Mapping[tuple[int, ...], object]) -> PolyElement:
    """Polynomial from {exponent vector: coefficient}; RationalFunction coefficients are converted to the ring's field."""
    collected: dict[tuple[int, ...], object] = {}
    for monomial, coefficient in terms.items():
        key = tuple(int(e) for e in monomial)
        collected[key] = collected.get(key, ring.domain.zero) + coerce_coefficient(ring.domain, coefficient)
    return ring.from_dict({m: c for m, c in collected.items() if c})


def coefficient_to_rational_function(ring: PolyRing, coefficient) -> RationalFunction:
    return RationalFunction.from_domain(ring.domain, coefficient)


def depends_only_on(poly: PolyElement, index: int) -> bool:
    return all(all(e == 0 for k, e in enumerate(monomial) if k != index) for monomial in poly.monoms())


def specialize_t(poly: PolyElement, t0, target: PolyRing) -> PolyElement:
    """Substitute t = t0 into a polynomial over Q(t); ``target`` has the same variables over Q."""
    terms = {}
    for monomial, coefficient in poly.terms():
        value = coefficient_to_rational_function(poly.ring, coefficient).evaluate(t0)
        if value:
            terms[monomial] = value
    return from_terms(target, terms)
