from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
from sympy import Poly, Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from .counting import Z, linear_form, multiplication_matrix
from .groebner import (
    DEFAULT_OPTIONS,
    GenericityFailure,
    GroebnerBasis,
    NotZeroDimensional,
    SolverOptions,
    groebner_basis,
    saturate_torus,
)

logger = logging.getLogger(__name__)

MAX_FORM_ATTEMPTS = 5
MAX_REFINEMENTS = 400


def _fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class UnivariateRepresentation:
    """Solutions as x_i = coordinates[i](z) over the roots z of ``minimal``."""

    ring: PolyRing
    form: tuple[int, ...]
    minimal: Poly
    coordinates: tuple[Poly, ...]

    @property
    def degree(self) -> int:
        return self.minimal.degree() if not self.minimal.is_zero else 0


@dataclass(frozen=True)
class RealSolution:
    interval: tuple[Fraction, Fraction]
    signs: tuple[int, ...]
    exact: tuple[Fraction, ...] | None = None
    representation: UnivariateRepresentation | None = field(default=None, compare=False, repr=False)

    @property
    def is_positive(self) -> bool:
        return all(sign > 0 for sign in self.signs)

    def approximate(self, dps: int = 50) -> tuple[mpmath.mpf, ...]:
        if self.exact is not None:
            with mpmath.workdps(dps):
                return tuple(mpmath.mpf(value.numerator) / value.denominator for value in self.exact)
        rep = self.representation
        eps = Rational(1, 10 ** (dps + 10))
        start, end = (Rational(value.numerator, value.denominator) for value in self.interval)
        lo, hi = rep.minimal.refine_root(start, end, eps=eps)
        with mpmath.workdps(dps + 10):
            z = (mpmath.mpf(Rational(lo).p) / Rational(lo).q + mpmath.mpf(Rational(hi).p) / Rational(hi).q) / 2
            values = []
            for poly in rep.coordinates:
                coefficients = [mpmath.mpf(Rational(c).p) / Rational(c).q for c in poly.all_coeffs()]
                values.append(mpmath.polyval(coefficients, z))
        return tuple(values)


def _coordinates(poly: PolyElement, basis: list[tuple[int, ...]], domain) -> list:
    return [poly.get(monomial, domain.zero) for monomial in basis]


def _compose(ring: PolyRing, h: Poly, form: Sequence[int]) -> PolyElement:
    ell = sum((weight * gen for weight, gen in zip(form, ring.gens)), ring.zero)
    result = ring.zero
    for coefficient in h.all_coeffs():
        result = result * ell + ring.domain.from_sympy(coefficient)
    return result


def _shape_coordinates(G: GroebnerBasis, form: Sequence[int], basis: list[tuple[int, ...]]) -> tuple[Poly, ...]:
    ring, domain = G.ring, G.ring.domain
    generators = list(G.generators)
    ell = sum((weight * gen for weight, gen in zip(form, ring.gens)), ring.zero)
    size = len(basis)

    columns = []
    power = ring.one
    for _ in range(size):
        columns.append(_coordinates(power, basis, domain))
        power = (power * ell).rem(generators)
    powers = DomainMatrix([[columns[k][i] for k in range(size)] for i in range(size)], (size, size), domain)

    result = []
    for gen in ring.gens:
        target = DomainMatrix([[value] for value in _coordinates(gen.rem(generators), basis, domain)], (size, 1), domain)
        solution = powers.lu_solve(target).to_Matrix()
        coefficients = [solution[k, 0] for k in range(size)]
        result.append(Poly(list(reversed(coefficients)), Z, domain=QQ))
    return tuple(result)


def univariate_representation(
    gens: Sequence[PolyElement],
    saturate_by: Iterable[int] | None = None,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> UnivariateRepresentation:
    """Radical shape-basis representation of a zero-dimensional system over Q."""
    ring = gens[0].ring
    if ring.domain != QQ:
        raise ValueError("Real solving needs coefficients in Q.")
    chosen = list(range(ring.ngens)) if saturate_by is None else sorted(set(saturate_by))
    polys = saturate_torus(list(gens), chosen, options) if chosen else list(gens)
    G = groebner_basis(polys, options=options)
    if G.is_unit:
        return UnivariateRepresentation(ring=G.ring, form=(), minimal=Poly(1, Z, domain=QQ), coordinates=())
    if not G.is_zero_dimensional():
        raise NotZeroDimensional("Real solving needs finitely many complex solutions.")

    for attempt in range(MAX_FORM_ATTEMPTS):
        form = tuple(linear_form(seed, "shape", attempt, count=ring.ngens))
        basis = G.standard_monomials()
        charpoly = multiplication_matrix(G, form, basis).charpoly()
        minimal = Poly([QQ.to_sympy(c) for c in charpoly], Z, domain=QQ).sqf_part()
        working = G
        if minimal.degree() != len(basis):
            working = groebner_basis(list(G.generators) + [_compose(G.ring, minimal, form)], options=options)
            basis = working.standard_monomials()
            if len(basis) != minimal.degree():
                logger.warning("Linear form %s does not separate the solutions; drawing another.", form)
                continue
        coordinates = _shape_coordinates(working, form, basis)
        return UnivariateRepresentation(ring=working.ring, form=form, minimal=minimal.monic(), coordinates=coordinates)
    raise GenericityFailure(f"No separating linear form after {MAX_FORM_ATTEMPTS} attempts.")


def _sign(value) -> int:
    value = _fraction(value)
    return (value > 0) - (value < 0)


def _sign_at_root(minimal: Poly, poly: Poly, lo, hi) -> int:
    if poly.is_zero:
        return 0
    if lo == hi:
        return _sign(poly.eval(lo))
    common = minimal.gcd(poly)
    if common.degree() > 0 and common.count_roots(lo, hi) > 0:
        return 0
    for _ in range(MAX_REFINEMENTS):
        if poly.count_roots(lo, hi) == 0:
            return _sign(poly.eval(lo))
        lo, hi = minimal.refine_root(lo, hi, steps=1)
        if lo == hi:
            return _sign(poly.eval(lo))
    raise GenericityFailure("Could not separate a coordinate from zero on its isolating interval.")


def _rational_roots(minimal: Poly) -> list[Rational]:
    roots = []
    for factor, _ in minimal.factor_list()[1]:
        if factor.degree() == 1:
            c1, c0 = factor.all_coeffs()
            roots.append(Rational(-c0, c1))
    return roots


def real_solutions(
    gens: Sequence[PolyElement],
    saturate_by: Iterable[int] | None = None,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> list[RealSolution]:
    rep = univariate_representation(gens, saturate_by, seed, options)
    if rep.degree == 0:
        return []
    intervals = rep.minimal.intervals()
    if len(intervals) != rep.minimal.count_roots():
        raise GenericityFailure("Root isolation disagrees with the Sturm count.")
    rational = _rational_roots(rep.minimal)

    solutions = []
    for (lo, hi), _ in intervals:
        exact_root = next((root for root in rational if lo <= root <= hi), None)
        if exact_root is not None:
            values = tuple(_fraction(poly.eval(exact_root)) for poly in rep.coordinates)
            signs = tuple((v > 0) - (v < 0) for v in values)
            solutions.append(RealSolution((_fraction(lo), _fraction(hi)), signs, values, rep))
            continue
        signs = tuple(_sign_at_root(rep.minimal, poly, lo, hi) for poly in rep.coordinates)
        solutions.append(RealSolution((_fraction(lo), _fraction(hi)), signs, None, rep))
    logger.debug("%s real solutions out of %s.", len(solutions), rep.degree)
    return solutions


def real_positive_count(
    gens: Sequence[PolyElement],
    saturate_by: Iterable[int] | None = None,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> int:
    return sum(1 for solution in real_solutions(gens, saturate_by, seed, options) if solution.is_positive)
