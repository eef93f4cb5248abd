from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy.polys.groebnertools import groebner, is_groebner, spoly
from sympy.polys.rings import PolyElement, PolyRing

from .modular import DEFAULT_PRIME, modular_groebner
from .rings import depends_only_on, elimination_ring, move, with_order

logger = logging.getLogger(__name__)


class NotZeroDimensional(ValueError):
    pass


class GenericityFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverOptions:
    modular: bool = False
    prime: int = DEFAULT_PRIME


DEFAULT_OPTIONS = SolverOptions()


def standard_monomials(leading: Sequence[tuple[int, ...]], ring: PolyRing) -> list[tuple[int, ...]]:
    """Monomials divisible by no leading monomial, in increasing ring order; the quotient must be finite."""

    def divisible(monomial: tuple[int, ...]) -> bool:
        return any(all(a >= b for a, b in zip(monomial, lead)) for lead in leading)

    one = (0,) * ring.ngens
    if divisible(one):
        return []
    found, frontier = {one}, [one]
    while frontier:
        step = []
        for monomial in frontier:
            for i in range(ring.ngens):
                candidate = monomial[:i] + (monomial[i] + 1,) + monomial[i + 1 :]
                if candidate not in found and not divisible(candidate):
                    found.add(candidate)
                    step.append(candidate)
        frontier = step
    return sorted(found, key=ring.order)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; ``ring`` carries the monomial order it was computed for."""

    generators: tuple[PolyElement, ...]
    ring: PolyRing
    order: str = "grevlex"

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0] == self.ring.one

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.LM for g in self.generators]

    def reduce(self, poly: PolyElement) -> PolyElement:
        return poly.set_ring(self.ring).rem(list(self.generators))

    def contains(self, poly: PolyElement) -> bool:
        return not self.reduce(poly)

    def is_zero_dimensional(self) -> bool:
        if self.is_unit:
            return True
        found = set()
        for monomial in self.leading_monomials():
            support = [i for i, e in enumerate(monomial) if e]
            if len(support) == 1:
                found.add(support[0])
        return len(found) == self.ring.ngens

    def standard_monomials(self) -> list[tuple[int, ...]]:
        if self.is_unit:
            return []
        if not self.is_zero_dimensional():
            raise NotZeroDimensional("Quotient ring is infinite-dimensional.")
        return standard_monomials(self.leading_monomials(), self.ring)

    def quotient_dimension(self) -> int:
        return len(self.standard_monomials())


def check_buchberger(G: GroebnerBasis) -> bool:
    """Every S-polynomial reduces to zero."""
    generators = list(G.generators)
    if not is_groebner(generators, G.ring):
        return False
    for i, f in enumerate(generators):
        for g in generators[i + 1 :]:
            if spoly(f, g, G.ring).rem(generators):
                return False
    return True


def groebner_basis(
    gens: Sequence[PolyElement],
    order: str = "grevlex",
    variable_order: Sequence[int] | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> GroebnerBasis:
    """Reduced basis for ``order``; ``variable_order`` lists variable positions from largest to smallest."""
    if not gens:
        raise ValueError("Need at least one generator.")
    ring = with_order(gens[0].ring, order, variable_order)
    return _compute(move(gens, ring), ring, order, options)


def _compute(polys: list[PolyElement], ring: PolyRing, order: str, options: SolverOptions) -> GroebnerBasis:
    polys = [poly for poly in polys if poly]
    if not polys:
        return GroebnerBasis(generators=(ring.zero,), ring=ring, order=order)
    basis = modular_groebner(polys, ring, options.prime) if options.modular else None
    if basis is None:
        basis = groebner(polys, ring)
    logger.debug("Groebner basis (%s, %s variables): %s generators.", order, ring.ngens, len(basis))
    return GroebnerBasis(generators=tuple(basis), ring=ring, order=order)


def saturate(gens: Sequence[PolyElement], variables: Iterable[int], options: SolverOptions = DEFAULT_OPTIONS) -> list[PolyElement]:
    """Generators of I : (prod of the given variables)^infinity via an auxiliary variable."""
    if not gens:
        return []
    ring = gens[0].ring
    chosen = sorted(set(variables))
    if not chosen:
        return list(gens)
    extended = elimination_ring(ring)
    product = extended.one
    for index in chosen:
        product *= extended.gens[index + 1]
    auxiliary = extended.gens[0] * product - 1
    basis = _compute(move(gens, extended) + [auxiliary], extended, "elimination", options)
    kept = [g for g in basis.generators if all(monomial[0] == 0 for monomial in g.monoms())]
    logger.debug("Saturated by %s variables: %s generators remain.", len(chosen), len(kept))
    return move(kept, ring)


def saturate_torus(gens: Sequence[PolyElement], variables: Iterable[int] | None = None, options: SolverOptions = DEFAULT_OPTIONS) -> list[PolyElement]:
    if not gens:
        return []
    if variables is None:
        variables = range(gens[0].ring.ngens)
    return saturate(gens, variables, options)


def eliminant(
    gens: Sequence[PolyElement],
    keep_var: int,
    order: Sequence[int] | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> PolyElement:
    """Generator of the elimination ideal in ``keep_var`` via a lex basis with ``keep_var`` smallest."""
    ring = gens[0].ring
    if order is None:
        order = [i for i in range(ring.ngens) if i != keep_var] + [keep_var]
    order = list(order)
    if order[-1] != keep_var:
        raise ValueError("The kept variable must be the smallest in the elimination order.")
    G = groebner_basis(gens, order="lex", variable_order=order, options=options)
    if G.is_unit:
        return ring.one
    if not G.is_zero_dimensional():
        raise NotZeroDimensional("Cannot eliminate down to one variable: ideal is not zero-dimensional.")
    candidates = [g for g in G.generators if depends_only_on(g, G.ring.ngens - 1)]
    # A reduced lex basis of a zero-dimensional ideal has exactly one univariate element in the last variable.
    (univariate,) = candidates
    return univariate.set_ring(ring)
