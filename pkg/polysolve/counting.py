from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import Poly, Symbol, diff, gcd, together
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from core.seeding import derive_rng, draw_ints

from .groebner import DEFAULT_OPTIONS, GenericityFailure, GroebnerBasis, SolverOptions, groebner_basis, saturate_torus

logger = logging.getLogger(__name__)

FINITE = "finite"
INFINITE = "infinite"
EMPTY = "empty"
LINEAR_FORM_RANGE = (1, 10**4)
Z = Symbol("z")


@dataclass(frozen=True)
class SolutionCount:
    kind: str
    distinct: int | None = None
    quotient_dim: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in (FINITE, INFINITE, EMPTY):
            raise ValueError(f"Unknown solution-count kind {self.kind!r}.")
        if self.kind == FINITE and self.distinct is not None and self.quotient_dim is not None:
            if self.distinct > self.quotient_dim:
                raise ValueError("Distinct count cannot exceed the quotient dimension.")

    @classmethod
    def finite(cls, distinct: int, quotient_dim: int) -> SolutionCount:
        return cls(FINITE, distinct, quotient_dim)

    @classmethod
    def infinite(cls) -> SolutionCount:
        return cls(INFINITE)

    @classmethod
    def empty(cls) -> SolutionCount:
        return cls(EMPTY, 0, 0)

    @property
    def is_finite(self) -> bool:
        return self.kind != INFINITE

    @property
    def has_multiplicity(self) -> bool:
        return self.kind == FINITE and self.distinct < self.quotient_dim

    def __str__(self) -> str:
        if self.kind == INFINITE:
            return "inf"
        return str(self.distinct)


def multiplication_matrix(G: GroebnerBasis, coefficients: Sequence[int], basis: list[tuple[int, ...]] | None = None) -> DomainMatrix:
    """Matrix of multiplication by sum(c_i x_i) on the quotient, in the standard-monomial basis."""
    basis = basis if basis is not None else G.standard_monomials()
    ring, domain = G.ring, G.ring.domain
    size = len(basis)
    position = {monomial: k for k, monomial in enumerate(basis)}
    form = sum((domain.convert(weight) * x for weight, x in zip(coefficients, ring.gens) if weight), ring.zero)
    # Column k holds the normal form of form * basis[k].
    entries = [[domain.zero] * size for _ in range(size)]
    for k, monomial in enumerate(basis):
        image = G.reduce(form * ring.from_dict({monomial: domain.one}))
        for term, coefficient in image.terms():
            entries[position[term]][k] = coefficient
    return DomainMatrix(entries, (size, size), domain)


def _squarefree_degree(charpoly: list, domain) -> int:
    """Number of distinct roots of a characteristic polynomial given by its coefficient list."""
    if domain.is_QQ or domain.is_ZZ:
        poly = Poly.from_list([domain.to_sympy(c) for c in charpoly], Z)
        return poly.sqf_part().degree()
    # Over Q(t): clear denominators and work in Q[t][z].
    expr = together(sum(domain.to_sympy(c) * Z ** (len(charpoly) - 1 - k) for k, c in enumerate(charpoly)))
    numerator = expr.as_numer_denom()[0]
    poly = Poly(numerator, Z)
    common = gcd(numerator, diff(numerator, Z))
    return poly.degree() - Poly(common, Z).degree()


def distinct_for_form(G: GroebnerBasis, coefficients: Sequence[int], basis: list[tuple[int, ...]]) -> int:
    matrix = multiplication_matrix(G, coefficients, basis)
    return _squarefree_degree(matrix.charpoly(), G.ring.domain)


def linear_form(seed: int, *labels, count: int) -> list[int]:
    return draw_ints(derive_rng(seed, "linear-form", *labels), count, *LINEAR_FORM_RANGE)


def count_basis_solutions(G: GroebnerBasis, seed: int = 0, label: object = "") -> SolutionCount:
    """Finite/Infinite/Empty count for the variety of a Groebner basis."""
    if G.is_unit:
        return SolutionCount.empty()
    if not G.is_zero_dimensional():
        return SolutionCount.infinite()
    basis = G.standard_monomials()
    quotient_dim = len(basis)
    if quotient_dim == 1:
        return SolutionCount.finite(1, 1)

    draws = []
    for attempt in range(3):
        draws.append(distinct_for_form(G, linear_form(seed, label, attempt, count=G.ring.ngens), basis))
        if attempt == 1 and draws[0] == draws[1]:
            break
        if draws[-1] == quotient_dim:
            break
    if len(set(draws)) > 1:
        logger.warning("Linear forms disagreed on the distinct count (%s); keeping the largest.", draws)
    distinct = max(draws)
    if distinct < quotient_dim:
        logger.debug("Distinct count %s below quotient dimension %s.", distinct, quotient_dim)
    return SolutionCount.finite(distinct, quotient_dim)


def count_solutions_of(
    gens: Sequence[PolyElement],
    saturate_by: Iterable[int] = (),
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
    label: object = "",
) -> SolutionCount:
    chosen = sorted(set(saturate_by))
    polys = saturate_torus(list(gens), chosen, options) if chosen else list(gens)
    return count_basis_solutions(groebner_basis(polys, options=options), seed=seed, label=label)


def count_torus_solutions(
    gens: Sequence[PolyElement],
    variables: Iterable[int] | None = None,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> SolutionCount:
    """Count solutions with every listed variable (all by default) nonzero."""
    if not gens:
        raise ValueError("Need at least one generator.")
    if variables is None:
        variables = range(gens[0].ring.ngens)
    return count_solutions_of(gens, variables, seed=seed, options=options, label="torus")


def require_distinct(count: SolutionCount) -> int:
    if count.kind == INFINITE:
        raise GenericityFailure("System has infinitely many solutions.")
    return count.distinct
