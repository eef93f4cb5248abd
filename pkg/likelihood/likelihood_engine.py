from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence

import mpmath
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from core.rationals import parse_rationals
from core.seeding import derive_rng, draw_ints
from lattice.intmatrix import IntMatrix
from polysolve.counting import SolutionCount, count_solutions_of, require_distinct
from polysolve.groebner import DEFAULT_OPTIONS, GenericityFailure, SolverOptions
from polysolve.rings import from_terms, make_ring, theta_names
from toric.scaled_model import ScaledModel

logger = logging.getLogger(__name__)

AFFINE = "affine"
TORUS = "torus"
CHARTS = (AFFINE, TORUS)

DATA_RANGE = (1, 10**4)
RETRY_DATA_RANGE = (1, 10**8)
PATTERN_SYMBOLS = {"0": False, "u": True}


class ZeroDataSum(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


def _fraction(domain, value) -> Fraction:
    value = domain.to_sympy(value)
    return Fraction(int(value.p), int(value.q))


def sufficient_statistics(A: IntMatrix, u: Sequence) -> tuple[Fraction, ...]:
    u = parse_rationals(u)
    if len(u) != A.cols:
        raise LengthMismatch(f"Data has {len(u)} entries, design matrix has {A.cols} columns.")
    return tuple(sum((a * value for a, value in zip(row, u)), Fraction(0)) for row in A.to_rows())


def _clear_denominators(terms: dict[tuple[int, ...], object]) -> tuple[dict[tuple[int, ...], object], set[int]]:
    """Multiply by the monomial that makes every exponent nonnegative."""
    size = len(next(iter(terms)))
    shift = [max(0, -min(monomial[k] for monomial in terms)) for k in range(size)]
    if not any(shift):
        return terms, set()
    shifted = {tuple(e + s for e, s in zip(monomial, shift)): c for monomial, c in terms.items()}
    return shifted, {k for k, s in enumerate(shift) if s}


def build_likelihood_equations(
    ring: PolyRing,
    exponents: Sequence[Sequence[int]],
    coefficients: Sequence,
    targets: Sequence,
) -> tuple[tuple[PolyElement, ...], frozenset[int]]:
    """theta0*f - 1 and theta0*theta_i*df/dtheta_i - targets[i-1], with f = sum c_j theta^a_j.

    Coefficients may be rationals or rational functions of t; the ring's domain decides.
    Returns the equations and the variables cleared of negative exponents.
    """
    d = ring.ngens - 1
    origin = (0,) * (d + 1)
    equations = []
    cleared: set[int] = set()
    for index in range(d + 1):
        terms: dict[tuple[int, ...], object] = {}
        for exponent, coefficient in zip(exponents, coefficients):
            weight = 1 if index == 0 else exponent[index - 1]
            if not weight:
                continue
            monomial = (1, *exponent)
            value = coefficient * weight
            terms[monomial] = terms[monomial] + value if monomial in terms else value
        constant = Fraction(1) if index == 0 else targets[index - 1]
        if constant != 0:
            terms[origin] = -constant
        terms, shifted = _clear_denominators(terms)
        cleared |= shifted
        equations.append(from_terms(ring, terms))
    return tuple(equations), frozenset(cleared)


def forced_nonzero(equations: Sequence[PolyElement]) -> frozenset[int]:
    """Variables dividing every nonconstant term of an equation with a nonzero constant term."""
    forced: set[int] = set()
    for equation in equations:
        if not equation:
            continue
        size = equation.ring.ngens
        origin = (0,) * size
        if not equation.get(origin):
            continue
        common = set(range(size))
        for monomial in equation.monoms():
            if monomial != origin:
                common &= {k for k, e in enumerate(monomial) if e}
        forced |= common
    return frozenset(forced)


@dataclass(frozen=True)
class LikelihoodSystem:
    model: ScaledModel
    data: tuple[Fraction, ...]
    equations: tuple[PolyElement, ...]
    u_plus: Fraction
    targets: tuple[Fraction, ...]
    cleared: frozenset[int] = frozenset()

    @property
    def ring(self) -> PolyRing:
        return self.equations[0].ring

    def forced_nonzero(self) -> frozenset[int]:
        return forced_nonzero(self.equations)

    def saturation_variables(self, chart: str = TORUS) -> list[int]:
        """Variables to saturate by: all of them on the torus, theta0 and Laurent-cleared ones on the affine chart."""
        if chart == TORUS:
            wanted = set(range(self.ring.ngens))
        elif chart == AFFINE:
            wanted = {0} | set(self.cleared)
        else:
            raise ValueError(f"Unknown chart {chart!r}; expected one of {CHARTS}.")
        return sorted(wanted - self.forced_nonzero())

    def evaluate(self, theta: Sequence) -> tuple[Fraction, ...]:
        """Exact values of the equations at a rational point (theta0, ..., theta_d)."""
        point = parse_rationals(theta)
        if len(point) != self.ring.ngens:
            raise LengthMismatch(f"Point has {len(point)} coordinates, system has {self.ring.ngens} variables.")
        values = []
        for equation in self.equations:
            total = Fraction(0)
            for monomial, coefficient in equation.terms():
                term = _fraction(QQ, coefficient)
                for value, power in zip(point, monomial):
                    term *= value**power
                total += term
            values.append(total)
        return tuple(values)


def likelihood_system(M: ScaledModel, u: Sequence) -> LikelihoodSystem:
    data = parse_rationals(u)
    if len(data) != M.n:
        raise LengthMismatch(f"Data has {len(data)} entries, model has {M.n} columns.")
    u_plus = sum(data, Fraction(0))
    if u_plus == 0:
        raise ZeroDataSum("Data entries sum to zero.")
    targets = tuple(value / u_plus for value in sufficient_statistics(M.A, data)[1:])
    ring = make_ring(theta_names(M.d))
    equations, cleared = build_likelihood_equations(ring, M.exponents, M.c, targets)
    return LikelihoodSystem(
        model=M,
        data=data,
        equations=equations,
        u_plus=u_plus,
        targets=targets,
        cleared=cleared,
    )


def scaled_probabilities(M: ScaledModel, theta: Sequence) -> tuple:
    """p_j = c_j * theta0 * theta^a_j; exact for rational theta, mpmath otherwise."""
    if len(theta) != M.d + 1:
        raise LengthMismatch(f"Point has {len(theta)} coordinates, model needs {M.d + 1}.")
    numeric = any(isinstance(value, mpmath.mpf) for value in theta)
    point = list(theta) if numeric else list(parse_rationals(theta))
    probabilities = []
    for c_j, exponent in zip(M.c, M.exponents):
        value = mpmath.mpf(c_j.numerator) / c_j.denominator if numeric else c_j
        value = value * point[0]
        for coordinate, power in zip(point[1:], exponent):
            value = value * coordinate**power
        probabilities.append(value)
    return tuple(probabilities)


def generic_data(M: ScaledModel, seed: int, stream: Hashable, attempt: int) -> tuple[Fraction, ...]:
    low, high = DATA_RANGE if attempt < 2 else RETRY_DATA_RANGE
    values = draw_ints(derive_rng(seed, "ml-degree", stream, attempt), M.n, low, high)
    return tuple(Fraction(value) for value in values)


def ml_degree_count(
    M: ScaledModel,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
    stream: Hashable = "model",
) -> SolutionCount:
    """Torus solution count for seeded generic data, confirmed by a second draw."""
    if M.n == 1:
        return SolutionCount.finite(1, 1)
    counts: list[SolutionCount] = []
    for attempt in range(3):
        system = likelihood_system(M, generic_data(M, seed, stream, attempt))
        count = count_solutions_of(
            system.equations,
            system.saturation_variables(TORUS),
            seed=seed,
            options=options,
            label=("ml-degree", stream, attempt),
        )
        require_distinct(count)
        counts.append(count)
        if attempt == 1:
            if counts[0].distinct == counts[1].distinct:
                return counts[0]
            logger.warning(
                "Generic data draws disagree (%s vs %s) for %s; drawing a third.",
                counts[0].distinct,
                counts[1].distinct,
                M.provenance or "model",
            )
    values = [count.distinct for count in counts]
    if values[2] in values[:2]:
        return counts[2]
    raise GenericityFailure(f"Three generic data draws gave three different counts {values}.")


def ml_degree(
    M: ScaledModel,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
    stream: Hashable = "model",
) -> int:
    return ml_degree_count(M, seed, options, stream).distinct


def count_solutions(
    M: ScaledModel,
    u: Sequence,
    seed: int = 0,
    chart: str = AFFINE,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> SolutionCount:
    """Solutions of the likelihood equations for data that may contain zeros."""
    system = likelihood_system(M, u)
    return count_solutions_of(
        system.equations,
        system.saturation_variables(chart),
        seed=seed,
        options=options,
        label=("zeros", chart),
    )


def parse_pattern(pattern: Sequence[str] | str) -> tuple[bool, ...]:
    """"0"/"u" symbols (or a comma-separated string of them); True marks a free entry."""
    symbols = pattern.split(",") if isinstance(pattern, str) else list(pattern)
    try:
        return tuple(PATTERN_SYMBOLS[str(symbol).strip().lower()] for symbol in symbols)
    except KeyError as exc:
        raise ValueError(f"Pattern symbols must be '0' or 'u', got {exc.args[0]!r}.") from None


def instantiate_pattern(pattern: Sequence[str] | str, seed: int, *labels: Hashable) -> tuple[Fraction, ...]:
    free = parse_pattern(pattern)
    values = iter(draw_ints(derive_rng(seed, "pattern", *labels), sum(free), *DATA_RANGE))
    return tuple(Fraction(next(values)) if is_free else Fraction(0) for is_free in free)


@dataclass(frozen=True)
class PatternCount:
    count: SolutionCount
    counts: tuple[SolutionCount, ...]

    @property
    def unstable(self) -> bool:
        return len({str(count) for count in self.counts}) > 1


def count_pattern(
    M: ScaledModel,
    pattern: Sequence[str] | str,
    seed: int = 0,
    chart: str = AFFINE,
    options: SolverOptions = DEFAULT_OPTIONS,
    instantiations: int = 2,
) -> PatternCount:
    free = parse_pattern(pattern)
    if len(free) != M.n:
        raise LengthMismatch(f"Pattern has {len(free)} symbols, model has {M.n} columns.")
    if not any(free):
        raise ZeroDataSum("Pattern has no nonzero entries.")
    counts = []
    for draw in range(instantiations):
        u = instantiate_pattern(pattern, seed, "".join("u" if f else "0" for f in free), draw)
        counts.append(count_solutions(M, u, seed=seed, chart=chart, options=options))
    if len({str(count) for count in counts}) > 1:
        logger.warning("Pattern %s gave different counts across instantiations: %s.", pattern, [str(c) for c in counts])
    return PatternCount(count=counts[0], counts=tuple(counts))
