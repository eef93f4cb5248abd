from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Mapping, Sequence

from sympy import Poly, Rational, Symbol, cancel, collect, expand, fraction, gcd, together
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from core.rationals import parse_rational, parse_rationals
from core.seeding import derive_rng, draw_ints
from likelihood.likelihood_engine import LengthMismatch, ZeroDataSum, build_likelihood_equations, forced_nonzero
from polysolve.groebner import DEFAULT_OPTIONS, SolverOptions, eliminant, saturate_torus
from polysolve.ratfunc import T, RationalFunction
from polysolve.rings import from_terms, make_ring, rational_function_field, specialize_t, theta_names
from polytope.configuration import FaceDescriptor
from polytope.faces import check_face
from toric.scaled_model import ScaledModel

logger = logging.getLogger(__name__)

WEIGHT_RANGE = (1, 1000)


class WeightDomainMismatch(ValueError):
    pass


def face_indicator(F: FaceDescriptor, column: int) -> int:
    """0 for a column on F, 1 off it, however far the column lies from F."""
    return 0 if column in F.member_indices else 1


@dataclass(frozen=True)
class TropicalWeights:
    face: FaceDescriptor
    w: Mapping[int, Fraction]
    w_prime: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        on_face = set(self.face.member_indices)
        for name in ("w", "w_prime"):
            parsed = {int(key): parse_rational(value) for key, value in getattr(self, name).items()}
            if any(value <= 0 for value in parsed.values()):
                raise WeightDomainMismatch(f"Weights {name} must be strictly positive.")
            if on_face & set(parsed):
                raise WeightDomainMismatch(f"Weights {name} are given for columns on the face: {sorted(on_face & set(parsed))}.")
            object.__setattr__(self, name, dict(sorted(parsed.items())))

    def check(self, n: int) -> None:
        off_face = set(range(n)) - set(self.face.member_indices)
        for name in ("w", "w_prime"):
            keys = set(getattr(self, name))
            if keys != off_face:
                raise WeightDomainMismatch(
                    f"Weights {name} cover columns {sorted(keys)}; expected exactly the off-face columns {sorted(off_face)}."
                )

    @classmethod
    def seeded(cls, n: int, face: FaceDescriptor, seed: int, low: int = WEIGHT_RANGE[0], high: int = WEIGHT_RANGE[1]) -> TropicalWeights:
        off_face = [j for j in range(n) if j not in set(face.member_indices)]
        w = draw_ints(derive_rng(seed, "tropical-weights", "w"), len(off_face), low, high)
        w_prime = draw_ints(derive_rng(seed, "tropical-weights", "w_prime"), len(off_face), low, high)
        return cls(face=face, w=dict(zip(off_face, w)), w_prime=dict(zip(off_face, w_prime)))


@dataclass(frozen=True)
class FacialLimit:
    equations: tuple[PolyElement, ...]
    variables: tuple[int, ...]

    @property
    def ring(self) -> PolyRing:
        return self.equations[0].ring


@dataclass(frozen=True)
class TropicalSystem:
    """Likelihood equations with coefficients and data deformed by powers of t.

    Exponents are multiplied by ``t_power`` so that they are integers.
    """

    model: ScaledModel
    data: tuple[Fraction, ...]
    weights: TropicalWeights
    t_power: int
    f_hat: PolyElement
    coefficients: tuple[RationalFunction, ...]
    u_hat: tuple[RationalFunction, ...]
    targets: tuple[RationalFunction, ...]
    equations: tuple[PolyElement, ...]
    cleared: frozenset[int] = frozenset()

    @property
    def ring(self) -> PolyRing:
        return self.equations[0].ring

    def saturation_variables(self) -> list[int]:
        return sorted(set(range(self.ring.ngens)) - forced_nonzero(self.equations))

    def specialize(self, t0) -> tuple[PolyElement, ...]:
        target = make_ring(theta_names(self.model.d))
        return tuple(specialize_t(equation, t0, target) for equation in self.equations)

    def facial_limit(self) -> FacialLimit:
        """The t = 0 system without vanished equations and in the variables that still occur."""
        equations = [equation for equation in self.specialize(0) if equation]
        used = sorted({k for equation in equations for monomial in equation.monoms() for k, e in enumerate(monomial) if e})
        names = theta_names(self.model.d)
        ring = make_ring([names[k] for k in used])
        moved = tuple(
            ring.from_dict({tuple(monomial[k] for k in used): c for monomial, c in equation.terms()})
            for equation in equations
        )
        return FacialLimit(equations=moved, variables=tuple(used))


def _lifts(M: ScaledModel, W: TropicalWeights) -> tuple[list[Fraction], list[Fraction]]:
    F = W.face
    monomial = [face_indicator(F, j) * W.w.get(j, Fraction(0)) for j in range(M.n)]
    data = [face_indicator(F, j) * W.w_prime.get(j, Fraction(0)) for j in range(M.n)]
    return monomial, data


def tropical_system(M: ScaledModel, u: Sequence, F: FaceDescriptor, W: TropicalWeights) -> TropicalSystem:
    check_face(M.configuration(), F)
    if W.face.member_indices != F.member_indices:
        raise WeightDomainMismatch("Weights were drawn for a different face.")
    W.check(M.n)
    data = parse_rationals(u)
    if len(data) != M.n:
        raise LengthMismatch(f"Data has {len(data)} entries, model has {M.n} columns.")
    if sum((data[j] for j in F.member_indices), Fraction(0)) == 0:
        raise ZeroDataSum("Data on the face sums to zero, so the t = 0 limit is undefined.")

    monomial_lift, data_lift = _lifts(M, W)
    t_power = lcm(*(value.denominator for value in monomial_lift + data_lift))
    coefficients = [RationalFunction.monomial(c, int(e * t_power)) for c, e in zip(M.c, monomial_lift)]
    u_hat = tuple(RationalFunction.monomial(value, int(e * t_power)) for value, e in zip(data, data_lift))
    u_plus = sum(u_hat, RationalFunction.constant(0))
    targets = []
    for row in M.A.to_rows()[1:]:
        total = sum((u_j * a for a, u_j in zip(row, u_hat) if a), RationalFunction.constant(0))
        targets.append(total / u_plus)

    ring = make_ring(theta_names(M.d), domain=rational_function_field())
    equations, cleared = build_likelihood_equations(ring, M.exponents, coefficients, targets)
    f_hat = from_terms(ring, {(0, *a): c for a, c in zip(M.exponents, coefficients)})
    if t_power != 1:
        logger.info("Rational weights: substituted t -> t^%s.", t_power)
    return TropicalSystem(
        model=M,
        data=data,
        weights=W,
        t_power=t_power,
        f_hat=f_hat,
        coefficients=tuple(coefficients),
        u_hat=u_hat,
        targets=tuple(targets),
        equations=equations,
        cleared=cleared,
    )


@dataclass(frozen=True)
class TropicalEliminant:
    """Univariate eliminant with coefficients in Z[t], primitive and with a positive leading coefficient."""

    variable: Symbol
    poly: Poly
    t_power: int = 1

    def degree(self) -> int:
        return self.poly.degree(self.variable)

    def at(self, t0) -> Poly:
        """Specialize the (possibly substituted) parameter t to a rational value."""
        value = parse_rational(t0)
        return Poly(self.poly.as_expr().subs(T, Rational(value.numerator, value.denominator)), self.variable, domain=QQ)

    def __str__(self) -> str:
        return str(collect(expand(self.poly.as_expr()), self.variable))


def normalize_eliminant(expr, variable: Symbol) -> Poly:
    """Clear denominators, remove the Z[t] content and fix the sign of the leading coefficient."""
    numerator, _ = fraction(together(expr))
    numerator = expand(numerator)
    coefficients = Poly(numerator, variable).all_coeffs()
    content = reduce(gcd, coefficients)
    numerator = expand(cancel(numerator / content))
    _, poly = Poly(numerator, variable, T).clear_denoms(convert=True)
    _, poly = poly.primitive()
    if poly.LC() < 0:
        poly = -poly
    return poly


def same_up_to_unit(first: Poly | TropicalEliminant, second: Poly | TropicalEliminant) -> bool:
    """Equal up to a nonzero factor from Q(t)."""
    a = first.poly if isinstance(first, TropicalEliminant) else first
    b = second.poly if isinstance(second, TropicalEliminant) else second
    if b.is_zero:
        return a.is_zero
    ratio = cancel(a.as_expr() / b.as_expr())
    return ratio != 0 and ratio.free_symbols <= {T}


def univariate_eliminant(
    gens: Sequence[PolyElement],
    keep_var: int,
    order: Sequence[int] | None = None,
    saturate_by: Sequence[int] = (),
    options: SolverOptions = DEFAULT_OPTIONS,
    t_power: int = 1,
) -> TropicalEliminant:
    polys = saturate_torus(list(gens), saturate_by, options) if saturate_by else list(gens)
    raw = eliminant(polys, keep_var, order=list(order) if order else None, options=options)
    variable = raw.ring.symbols[keep_var]
    return TropicalEliminant(variable=variable, poly=normalize_eliminant(raw.as_expr(), variable), t_power=t_power)


def tropical_eliminant(
    S: TropicalSystem,
    keep_var: int,
    order: Sequence[int] | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> TropicalEliminant:
    result = univariate_eliminant(S.equations, keep_var, order, S.saturation_variables(), options, S.t_power)
    logger.debug("Eliminant in %s of degree %s.", result.variable, result.degree())
    return result
