from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from core.rationals import parse_rationals
from polysolve.groebner import DEFAULT_OPTIONS, SolverOptions
from polysolve.realroots import RealSolution, real_solutions
from toric.scaled_model import ScaledModel

from .likelihood_engine import (
    TORUS,
    LengthMismatch,
    ZeroDataSum,
    likelihood_system,
    scaled_probabilities,
    sufficient_statistics,
)

logger = logging.getLogger(__name__)

BIRCH_DPS = 50
RESIDUAL_TOLERANCE = mpmath.mpf("1e-30")


class NonpositiveProbability(ValueError):
    pass


class NonpositiveData(ValueError):
    pass


def _mp(value) -> mpmath.mpf:
    if isinstance(value, mpmath.mpf):
        return value
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def log_likelihood(p: Sequence, u: Sequence, dps: int = BIRCH_DPS) -> mpmath.mpf:
    """sum u_i log p_i - u_+ log p_+ in mpmath at ``dps`` digits."""
    data = parse_rationals(u)
    if len(p) != len(data):
        raise LengthMismatch(f"{len(p)} probabilities against {len(data)} data entries.")
    if any(value <= 0 for value in p):
        raise NonpositiveProbability("Log-likelihood needs every probability positive.")
    u_plus = sum(data, Fraction(0))
    if u_plus == 0:
        raise ZeroDataSum("Data entries sum to zero.")
    with mpmath.workdps(dps):
        values = [_mp(value) for value in p]
        total = mpmath.fsum(_mp(u_i) * mpmath.log(p_i) for u_i, p_i in zip(data, values) if u_i)
        return total - _mp(u_plus) * mpmath.log(mpmath.fsum(values))


@dataclass(frozen=True)
class BirchCertificate:
    mle: tuple | None
    exact: bool
    residual: mpmath.mpf | None
    log_likelihood: mpmath.mpf | None
    positive_count: int
    real_count: int
    dominates: bool = True

    @property
    def holds(self) -> bool:
        return self.positive_count == 1 and self.residual is not None and self.residual <= RESIDUAL_TOLERANCE


def _positive_probabilities(M: ScaledModel, solution: RealSolution) -> bool:
    theta0, *rest = solution.signs
    for c_j, exponent in zip(M.c, M.exponents):
        sign = (1 if c_j > 0 else -1) * theta0
        for coordinate, power in zip(rest, exponent):
            if coordinate == 0:
                return False
            if coordinate < 0 and power % 2:
                sign = -sign
        if sign <= 0:
            return False
    return True


def _residual(M: ScaledModel, p: Sequence, targets: Sequence[Fraction], dps: int) -> mpmath.mpf:
    with mpmath.workdps(dps):
        worst = mpmath.mpf(0)
        for row, target in zip(M.A.to_rows(), targets):
            value = mpmath.fsum(a * _mp(p_j) for a, p_j in zip(row, p))
            worst = max(worst, abs(value - _mp(target)))
        return worst


def verify_birch(
    M: ScaledModel,
    u: Sequence,
    seed: int = 0,
    options: SolverOptions = DEFAULT_OPTIONS,
    dps: int = BIRCH_DPS,
) -> BirchCertificate:
    """Check that exactly one real critical point has positive probabilities and that it matches A u / u_+."""
    data = parse_rationals(u)
    if any(value <= 0 for value in data):
        raise NonpositiveData("Birch verification needs strictly positive data.")
    system = likelihood_system(M, data)
    targets = tuple(value / system.u_plus for value in sufficient_statistics(M.A, data))
    solutions = real_solutions(system.equations, system.saturation_variables(TORUS), seed=seed, options=options)
    positive = [solution for solution in solutions if _positive_probabilities(M, solution)]
    logger.debug("Birch check: %s real critical points, %s with positive probabilities.", len(solutions), len(positive))
    if not positive:
        return BirchCertificate(None, False, None, None, 0, len(solutions), dominates=False)

    candidates = []
    for solution in positive:
        if solution.exact is not None:
            p = scaled_probabilities(M, solution.exact)
            exact_match = all(
                sum((a * p_j for a, p_j in zip(row, p)), Fraction(0)) == target
                for row, target in zip(M.A.to_rows(), targets)
            )
            residual = mpmath.mpf(0) if exact_match else _residual(M, p, targets, dps)
        else:
            with mpmath.workdps(dps):
                p = scaled_probabilities(M, solution.approximate(dps))
            residual = _residual(M, p, targets, dps)
        candidates.append((log_likelihood(p, data, dps), p, residual, solution.exact is not None))

    best = max(candidates, key=lambda candidate: candidate[0])
    value, p, residual, exact = best
    dominates = all(value >= other[0] for other in candidates)
    if len(positive) > 1:
        logger.warning("Found %s positive critical points; expected exactly one.", len(positive))
    return BirchCertificate(
        mle=tuple(p),
        exact=exact,
        residual=residual,
        log_likelihood=value,
        positive_count=len(positive),
        real_count=len(solutions),
        dominates=dominates,
    )
