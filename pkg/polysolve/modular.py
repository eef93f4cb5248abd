from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from sympy.polys.domains import GF, QQ
from sympy.polys.groebnertools import groebner, is_groebner
from sympy.polys.rings import PolyElement, PolyRing

logger = logging.getLogger(__name__)

DEFAULT_PRIME = (1 << 61) - 1


class UnluckyPrime(RuntimeError):
    pass


def _to_residue(coefficient, prime: int) -> int:
    numerator, denominator = int(QQ.numer(coefficient)), int(QQ.denom(coefficient))
    if denominator % prime == 0:
        raise UnluckyPrime(f"Denominator {denominator} vanishes modulo {prime}.")
    return numerator * pow(denominator, -1, prime) % prime


def _reduce_mod(polys: Sequence[PolyElement], ring_p: PolyRing, prime: int) -> list[PolyElement]:
    field = ring_p.domain
    return [
        ring_p.from_dict({monomial: field(_to_residue(c, prime)) for monomial, c in poly.terms()})
        for poly in polys
    ]


def rational_reconstruction(residue: int, modulus: int) -> Fraction | None:
    """a/b with a = residue * b mod modulus and |a|, b at most sqrt(modulus / 2), or None."""
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _lift(poly: PolyElement, ring: PolyRing, prime: int) -> PolyElement:
    terms = {}
    for monomial, coefficient in poly.terms():
        residue = int(poly.ring.domain.to_int(coefficient)) % prime
        value = rational_reconstruction(residue, prime)
        if value is None:
            raise UnluckyPrime(f"Coefficient {residue} has no small rational preimage modulo {prime}.")
        terms[monomial] = QQ(value.numerator, value.denominator)
    return ring.from_dict(terms)


def modular_groebner(polys: Sequence[PolyElement], ring: PolyRing, prime: int = DEFAULT_PRIME) -> list[PolyElement] | None:
    """Reduced Groebner basis over Q computed modulo one prime and lifted by rational reconstruction.

    Returns None when the lift fails to verify over Q; callers then fall back to rational arithmetic.
    """
    if ring.domain != QQ:
        return None
    ring_p = ring.clone(domain=GF(prime))
    try:
        basis_p = groebner(_reduce_mod(polys, ring_p, prime), ring_p)
        lifted = [_lift(g, ring, prime) for g in basis_p]
    except UnluckyPrime as exc:
        logger.warning("Modular Groebner basis abandoned: %s", exc)
        return None

    if not is_groebner(lifted, ring):
        logger.warning("Lifted basis fails the Buchberger criterion over Q; recomputing over Q.")
        return None
    if any(poly.rem(lifted) for poly in polys):
        logger.warning("Lifted basis does not reduce the input generators to zero; recomputing over Q.")
        return None
    logger.debug("Modular Groebner basis verified: %s generators.", len(lifted))
    return lifted
