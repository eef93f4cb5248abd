from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable


def parse_rational(raw: object) -> Fraction:
    if isinstance(raw, bool):
        raise ValueError("Booleans are not rational values.")
    if isinstance(raw, Rational):
        return Fraction(int(raw.numerator), int(raw.denominator))
    if isinstance(raw, str):
        normalized = raw.strip()
        if not normalized:
            raise ValueError("Empty string is not a rational value.")
        try:
            return Fraction(normalized)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Cannot parse rational value {raw!r}.") from exc
    if isinstance(raw, float):
        raise ValueError(f"Floats are not accepted as exact values ({raw!r}); use a 'p/q' string.")
    raise ValueError(f"Unsupported rational value {raw!r}.")


def parse_rationals(raw_values: Iterable[object]) -> tuple[Fraction, ...]:
    return tuple(parse_rational(value) for value in raw_values)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
