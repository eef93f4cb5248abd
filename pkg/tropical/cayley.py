from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from polysolve.ratfunc import RationalFunction
from polytope.configuration import FaceDescriptor, PointConfiguration, Subdivision
from polytope.subdivision import cayley_configuration, is_triangulation, regular_subdivision
from toric.scaled_model import ScaledModel

from .tropical_engine import TropicalSystem, TropicalWeights, tropical_system

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CayleyCheck:
    is_triangulation: bool
    subdivision: Subdivision
    configuration: PointConfiguration
    lifts: tuple[int, ...]

    @property
    def cells(self) -> tuple[tuple[int, ...], ...]:
        return self.subdivision.cells

    @property
    def max_cell_size(self) -> int:
        return self.subdivision.max_cell_size()


def euler_derivatives(S: TropicalSystem) -> list[dict[tuple[int, ...], RationalFunction]]:
    """theta_i * df/dtheta_i - b_i * f for i = 1..d, as exponent -> coefficient maps (no homogenizing variable)."""
    polys = []
    for i, target in enumerate(S.targets):
        terms = {}
        for exponent, coefficient in zip(S.model.exponents, S.coefficients):
            value = coefficient * (RationalFunction.constant(exponent[i]) - target)
            if not value.is_zero:
                terms[tuple(exponent)] = value
        polys.append(terms)
    return polys


def cayley_subdivision_check(
    M: ScaledModel,
    F: FaceDescriptor,
    W: TropicalWeights,
    u: Sequence | None = None,
    drop_last: bool = False,
) -> CayleyCheck:
    """Lift the Cayley configuration of the Euler derivatives by t-valuations and test for a triangulation."""
    data = [1] * M.n if u is None else u
    S = tropical_system(M, data, F, W)
    configurations, lifts = [], []
    for terms in euler_derivatives(S):
        configurations.append(PointConfiguration.from_points(list(terms)))
        lifts.extend(coefficient.valuation() for coefficient in terms.values())
    P = cayley_configuration(configurations, drop_last=drop_last)
    subdivision = regular_subdivision(P, lifts)
    result = is_triangulation(subdivision, P)
    logger.info(
        "Cayley subdivision: %s cells, largest has %s points, triangulation=%s.",
        len(subdivision.cells),
        subdivision.max_cell_size(),
        result,
    )
    return CayleyCheck(is_triangulation=result, subdivision=subdivision, configuration=P, lifts=tuple(lifts))
