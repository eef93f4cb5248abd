from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from core.rationals import format_rational, parse_rational, parse_rationals
from core.seeding import derive_rng
from lattice.intmatrix import IntMatrix

from .builders import (
    delete_columns,
    dilated_cube_model,
    independence_model,
    pyramid_model,
    random_scaling,
)
from .graphs import BipartiteSupport, MarkedGraph, graphical_model_matrix, quasi_independence_matrix
from .scaled_model import ModelSpecError, ScaledModel, resolve_scaling

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SPECS_DIR = Path(__file__).resolve().parent / "specs"
MODEL_TYPES = ("independence", "cube", "graphical", "quasi_independence", "explicit", "pyramid")


@dataclass(frozen=True)
class TropicalSpec:
    face: tuple[int, ...]
    w: dict[int, Fraction]
    w_prime: dict[int, Fraction]
    data: tuple[Fraction, ...]
    keep: int = 1
    order: tuple[int, ...] = ()


@dataclass(frozen=True)
class ModelSpec:
    name: str
    model: ScaledModel
    scalings: tuple[tuple[str, tuple[Fraction, ...]], ...] = ()
    flag: tuple[tuple[int, ...], ...] = ()
    tropical: TropicalSpec | None = None
    data: tuple[Fraction, ...] | None = None
    payload: dict[str, Any] = field(default_factory=dict, compare=False)


def _require(payload: dict, key: str, context: str):
    try:
        return payload[key]
    except KeyError as exc:
        raise ModelSpecError(f"Missing field {key!r} in {context} spec.") from exc


def _int_field(payload: dict, key: str, context: str) -> int:
    value = _require(payload, key, context)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ModelSpecError(f"Field {key!r} of {context} spec must be an integer.")
    return value


def resolve_scaling_entry(raw, count: int):
    """Turn a JSON scaling entry into rationals: "ones", a preset name, a list, or a seeded random draw."""
    try:
        if isinstance(raw, dict):
            if raw.get("kind") != "random":
                raise ModelSpecError(f"Unknown scaling object {raw!r}.")
            rng = derive_rng(int(raw.get("seed", 0)), "scaling")
            return random_scaling(rng, count, int(raw.get("low", 1)), int(raw.get("high", 1000)))
        return resolve_scaling(raw, count)
    except ModelSpecError:
        raise
    except ValueError as exc:
        raise ModelSpecError(str(exc)) from exc


def _build_base(payload: dict) -> ScaledModel:
    kind = _require(payload, "type", "model")
    if kind not in MODEL_TYPES:
        raise ModelSpecError(f"Unknown model type {kind!r}; expected one of {', '.join(MODEL_TYPES)}.")

    if kind == "independence":
        return independence_model(_int_field(payload, "m", kind), _int_field(payload, "k", kind))
    if kind == "cube":
        return dilated_cube_model(_int_field(payload, "dim", kind), _int_field(payload, "dilation", kind))
    if kind == "graphical":
        graph = MarkedGraph.build(
            _require(payload, "vertices", kind),
            _require(payload, "edges", kind),
            payload.get("state_counts", 2),
        )
        return graphical_model_matrix(graph)
    if kind == "quasi_independence":
        support = BipartiteSupport(
            _int_field(payload, "m", kind),
            _int_field(payload, "k", kind),
            frozenset(tuple(pair) for pair in _require(payload, "support", kind)),
        )
        return quasi_independence_matrix(support)
    if kind == "pyramid":
        base = build_model(_require(payload, "base", kind))
        return pyramid_model(base, payload.get("apex_scaling", 1))

    matrix = _require(payload, "matrix", kind)
    try:
        A = IntMatrix.from_rows(matrix)
    except (TypeError, ValueError) as exc:
        raise ModelSpecError(f"Explicit matrix is malformed: {exc}") from exc
    return ScaledModel(A=A, c=(Fraction(1),) * A.cols, provenance="explicit")


def build_model(payload: dict) -> ScaledModel:
    if not isinstance(payload, dict):
        raise ModelSpecError("Model spec must be a JSON object.")
    try:
        model = _build_base(payload)
    except ModelSpecError:
        raise
    except ValueError as exc:
        raise ModelSpecError(str(exc)) from exc
    if "scaling" in payload:
        model = model.with_scaling(resolve_scaling_entry(payload["scaling"], model.n))
    if payload.get("delete_columns"):
        model = delete_columns(model, payload["delete_columns"])
    if payload.get("name"):
        model = ScaledModel(A=model.A, c=model.c, provenance=str(payload["name"]))
    return model


def _parse_weights(raw: dict, context: str) -> dict[int, Fraction]:
    if not isinstance(raw, dict):
        raise ModelSpecError(f"Tropical {context} must map column indices to rationals.")
    try:
        return {int(key): parse_rational(value) for key, value in raw.items()}
    except ValueError as exc:
        raise ModelSpecError(f"Tropical {context}: {exc}") from exc


def _parse_tropical(raw: dict, model: ScaledModel) -> TropicalSpec:
    data = parse_rationals(_require(raw, "data", "tropical"))
    if len(data) != model.n:
        raise ModelSpecError(f"Tropical data has {len(data)} entries, model has {model.n} columns.")
    return TropicalSpec(
        face=tuple(int(j) for j in _require(raw, "face", "tropical")),
        w=_parse_weights(raw.get("w", {}), "w"),
        w_prime=_parse_weights(raw.get("w_prime", {}), "w_prime"),
        data=data,
        keep=int(raw.get("keep", 1)),
        order=tuple(int(i) for i in raw.get("order", ())),
    )


def parse_spec(payload: dict, name: str = "") -> ModelSpec:
    if not isinstance(payload, dict):
        raise ModelSpecError("Spec must be a JSON object.")
    version = payload.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ModelSpecError(f"Unsupported schema_version {version!r}; this build reads version {SCHEMA_VERSION}.")
    model = build_model(payload)

    scalings = []
    for position, entry in enumerate(payload.get("scalings", [])):
        if isinstance(entry, dict) and "scaling" in entry:
            label, raw = str(entry.get("name", f"s{position + 1}")), entry["scaling"]
        else:
            label, raw = (entry.upper() if isinstance(entry, str) else f"s{position + 1}"), entry
        scalings.append((label, resolve_scaling_entry(raw, model.n)))

    flag = tuple(tuple(int(j) for j in face) for face in payload.get("flag", []))
    tropical = _parse_tropical(payload["tropical"], model) if "tropical" in payload else None
    data = None
    if "data" in payload:
        try:
            data = parse_rationals(payload["data"])
        except ValueError as exc:
            raise ModelSpecError(f"Data: {exc}") from exc

    return ModelSpec(
        name=str(payload.get("name") or name or model.provenance),
        model=model,
        scalings=tuple(scalings),
        flag=flag,
        tropical=tropical,
        data=data,
        payload=payload,
    )


def load_spec(path: str | Path) -> ModelSpec:
    path = Path(path)
    if not path.exists():
        candidate = SPECS_DIR / path.name
        if not candidate.exists():
            candidate = SPECS_DIR / f"{path.name}.json"
        if not candidate.exists():
            raise ModelSpecError(f"Spec file {path} not found.")
        path = candidate
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ModelSpecError(f"Spec file {path} is not valid JSON: {exc}") from exc
    logger.debug("Loaded spec %s.", path)
    return parse_spec(payload, name=path.stem)


def golden_spec_paths() -> list[Path]:
    return sorted(SPECS_DIR.glob("*.json"))


def dump_model(model: ScaledModel, name: str = "") -> dict[str, Any]:
    """Explicit spec for a model; the design matrix and scaling are written out in full."""
    payload: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "type": "explicit"}
    if name or model.provenance:
        payload["name"] = name or model.provenance
    payload["matrix"] = model.A.to_rows()
    payload["scaling"] = [format_rational(value) for value in model.c]
    return payload
