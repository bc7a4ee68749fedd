"""JSON documents for games, functions, measures, maps and verdicts.

Rationals are always strings ``"p/q"`` (or ``"p"``). A subset is keyed by
its labels joined with commas in ground order; the empty set is ``""``.
Canonical text has sorted keys, two-space indent and a trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .balance import Balanced, BalancedViolation, Unbalanced, Verdict
from .domain import (
    DEFAULT_MAX_N,
    Capacity,
    FuncOnX,
    GeneratedCapacity,
    GroundSet,
    ProbMeasure,
    parse_rational,
    render_rational,
    validate_capacity,
)
from .errors import BalcapError, ParseError
from .functor import PointMap, SecondLevelCapacity


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational string like \"2/3\", got {value!r}")
    try:
        return parse_rational(value)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _object(doc: Any, where: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    return doc


def _field(doc: dict, name: str, where: str) -> Any:
    if name not in doc:
        raise ParseError(f"{where}: missing field \"{name}\"")
    return doc[name]


def _ground(doc: dict, max_n: int) -> GroundSet:
    labels = _field(doc, "labels", "$")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError("$.labels: expected a list of strings")
    if any("," in x for x in labels):
        raise ParseError("$.labels: labels may not contain commas")
    try:
        return GroundSet(tuple(labels), max_n=max_n)
    except BalcapError as exc:
        raise ParseError(f"$.labels: {exc}") from None


def _label_set(ground: GroundSet, items: Any, where: str) -> int:
    if not isinstance(items, list):
        raise ParseError(f"{where}: expected a list of labels")
    try:
        return ground.mask(items)
    except BalcapError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _key_mask(ground: GroundSet, key: str, where: str) -> int:
    if key == "":
        return 0
    parts = key.split(",")
    if len(set(parts)) != len(parts):
        raise ParseError(f"{where}: repeated label in subset key {key!r}")
    try:
        return ground.mask(parts)
    except BalcapError as exc:
        raise ParseError(f"{where}: {exc}") from None


# --- games -------------------------------------------------------------------

def game_from_doc(doc: Any, max_n: int = DEFAULT_MAX_N) -> Capacity | GeneratedCapacity:
    """Dense table or generator list; a dense table is fully validated."""
    doc = _object(doc, "$")
    ground = _ground(doc, max_n)
    if "capacity" in doc and "generators" in doc:
        raise ParseError("$: give either \"capacity\" or \"generators\", not both")
    if "capacity" in doc:
        table_doc = _object(doc["capacity"], "$.capacity")
        table = {}
        for key, raw in table_doc.items():
            where = f"$.capacity[{key!r}]"
            mask = _key_mask(ground, key, where)
            if mask in table:
                raise ParseError(f"{where}: subset listed twice")
            table[mask] = _rational(raw, where)
        return validate_capacity(table, ground)
    gens_doc = _field(doc, "generators", "$")
    if not isinstance(gens_doc, list):
        raise ParseError("$.generators: expected a list")
    gens = []
    for k, item in enumerate(gens_doc):
        where = f"$.generators[{k}]"
        item = _object(item, where)
        mask = _label_set(ground, _field(item, "set", where), where + ".set")
        value = _rational(_field(item, "value", where), where + ".value")
        gens.append((mask, value))
    try:
        return GeneratedCapacity(ground, tuple(gens))
    except BalcapError as exc:
        raise ParseError(f"$.generators: {exc}") from None


def capacity_to_doc(nu: Capacity) -> dict:
    g = nu.ground
    return {"labels": list(g.labels),
            "capacity": {g.key(m): render_rational(v) for m, v in enumerate(nu.values)}}


def generated_to_doc(gen: GeneratedCapacity) -> dict:
    g = gen.ground
    return {"labels": list(g.labels),
            "generators": [{"set": g.labels_of(a), "value": render_rational(v)}
                           for a, v in gen.generators]}


def game_to_doc(game: Capacity | GeneratedCapacity) -> dict:
    if isinstance(game, GeneratedCapacity):
        return generated_to_doc(game)
    return capacity_to_doc(game)


def second_level_from_doc(doc: Any, max_n: int = DEFAULT_MAX_N) -> SecondLevelCapacity:
    doc = _object(doc, "$")
    ground = _ground(doc, max_n)
    items = _field(doc, "second_level_generators", "$")
    if not isinstance(items, list):
        raise ParseError("$.second_level_generators: expected a list")
    gens = []
    for k, item in enumerate(items):
        where = f"$.second_level_generators[{k}]"
        item = _object(item, where)
        mask = _label_set(ground, _field(item, "set", where), where + ".set")
        s = _rational(_field(item, "threshold", where), where + ".threshold")
        v = _rational(_field(item, "value", where), where + ".value")
        gens.append((mask, s, v))
    try:
        return SecondLevelCapacity(ground, tuple(gens))
    except BalcapError as exc:
        raise ParseError(f"$.second_level_generators: {exc}") from None


def second_level_to_doc(big: SecondLevelCapacity) -> dict:
    g = big.ground
    return {"labels": list(g.labels),
            "second_level_generators": [
                {"set": g.labels_of(a), "threshold": render_rational(s), "value": render_rational(v)}
                for a, s, v in big.generators]}


# --- functions and measures --------------------------------------------------

def _point_values(doc: Any, ground: GroundSet) -> tuple[Fraction, ...]:
    doc = _object(doc, "$")
    values = _object(_field(doc, "values", "$"), "$.values")
    for label in values:
        if label not in ground.labels:
            raise ParseError(f"$.values[{label!r}]: unknown label {label!r}")
    out = []
    for label in ground.labels:
        if label not in values:
            raise ParseError(f"$.values: missing value for label {label!r}")
        out.append(_rational(values[label], f"$.values[{label!r}]"))
    return tuple(out)


def function_from_doc(doc: Any, ground: GroundSet) -> FuncOnX:
    return FuncOnX(ground, _point_values(doc, ground))


def measure_from_doc(doc: Any, ground: GroundSet) -> ProbMeasure:
    try:
        return ProbMeasure(ground, _point_values(doc, ground))
    except ParseError:
        raise
    except BalcapError as exc:
        raise ParseError(f"$.values: {exc}") from None


def _point_doc(ground: GroundSet, values) -> dict:
    return {"values": {lab: render_rational(v) for lab, v in zip(ground.labels, values)}}


def function_to_doc(f: FuncOnX) -> dict:
    return _point_doc(f.ground, f.values)


def measure_to_doc(mu: ProbMeasure) -> dict:
    return _point_doc(mu.ground, mu.weights)


# --- maps --------------------------------------------------------------------

def map_from_doc(doc: Any, source: GroundSet, max_n: int = DEFAULT_MAX_N) -> PointMap:
    """``{"target": [...], "images": {"<source label>": "<target label>"}}``."""
    doc = _object(doc, "$")
    labels = _field(doc, "target", "$")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError("$.target: expected a list of strings")
    try:
        target = GroundSet(tuple(labels), max_n=max_n)
    except BalcapError as exc:
        raise ParseError(f"$.target: {exc}") from None
    images = _object(_field(doc, "images", "$"), "$.images")
    for label in images:
        if label not in source.labels:
            raise ParseError(f"$.images[{label!r}]: unknown source label {label!r}")
    out = []
    for label in source.labels:
        if label not in images:
            raise ParseError(f"$.images: missing image for label {label!r}")
        y = images[label]
        if y not in target.labels:
            raise ParseError(f"$.images[{label!r}]: {y!r} is not a target label")
        out.append(target.index(y))
    return PointMap(source, target, tuple(out))


def map_to_doc(f: PointMap) -> dict:
    return {"target": list(f.target.labels),
            "images": {f.source.labels[x]: f.target.labels[y] for x, y in enumerate(f.images)}}


# --- verdicts ----------------------------------------------------------------

def violation_to_doc(cert: BalancedViolation) -> dict:
    g = cert.ground
    return {"items": [{"set": g.labels_of(m), "lambda": render_rational(lam)} for m, lam in cert.items],
            "value": render_rational(cert.value)}


def verdict_to_doc(verdict: Verdict) -> dict:
    if isinstance(verdict, Balanced):
        return {"balanced": True, "witness": measure_to_doc(verdict.witness)}
    assert isinstance(verdict, Unbalanced)
    return {"balanced": False, "certificate": violation_to_doc(verdict.cert)}
