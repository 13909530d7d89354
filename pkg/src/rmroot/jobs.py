"""JSON job files describing a variety, with path-carrying parse errors.

Schema::

    {
      "dimension": 1,
      "infinite_places": 1,
      "places": [
        {"label": "v7", "p": 7, "f": 1,
         "reduction": {"kind": "potentially_good", "e": 6, "r": 0,
                       "galois_abelian": true, "inertia_abelian": true,
                       "artin_conductor": 2}},
        {"label": "v11", "p": 11, "f": 1, "reduction": {"kind": "good"}},
        {"label": "v13", "p": 13, "f": 1,
         "reduction": {"kind": "potentially_toric", "subtype": "split"}}
      ]
    }

Unknown reduction kinds, unknown keys, and wrong types are parse errors;
every error message carries the JSON path of the offending entry.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import RootNumberError
from .places import (
    Good,
    PlaceData,
    PotentiallyGood,
    PotentiallyToric,
    ReductionClass,
    RmVarietyData,
    ToricSubtype,
)
from .residuefield import PrimePower


class JobParseError(RootNumberError):
    """A job file is malformed; ``path`` points at the offending JSON entry."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _expect_object(value: Any, path: str, allowed: set[str], required: set[str]) -> dict:
    if not isinstance(value, dict):
        raise JobParseError(path, f"expected an object, got {type(value).__name__}")
    for key in value:
        if key not in allowed:
            raise JobParseError(f"{path}.{key}", "unknown key")
    for key in required:
        if key not in value:
            raise JobParseError(path, f"missing required key {key!r}")
    return value


def _expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise JobParseError(path, f"expected an integer, got {type(value).__name__}")
    return value


def _expect_bool(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise JobParseError(path, f"expected a boolean, got {type(value).__name__}")
    return value


def _expect_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise JobParseError(path, f"expected a string, got {type(value).__name__}")
    return value


def _parse_reduction(obj: Any, path: str) -> ReductionClass:
    if not isinstance(obj, dict):
        raise JobParseError(path, f"expected an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind is None:
        raise JobParseError(path, "missing required key 'kind'")
    if kind == "good":
        _expect_object(obj, path, allowed={"kind"}, required={"kind"})
        return Good()
    if kind == "potentially_good":
        _expect_object(
            obj,
            path,
            allowed={"kind", "e", "r", "galois_abelian", "inertia_abelian", "artin_conductor"},
            required={"kind", "e"},
        )
        try:
            return PotentiallyGood(
                e=_expect_int(obj["e"], f"{path}.e"),
                r=_expect_int(obj.get("r", 0), f"{path}.r"),
                galois_abelian=_expect_bool(obj.get("galois_abelian", True), f"{path}.galois_abelian"),
                inertia_abelian=_expect_bool(obj.get("inertia_abelian", True), f"{path}.inertia_abelian"),
                artin_conductor=_expect_int(obj.get("artin_conductor", 0), f"{path}.artin_conductor"),
            )
        except ValueError as exc:
            raise JobParseError(path, str(exc)) from exc
    if kind == "potentially_toric":
        _expect_object(obj, path, allowed={"kind", "subtype"}, required={"kind", "subtype"})
        subtype = _expect_str(obj["subtype"], f"{path}.subtype")
        try:
            return PotentiallyToric(ToricSubtype(subtype))
        except ValueError as exc:
            raise JobParseError(f"{path}.subtype", f"unknown toric subtype {subtype!r}") from exc
    raise JobParseError(f"{path}.kind", f"unknown reduction kind {kind!r}")


def parse_job(obj: Any, path: str = "$") -> RmVarietyData:
    """Build :class:`RmVarietyData` from a decoded JSON object."""
    _expect_object(
        obj, path, allowed={"dimension", "infinite_places", "places"}, required={"dimension", "places"}
    )
    dimension = _expect_int(obj["dimension"], f"{path}.dimension")
    infinite = _expect_int(obj.get("infinite_places", 0), f"{path}.infinite_places")
    places_obj = obj["places"]
    if not isinstance(places_obj, list):
        raise JobParseError(f"{path}.places", "expected an array")
    places = []
    for i, place_obj in enumerate(places_obj):
        ppath = f"{path}.places[{i}]"
        _expect_object(
            place_obj, ppath, allowed={"label", "p", "f", "reduction"},
            required={"label", "p", "f", "reduction"},
        )
        label = _expect_str(place_obj["label"], f"{ppath}.label")
        p = _expect_int(place_obj["p"], f"{ppath}.p")
        f = _expect_int(place_obj["f"], f"{ppath}.f")
        try:
            pp = PrimePower(p, f)
        except ValueError as exc:
            raise JobParseError(ppath, str(exc)) from exc
        places.append(PlaceData(label, pp, _parse_reduction(place_obj["reduction"], f"{ppath}.reduction")))
    try:
        return RmVarietyData(dimension, tuple(places), infinite)
    except ValueError as exc:
        raise JobParseError(path, str(exc)) from exc


def load_job(path: str) -> RmVarietyData:
    """Parse a job file from disk."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise JobParseError("$", f"invalid JSON: {exc}") from exc
    return parse_job(obj)


def serialize_job(data: RmVarietyData) -> dict:
    """Canonical JSON-ready form; a parse/serialize round trip is stable."""
    places = []
    for place in data.places:
        red = place.reduction
        if isinstance(red, Good):
            red_obj: dict = {"kind": "good"}
        elif isinstance(red, PotentiallyGood):
            red_obj = {
                "kind": "potentially_good",
                "e": red.e,
                "r": red.r,
                "galois_abelian": red.galois_abelian,
                "inertia_abelian": red.inertia_abelian,
                "artin_conductor": red.artin_conductor,
            }
        else:
            red_obj = {"kind": "potentially_toric", "subtype": red.subtype.value}
        places.append(
            {"label": place.label, "p": place.pp.p, "f": place.pp.f, "reduction": red_obj}
        )
    return {
        "dimension": data.dimension,
        "infinite_places": data.infinite_places,
        "places": places,
    }
