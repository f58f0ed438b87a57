"""Bit-exact JSON round-trips for families.

Every scalar is stored as an integer pair (numerator, log2 denominator),
so loading reproduces the construction coordinates exactly.  Families
whose corners are not dyadic (general IFS ratios) cannot use this schema
and are rejected with a clear error.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .construction import Box, BoxFamily, Segment, SegmentFamily
from .dyadic import Dyadic
from .errors import ConfigError
from .schedule import ScheduleParams

SCHEMA_VERSION = 1


def _pair(x: Dyadic | Fraction) -> list[int]:
    if isinstance(x, Fraction):
        den = x.denominator
        if den & (den - 1) != 0:
            raise ConfigError(
                "family has non-dyadic coordinates; JSON schema stores dyadics only"
            )
        x = Dyadic(x.numerator, den.bit_length() - 1)
    return list(x.as_pair())


def _unpair(p: list[int]) -> Dyadic:
    return Dyadic(p[0], p[1])


def _params_doc(params: ScheduleParams | None, growth: list[float] | None) -> dict:
    if params is None:
        return {}
    return {
        "g": growth,
        "a": [_pair(a) for a in params.increments],
        "m": list(params.scales),
        "c_sep": params.c_sep,
    }


def family_to_json(
    fam: SegmentFamily | BoxFamily, growth: list[float] | None = None
) -> str:
    if isinstance(fam, SegmentFamily):
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": "graph-construction",
            "shape": "segments",
            "level": fam.level,
            "params": _params_doc(fam.params, growth),
            "segments": [
                _pair(s.x_lo) + _pair(s.x_hi) + _pair(s.y) for s in fam.segments
            ],
        }
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": fam.kind,
            "shape": "boxes",
            "level": fam.level,
            "params": _params_doc(fam.params, growth),
            "meta": {k: v for k, v in fam.meta},
            "boxes": [
                _pair(b.x_lo) + _pair(b.x_hi) + _pair(b.y_lo) + _pair(b.y_hi)
                for b in fam.boxes
            ],
        }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def family_from_json(text: str) -> SegmentFamily | BoxFamily:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {doc.get('schema_version')!r}")
    params = None
    pdoc = doc.get("params") or {}
    if pdoc:
        params = ScheduleParams(
            tuple(_unpair(p) for p in pdoc["a"]),
            tuple(pdoc["m"]),
            pdoc["c_sep"],
        )
    if doc["shape"] == "segments":
        segs = tuple(
            Segment(_unpair(r[0:2]), _unpair(r[2:4]), _unpair(r[4:6]))
            for r in doc["segments"]
        )
        if params is None:
            raise ConfigError("segment families require schedule params")
        return SegmentFamily(doc["level"], params, segs)
    boxes = tuple(
        Box(_unpair(r[0:2]), _unpair(r[2:4]), _unpair(r[4:6]), _unpair(r[6:8]))
        for r in doc["boxes"]
    )
    meta = tuple(sorted((doc.get("meta") or {}).items()))
    return BoxFamily(doc["level"], boxes, doc["kind"], params, meta)
