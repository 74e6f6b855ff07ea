"""Canonical JSON serialization for every object kind.

Polynomials are arrays of canonical field-element strings, lowest degree
first ("3/4" over Q, "3" over F_p); matrices carry explicit shape plus a
row-major entry grid so zero-row and zero-column shapes survive the trip.
Serialization is canonical (sorted keys, fixed separators, trailing newline),
so equal objects produce byte-identical files.
"""

from __future__ import annotations

import json

from .fields import field_from_token, field_to_token, FieldError
from .poly import Poly
from .matrices import PolyMatrix
from .fpmod import FPModule
from .cdg import (
    CDGRing, MatrixFactorization, FPCDGModule, ClosedMorphism, as_fpcdg,
    LEFT, RIGHT,
)
from .homotopy import PeriodicComplex, CohomologyPair, HomotopyWitness
from .duality import Resolution, CompactDualResult

FORMAT_VERSION = 1


class MalformedInput(ValueError):
    pass


def _poly_to_json(p: Poly):
    return p.to_strings()


def _poly_from_json(field, data):
    if not isinstance(data, list):
        raise MalformedInput("polynomial must be a coefficient array")
    try:
        return Poly.from_strings(field, data)
    except FieldError as exc:
        raise MalformedInput(str(exc)) from exc


def _matrix_to_json(m: PolyMatrix):
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[_poly_to_json(p) for p in row] for row in m.entries],
    }


def _matrix_from_json(field, data):
    if not isinstance(data, dict) or not {"rows", "cols", "entries"} <= set(data):
        raise MalformedInput("matrix must carry rows, cols, entries")
    rows, cols = data["rows"], data["cols"]
    ent = data["entries"]
    if len(ent) != rows or any(len(r) != cols for r in ent):
        raise MalformedInput("matrix entry grid does not match its shape")
    return PolyMatrix(field, rows, cols,
                      [[_poly_from_json(field, e) for e in row] for row in ent])


def _module_to_json(m: FPModule):
    return {"presentation": _matrix_to_json(m.presentation)}


def _module_from_json(field, data):
    return FPModule(_matrix_from_json(field, data["presentation"]))


def _ring_fields(ring: CDGRing):
    return {"field": field_to_token(ring.field), "w": _poly_to_json(ring.w)}


def _ring_from_fields(data):
    try:
        field = field_from_token(data["field"])
    except (FieldError, KeyError) as exc:
        raise MalformedInput(f"bad field spec: {exc}") from exc
    return CDGRing(field, _poly_from_json(field, data["w"]))


def _check_side(side):
    if side not in (LEFT, RIGHT):
        raise MalformedInput(f"bad side {side!r}")
    return side


def to_json_dict(obj):
    """Canonical dictionary form of any serializable object."""
    if isinstance(obj, MatrixFactorization):
        d = {"version": FORMAT_VERSION, "kind": "mf", "side": obj.side,
             "rank0": obj.rank0, "rank1": obj.rank1,
             "d0": _matrix_to_json(obj.d0), "d1": _matrix_to_json(obj.d1)}
        d.update(_ring_fields(obj.ring))
        return d
    if isinstance(obj, FPCDGModule):
        d = {"version": FORMAT_VERSION, "kind": "fpcdg", "side": obj.side,
             "comp0": _module_to_json(obj.comp0),
             "comp1": _module_to_json(obj.comp1),
             "d0": _matrix_to_json(obj.d0), "d1": _matrix_to_json(obj.d1)}
        d.update(_ring_fields(obj.ring))
        return d
    if isinstance(obj, ClosedMorphism):
        return {"version": FORMAT_VERSION, "kind": "morphism",
                "source": to_json_dict(obj.source),
                "target": to_json_dict(obj.target),
                "f0": _matrix_to_json(obj.f0), "f1": _matrix_to_json(obj.f1)}
    if isinstance(obj, PeriodicComplex):
        return {"version": FORMAT_VERSION, "kind": "periodic-complex",
                "field": field_to_token(obj.field),
                "c0": _module_to_json(obj.c0), "c1": _module_to_json(obj.c1),
                "e0": _matrix_to_json(obj.e0), "e1": _matrix_to_json(obj.e1)}
    if isinstance(obj, CohomologyPair):
        return {"version": FORMAT_VERSION, "kind": "cohomology",
                "field": field_to_token(obj.h0.field),
                "h0": _module_to_json(obj.h0), "h1": _module_to_json(obj.h1),
                "finite": obj.finite,
                "h0_dim": None if obj.dims is None else obj.dims[0],
                "h1_dim": None if obj.dims is None else obj.dims[1],
                "free_ranks": list(obj.free_ranks)}
    if isinstance(obj, HomotopyWitness):
        return {"version": FORMAT_VERSION, "kind": "witness",
                "h0": _matrix_to_json(obj.h0), "h1": _matrix_to_json(obj.h1)}
    if isinstance(obj, Resolution):
        return {"version": FORMAT_VERSION, "kind": "resolution",
                "target": to_json_dict(obj.target),
                "p0": to_json_dict(obj.p0), "p1": to_json_dict(obj.p1),
                "epi": {"f0": _matrix_to_json(obj.epi.f0),
                        "f1": _matrix_to_json(obj.epi.f1)},
                "incl": {"f0": _matrix_to_json(obj.incl.f0),
                         "f1": _matrix_to_json(obj.incl.f1)}}
    if isinstance(obj, CompactDualResult):
        return {"version": FORMAT_VERSION, "kind": "xi-result",
                "xi": to_json_dict(obj.xi),
                "provenance": {
                    "resolution": to_json_dict(obj.resolution),
                    "dual_p0": to_json_dict(obj.dual_p0),
                    "dual_p1": to_json_dict(obj.dual_p1),
                    "dual_incl": {"f0": _matrix_to_json(obj.dual_incl.f0),
                                  "f1": _matrix_to_json(obj.dual_incl.f1)}}}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json_dict(data):
    """Inverse of to_json_dict; raises MalformedInput on anything suspect."""
    if not isinstance(data, dict):
        raise MalformedInput("instance file must hold a JSON object")
    if data.get("version") != FORMAT_VERSION:
        raise MalformedInput(f"unknown format version {data.get('version')!r}")
    kind = data.get("kind")
    try:
        if kind == "mf":
            ring = _ring_from_fields(data)
            m = MatrixFactorization(
                ring, _check_side(data["side"]),
                _matrix_from_json(ring.field, data["d0"]),
                _matrix_from_json(ring.field, data["d1"]),
                check=False)
            if (m.rank0, m.rank1) != (data["rank0"], data["rank1"]):
                raise MalformedInput("declared ranks do not match matrices")
            return m
        if kind == "fpcdg":
            ring = _ring_from_fields(data)
            return FPCDGModule(
                ring, _check_side(data["side"]),
                _module_from_json(ring.field, data["comp0"]),
                _module_from_json(ring.field, data["comp1"]),
                _matrix_from_json(ring.field, data["d0"]),
                _matrix_from_json(ring.field, data["d1"]),
                check=False)
        if kind == "morphism":
            src = from_json_dict(data["source"])
            tgt = from_json_dict(data["target"])
            f = src.ring.field
            return ClosedMorphism(
                src, tgt,
                _matrix_from_json(f, data["f0"]),
                _matrix_from_json(f, data["f1"]),
                check=False)
        if kind == "periodic-complex":
            field = field_from_token(data["field"])
            return PeriodicComplex(
                _module_from_json(field, data["c0"]),
                _module_from_json(field, data["c1"]),
                _matrix_from_json(field, data["e0"]),
                _matrix_from_json(field, data["e1"]),
                check=False)
        if kind == "witness":
            raise MalformedInput("witness files need a field context; embed "
                                 "them in morphism or report files")
    except MalformedInput:
        raise
    except (KeyError, TypeError, FieldError) as exc:
        raise MalformedInput(f"bad {kind} payload: {exc}") from exc
    raise MalformedInput(f"unknown kind {kind!r}")


def serialize(obj) -> str:
    """Canonical byte-stable text form."""
    return canonical_text(to_json_dict(obj))


def canonical_text(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def parse(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from exc
    return from_json_dict(data)


def instance_digest(obj) -> str:
    """Stable content digest used to key check reports."""
    import hashlib
    if isinstance(obj, (list, tuple)):
        payload = canonical_text([to_json_dict(o) for o in obj])
    else:
        payload = canonical_text(to_json_dict(obj))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]
