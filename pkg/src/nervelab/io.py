"""JSON persistence: sset/v1, scat/v1, cat/v1 and the derived report formats.

Identifiers may be strings, integers or (nested) tuples; tuples are written
as JSON arrays and read back as tuples.  A mapping key holds a plain string
identifier verbatim and anything else as compact JSON text.  Output is canonical
(sorted keys, fixed indentation) so that ``dumps(load(dumps(x))) == dumps(x)``.
"""
from __future__ import annotations

import json
from typing import Any, Hashable

from .cat import FiniteCategory, FiniteFunctor
from .qf import FiberedCategory, SDiagram
from .scat import SimplicialCategory
from .sset import Simplex, SimplicialMap, SimplicialSet


class SchemaError(ValueError):
    """Invalid input; ``field`` points at the offending location."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def encode_id(x: Hashable) -> Any:
    if isinstance(x, tuple):
        return [encode_id(v) for v in x]
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError("id", f"unsupported identifier {x!r}")
    return x


def decode_id(x: Any) -> Hashable:
    if isinstance(x, list):
        return tuple(decode_id(v) for v in x)
    return x


def _json_literal(s: str) -> Any:
    """The value if ``s`` is JSON text other than a float, else ``None``."""
    try:
        v = json.loads(s)
    except ValueError:
        return None
    return None if isinstance(v, float) else v


def id_key(x: Hashable) -> str:
    if isinstance(x, str) and _json_literal(x) is None:
        return x
    return json.dumps(encode_id(x), separators=(",", ":"), ensure_ascii=False)


def key_id(s: str) -> Hashable:
    v = _json_literal(s)
    return s if v is None else decode_id(v)


def simplex_ref(s: Simplex, with_dim: bool = False) -> dict:
    out = {"nd": encode_id(s.nd), "word": list(s.word)}
    if with_dim:
        out["dim"] = s.dim
    return out


def parse_simplex_ref(doc: Any, dim: int | None, where: str) -> Simplex:
    if not isinstance(doc, dict) or "nd" not in doc or "word" not in doc:
        raise SchemaError(where, "expected {nd, word}")
    d = doc.get("dim", dim)
    if d is None:
        raise SchemaError(where, "dimension unknown")
    try:
        return Simplex.from_word(decode_id(doc["nd"]), doc["word"], d)
    except Exception as exc:  # malformed words
        raise SchemaError(where, str(exc)) from exc


def _require(doc: Any, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{where}.{key}", "missing")
    return doc[key]


def _check_schema(doc: Any, name: str, where: str = "$") -> None:
    got = _require(doc, "schema", where)
    if got != name:
        raise SchemaError(f"{where}.schema", f"expected {name!r}, got {got!r}")


# --------------------------------------------------------------------------
# sset/v1


def sset_to_json(X: SimplicialSet) -> dict:
    return {
        "schema": "sset/v1",
        "name": X.name,
        "cap": X.cap,
        "finite": X.finite,
        "cells": [[encode_id(c) for c in level] for level in X.cells],
        "faces": {id_key(c): [simplex_ref(f) for f in fs] for c, fs in X.faces.items()},
    }


def sset_from_json(doc: Any, where: str = "$") -> SimplicialSet:
    _check_schema(doc, "sset/v1", where)
    cap = _require(doc, "cap", where)
    if not isinstance(cap, int) or cap < 0:
        raise SchemaError(f"{where}.cap", "must be a non-negative integer")
    raw = _require(doc, "cells", where)
    if not isinstance(raw, list):
        raise SchemaError(f"{where}.cells", "must be a list of lists")
    cells = [[decode_id(c) for c in level] for level in raw]
    dim = {c: k for k, level in enumerate(cells) for c in level}
    faces = {}
    for key, refs in _require(doc, "faces", where).items():
        c = key_id(key)
        if c not in dim:
            raise SchemaError(f"{where}.faces.{key}", "unknown cell")
        k = dim[c]
        if not isinstance(refs, list) or len(refs) != k + 1:
            raise SchemaError(f"{where}.faces.{key}", f"need {k + 1} faces")
        faces[c] = tuple(parse_simplex_ref(r, k - 1, f"{where}.faces.{key}[{i}]") for i, r in enumerate(refs))
    for k in range(1, len(cells)):
        for c in cells[k]:
            if c not in faces:
                raise SchemaError(f"{where}.faces", f"cell {c!r} has no faces")
    try:
        X = SimplicialSet(cap, cells, faces, finite=doc.get("finite", True), name=doc.get("name"))
    except Exception as exc:
        raise SchemaError(where, str(exc)) from exc
    problems = X.check()
    if problems:
        raise SchemaError(f"{where}.faces", problems[0])
    return X


def map_to_json(f: SimplicialMap) -> dict:
    return {"schema": "smap/v1",
            "assignment": {id_key(c): simplex_ref(f.assignment[c]) for c in f.source.all_cells()}}


# --------------------------------------------------------------------------
# cat/v1


def cat_to_json(C: FiniteCategory) -> dict:
    return {
        "schema": "cat/v1",
        "name": C.name,
        "objects": [encode_id(x) for x in C.objects],
        "arrows": [[encode_id(a), encode_id(s), encode_id(t)] for a, (s, t) in C.arrows.items()],
        "identities": [[encode_id(x), encode_id(C.identities[x])] for x in C.objects],
        "compose": [[encode_id(g), encode_id(f), encode_id(h)] for (g, f), h in C.compose_table.items()],
    }


def cat_from_json(doc: Any, where: str = "$") -> FiniteCategory:
    _check_schema(doc, "cat/v1", where)
    objects = [decode_id(x) for x in _require(doc, "objects", where)]
    try:
        arrows = {decode_id(a): (decode_id(s), decode_id(t)) for a, s, t in _require(doc, "arrows", where)}
        ids = {decode_id(x): decode_id(i) for x, i in _require(doc, "identities", where)}
        comp = {(decode_id(g), decode_id(f)): decode_id(h) for g, f, h in _require(doc, "compose", where)}
    except (TypeError, ValueError) as exc:
        raise SchemaError(where, f"malformed table: {exc}") from exc
    C = FiniteCategory(objects, arrows, ids, comp, name=doc.get("name"))
    problems = C.check()
    if problems:
        raise SchemaError(where, problems[0])
    return C


def functor_to_json(F: FiniteFunctor) -> dict:
    return {
        "schema": "functor/v1",
        "source": cat_to_json(F.source),
        "target": cat_to_json(F.target),
        "on_objects": [[encode_id(x), encode_id(F.on_objects[x])] for x in F.source.objects],
        "on_arrows": [[encode_id(a), encode_id(F.on_arrows[a])] for a in F.source.arrows],
    }


def functor_from_json(doc: Any, where: str = "$", source: FiniteCategory | None = None,
                      target: FiniteCategory | None = None) -> FiniteFunctor:
    _check_schema(doc, "functor/v1", where)
    S = source or cat_from_json(_require(doc, "source", where), f"{where}.source")
    T = target or cat_from_json(_require(doc, "target", where), f"{where}.target")
    F = FiniteFunctor(S, T, {decode_id(x): decode_id(y) for x, y in _require(doc, "on_objects", where)},
                      {decode_id(a): decode_id(b) for a, b in _require(doc, "on_arrows", where)})
    missing = [x for x in S.objects if x not in F.on_objects] + [a for a in S.arrows if a not in F.on_arrows]
    if missing:
        raise SchemaError(where, f"functor undefined on {missing[0]!r}")
    problems = F.check()
    if problems:
        raise SchemaError(where, problems[0])
    return F


def fibered_to_json(p: FiberedCategory) -> dict:
    return {"schema": "fibered/v1", "projection": functor_to_json(p.projection)}


def fibered_from_json(doc: Any, where: str = "$") -> FiberedCategory:
    _check_schema(doc, "fibered/v1", where)
    P = functor_from_json(_require(doc, "projection", where), f"{where}.projection")
    return FiberedCategory(P.source, P.target, P)


def sdiagram_to_json(F: SDiagram) -> dict:
    B = F.base
    return {
        "schema": "sdiagram/v1",
        "base": cat_to_json(B),
        "values": [[encode_id(b), sset_to_json(F.values[b])] for b in B.objects],
        "maps": [[encode_id(a), map_to_json(F.maps[a])] for a in B.arrows],
    }


def sdiagram_from_json(doc: Any, where: str = "$") -> SDiagram:
    _check_schema(doc, "sdiagram/v1", where)
    B = cat_from_json(_require(doc, "base", where), f"{where}.base")
    values = {decode_id(b): sset_from_json(v, f"{where}.values[{n}]")
              for n, (b, v) in enumerate(_require(doc, "values", where))}
    maps = {}
    for n, (a, m) in enumerate(_require(doc, "maps", where)):
        a = decode_id(a)
        if a not in B.arrows:
            raise SchemaError(f"{where}.maps[{n}]", f"unknown arrow {a!r}")
        b, c = B.arrows[a]
        src, tgt = values[c], values[b]
        assignment = {}
        for key, ref in _require(m, "assignment", f"{where}.maps[{n}]").items():
            cell = key_id(key)
            if cell not in src.dim_of:
                raise SchemaError(f"{where}.maps[{n}].assignment.{key}", "unknown cell")
            assignment[cell] = parse_simplex_ref(ref, src.dim_of[cell], f"{where}.maps[{n}].assignment.{key}")
        maps[a] = SimplicialMap(src, tgt, assignment)
    D = SDiagram(B, values, maps)
    problems = D.check()
    if problems:
        raise SchemaError(f"{where}.maps", problems[0])
    return D


# --------------------------------------------------------------------------
# scat/v1


def scat_to_json(C: SimplicialCategory, up_to: int | None = None) -> dict:
    """Homs plus the full composition tables in degrees ``<= up_to`` (default: the cap)."""
    k_max = C.cap if up_to is None else up_to
    homs = [[encode_id(x), encode_id(y), sset_to_json(H)] for (x, y), H in C.homs.items()]
    tables = []
    for k in range(k_max + 1):
        for (x, y, z, g, f), h in C.composition_table(k).items():
            tables.append([k, encode_id(x), encode_id(y), encode_id(z),
                           simplex_ref(g), simplex_ref(f), simplex_ref(h)])
    return {
        "schema": "scat/v1",
        "name": C.name,
        "cap": k_max,
        "objects": [encode_id(x) for x in C.objects],
        "identities": [[encode_id(x), encode_id(C.identities[x])] for x in C.objects],
        "homs": homs,
        "compose": tables,
    }


def scat_from_json(doc: Any, where: str = "$") -> SimplicialCategory:
    _check_schema(doc, "scat/v1", where)
    objects = [decode_id(x) for x in _require(doc, "objects", where)]
    homs = {}
    for n, entry in enumerate(_require(doc, "homs", where)):
        if not isinstance(entry, list) or len(entry) != 3:
            raise SchemaError(f"{where}.homs[{n}]", "expected [source, target, sset]")
        x, y, H = entry
        homs[(decode_id(x), decode_id(y))] = sset_from_json(H, f"{where}.homs[{n}]")
    ids = {decode_id(x): decode_id(i) for x, i in _require(doc, "identities", where)}
    table = {}
    for n, row in enumerate(_require(doc, "compose", where)):
        if not isinstance(row, list) or len(row) != 7:
            raise SchemaError(f"{where}.compose[{n}]", "expected [k, x, y, z, g, f, gf]")
        k, x, y, z, g, f, h = row
        w = f"{where}.compose[{n}]"
        key = (k, decode_id(x), decode_id(y), decode_id(z), parse_simplex_ref(g, k, w), parse_simplex_ref(f, k, w))
        table[key] = parse_simplex_ref(h, k, w)
    cap = _require(doc, "cap", where)

    def compose(x, y, z, g, f):
        try:
            return table[(g.dim, x, y, z, g, f)]
        except KeyError:
            raise KeyError(f"composite not tabulated in degree {g.dim}") from None

    C = SimplicialCategory(objects, homs, ids, compose, name=doc.get("name"), cap=cap)
    for x in objects:
        if x not in ids:
            raise SchemaError(f"{where}.identities", f"object {x!r} has no identity")
    try:
        problems = C.check(min(cap, 1))
    except KeyError as exc:
        raise SchemaError(f"{where}.compose", str(exc)) from exc
    if problems:
        raise SchemaError(f"{where}.compose", problems[0])
    return C


# --------------------------------------------------------------------------
# reports


def _ref_any(x: Any) -> Any:
    if isinstance(x, Simplex):
        return simplex_ref(x, with_dim=True)
    if isinstance(x, tuple):
        return [_ref_any(v) for v in x]
    return encode_id(x)


def nerve_to_json(N) -> dict:
    """sset/v1 document with a provenance sidecar: cell id -> functor witness."""
    out = sset_to_json(N.value)
    out["provenance"] = {
        "flavor": N.flavor,
        "functors": {id_key(c): {"objects": _ref_any(key[0]), "images": _ref_any(key[1])}
                     for c, key in N.provenance.items()},
    }
    return out


def load(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from exc
