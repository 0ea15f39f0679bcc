"""JSON reading and writing for root systems, polytopes, complexes and heights.

Rationals are written as integers when integral and as "p/q" strings
otherwise; the same forms are accepted on input.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .admissible import WComplex, make_wcomplex
from .polytope import LatticePolytope, convex_hull
from .rootsys import DEFAULT_WEYL_CAP, RootSystem, build_root_system


class InputError(ValueError):
    """Malformed input: wrong JSON shape, missing fields, unparsable numbers."""


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {x!r}") from None
    raise InputError(f"numbers must be integers or 'p/q' strings, got {x!r}")


def parse_point(p: Any) -> tuple:
    if not isinstance(p, list):
        raise InputError(f"a point must be a list, got {p!r}")
    return tuple(parse_rational(x) for x in p)


def parse_points(ps: Any) -> list[tuple]:
    if not isinstance(ps, list):
        raise InputError(f"expected a list of points, got {ps!r}")
    return [parse_point(p) for p in ps]


def require(doc: Mapping, key: str) -> Any:
    if not isinstance(doc, Mapping) or key not in doc:
        raise InputError(f"missing field {key!r}")
    return doc[key]


def parse_root_system(doc: Mapping, weyl_cap: int = DEFAULT_WEYL_CAP) -> RootSystem:
    rs = require(doc, "root_system")
    series, rank = require(rs, "type"), require(rs, "rank")
    if not isinstance(series, str) or not isinstance(rank, int):
        raise InputError("root_system needs a string type and an integer rank")
    return build_root_system(series, rank, weyl_cap)


def parse_polytope(doc: Any) -> LatticePolytope:
    verts = parse_points(require(doc, "vertices"))
    if not verts:
        raise InputError("polytope has no vertices")
    return convex_hull(verts)


def parse_heights(entries: Any) -> dict:
    """[{"point": [...], "h": "p/q"}, ...] -> {point: Fraction}."""
    if not isinstance(entries, list):
        raise InputError("heights must be a list of {point, h} objects")
    out = {}
    for e in entries:
        out[parse_point(require(e, "point"))] = parse_rational(require(e, "h"))
    return out


def close_cells(rs: RootSystem, cells: Mapping) -> dict:
    """Add missing faces and W-translates of the given cells; user ids are kept."""
    have = {P.key: cid for cid, P in cells.items()}
    out = dict(cells)
    extra = {}
    for P in cells.values():
        for F in P.faces():
            for w in rs.weyl_elements:
                Q = convex_hull([w(v) for v in F.vertices])
                if Q.key not in have:
                    extra[Q.key] = Q
    for k, Q in enumerate(sorted(extra.values(), key=lambda P: (P.dim, P.key))):
        out[f"f{k}"] = Q
    return out


def parse_complex(doc: Mapping, rs: RootSystem, closure: bool = True) -> WComplex:
    """A complex from {"cells": [...]} or from a single {"polytope": ...}.

    Unless ``closure`` is false or an explicit ``w_action`` is present, faces
    and W-translates that the input omits are added.
    """
    if "cells" in doc:
        raw = doc["cells"]
        if not isinstance(raw, list):
            raise InputError("cells must be a list")
        cells = {}
        for k, c in enumerate(raw):
            cid = c.get("id", f"c{k}") if isinstance(c, Mapping) else None
            if cid is None:
                raise InputError("each cell must be an object with vertices")
            if cid in cells:
                raise InputError(f"duplicate cell id {cid!r}")
            cells[str(cid)] = parse_polytope(c)
    elif "polytope" in doc:
        cells = {"delta": parse_polytope(doc["polytope"])}
    else:
        raise InputError("missing field 'cells' or 'polytope'")
    action = doc.get("w_action")
    if action is not None:
        if not isinstance(action, Mapping):
            raise InputError("w_action must map simple reflection indices to id tables")
        return make_wcomplex(rs, cells, {int(i): dict(t) for i, t in action.items()})
    if closure:
        cells = close_cells(rs, cells)
    return make_wcomplex(rs, cells)


def to_jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point value in output")
    if isinstance(x, Mapping):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in x]
        if isinstance(x, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    if hasattr(x, "to_json"):
        return to_jsonable(x.to_json())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x: Any) -> str:
    return json.dumps(to_jsonable(x), sort_keys=True, indent=2, ensure_ascii=False)
