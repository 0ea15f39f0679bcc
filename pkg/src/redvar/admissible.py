"""W-admissible polytopes, W-complexes of polytopes and marked types.

A complex is a finite set of labelled cells, each carrying its image
polytope in the weight space, together with an action of the Weyl group on
the labels.  Markings are finite sets of lattice points of the support.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from . import linalg as la
from .polytope import (LatticePolytope, convex_hull, intersect, lattice_points,
                       relative_interiors_meet, volume)
from .rootsys import RootSystem


class AdmissibleError(ValueError):
    pass


@dataclass
class Report:
    """Validation outcome: an empty failure list means the object is valid."""

    failures: list = field(default_factory=list)  # (code, detail)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, code: str, detail: str) -> None:
        self.failures.append((code, detail))

    def codes(self) -> set:
        return {c for c, _ in self.failures}

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [{"code": c, "detail": d} for c, d in self.failures]}


# -- single polytopes ---------------------------------------------------------

def _centroid_in_relint(P: LatticePolytope, R: LatticePolytope | None) -> bool:
    # For R inside P: relint P meets R iff the centroid of R lies in relint P.
    return R is not None and P.relative_interior_contains(R.centroid)


def interior_meets_chamber(rs: RootSystem, delta: LatticePolytope) -> bool:
    from .polytope import chamber_intersection
    return _centroid_in_relint(delta, chamber_intersection(rs, delta))


def check_admissible(rs: RootSystem, delta: LatticePolytope) -> Report:
    if delta.ambient_dim != rs.rank:
        raise AdmissibleError("polytope dimension differs from rank")
    rep = Report()
    for v in delta.vertices:
        if not la.is_integral(v):
            rep.add("non_lattice_vertex", f"vertex {_fmt(v)} is not in the weight lattice")
    if not interior_meets_chamber(rs, delta):
        rep.add("interior_misses_chamber", "relative interior misses the dominant chamber")
    own = set(delta.vertices)
    for w in rs.weyl_elements:
        image = {w(v) for v in delta.vertices}
        if image == own:
            continue
        if relative_interiors_meet(delta, convex_hull(image)):
            rep.add("interiors_overlap", f"w={_word(rs, w)} moves the interior onto an overlapping one")
    return rep


def is_admissible(rs: RootSystem, delta: LatticePolytope) -> bool:
    return check_admissible(rs, delta).ok


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def reduced_word(rs: RootSystem, w) -> list[int]:
    """Indices i_1..i_l (0-based) with w = s_{i_1} ... s_{i_l}."""
    word = []
    while w.length:
        for i in range(rs.rank):
            u = rs.compose(rs.simple_reflection(i), w)
            if u.length < w.length:
                word.append(i)
                w = u
                break
    return word


def _word(rs: RootSystem, w) -> str:
    word = reduced_word(rs, w)
    return "e" if not word else "".join(f"s{i + 1}" for i in word)


# -- complexes ----------------------------------------------------------------

@dataclass
class WComplex:
    rs: RootSystem
    cells: dict  # id -> LatticePolytope
    w_action: dict  # (weyl index, id) -> id; possibly partial
    explicit_action: bool = False

    @cached_property
    def ids(self) -> list:
        return sorted(self.cells, key=lambda c: (self.cells[c].dim, self.cells[c].key, str(c)))

    @cached_property
    def face_relations(self) -> frozenset:
        """(face id, cell id) pairs with the image of the first a face of the second."""
        out = set()
        for a in self.ids:
            for b in self.ids:
                if self.cells[b].is_face(self.cells[a].vertices):
                    out.add((a, b))
        return frozenset(out)

    def act(self, w, cid):
        try:
            return self.w_action[(w.index, cid)]
        except KeyError:
            raise AdmissibleError(f"W-action undefined on cell {cid!r}") from None

    def orbit(self, cid) -> list:
        return sorted({self.act(w, cid) for w in self.rs.weyl_elements}, key=self.ids.index)

    def orbits(self) -> list[list]:
        seen, out = set(), []
        for c in self.ids:
            if c not in seen:
                o = self.orbit(c)
                seen.update(o)
                out.append(o)
        return out

    def stabilizer(self, cid) -> list:
        return [w for w in self.rs.weyl_elements if self.act(w, cid) == cid]

    def maximal_cells(self) -> list:
        return [c for c in self.ids
                if not any(a == c and b != c for a, b in self.face_relations)]

    def faces_of(self, cid) -> list:
        return [a for a, b in self.face_relations if b == cid]

    def cofaces_of(self, cid) -> list:
        return [b for a, b in self.face_relations if a == cid]

    def support_points(self) -> list:
        pts = set()
        for c in self.cells.values():
            pts.update(lattice_points(c))
        return sorted(pts)

    def cell_containing(self, x) -> list:
        return [c for c in self.ids if self.cells[c].contains(x)]

    @cached_property
    def key(self) -> tuple:
        return tuple(sorted(self.cells[c].key for c in self.cells))

    def to_json(self) -> dict:
        return {"cells": [{"id": str(c), "vertices": [list(v) for v in self.cells[c].vertices]}
                          for c in self.ids]}


def _cells_by_image(cells: Mapping) -> dict:
    by = {}
    for cid, P in cells.items():
        by.setdefault(P.key, []).append(cid)
    return by


def make_wcomplex(rs: RootSystem, cells: Mapping, w_action: Mapping | None = None) -> WComplex:
    """Build a complex, inferring the W-action from images unless a table is given.

    ``w_action`` maps a simple reflection index (0-based) to a dict of cell
    ids; the action of other elements follows from reduced words.
    """
    cells = {cid: (P if isinstance(P, LatticePolytope) else convex_hull(P)) for cid, P in cells.items()}
    for P in cells.values():
        if P.ambient_dim != rs.rank:
            raise AdmissibleError("cell dimension differs from rank")
    action = {}
    if w_action is None:
        by = _cells_by_image(cells)
        for w in rs.weyl_elements:
            for cid, P in cells.items():
                image = convex_hull([w(v) for v in P.vertices]).key
                cands = by.get(image, [])
                if len(cands) == 1:
                    action[(w.index, cid)] = cands[0]
                elif len(cands) > 1:
                    if w.is_identity and cid in cands:
                        action[(w.index, cid)] = cid
                    else:
                        raise AdmissibleError(
                            "W-action is ambiguous for repeated images; give an explicit w_action table")
        return WComplex(rs, cells, action)
    gens = {}
    for i, table in w_action.items():
        i = int(i)
        if not 0 <= i < rs.rank:
            raise AdmissibleError(f"no simple reflection {i}")
        for a, b in table.items():
            if a not in cells or b not in cells:
                raise AdmissibleError(f"dangling cell id in w_action: {a!r} -> {b!r}")
        gens[i] = dict(table)
    for w in rs.weyl_elements:
        word = reduced_word(rs, w)
        for cid in cells:
            c = cid
            try:
                for i in reversed(word):
                    c = gens[i][c]
            except KeyError:
                continue
            action[(w.index, cid)] = c
    return WComplex(rs, cells, action, explicit_action=True)


def orbit_complex(rs: RootSystem, polytopes: Iterable[LatticePolytope]) -> WComplex:
    """The complex of all W-translates of the given polytopes and of their faces."""
    images = {}
    for P in polytopes:
        for F in P.faces():
            for w in rs.weyl_elements:
                Q = convex_hull([w(v) for v in F.vertices])
                images[Q.key] = Q
    order = sorted(images.values(), key=lambda P: (P.dim, P.key))
    return make_wcomplex(rs, {f"c{k}": P for k, P in enumerate(order)})


def check_wcomplex(cx: WComplex) -> Report:
    rs = cx.rs
    rep = Report()
    for cid in cx.ids:
        if not cx.cells[cid].is_lattice:
            rep.add("non_lattice_cell", f"cell {cid} has a non-lattice vertex")
    images = _cells_by_image(cx.cells)
    for cid in cx.ids:
        for F in cx.cells[cid].faces():
            if F.key not in images:
                rep.add("face_closure", f"a face {F!r} of cell {cid} is not a cell")
    ids = cx.ids
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            R = intersect(cx.cells[a], cx.cells[b])
            if R is None:
                continue
            if not (cx.cells[a].is_face(R.vertices) and cx.cells[b].is_face(R.vertices)):
                rep.add("bad_intersection", f"cells {a} and {b} meet outside a common face")
    missing = False
    for w in rs.weyl_elements:
        for cid in ids:
            t = cx.w_action.get((w.index, cid))
            if t is None:
                rep.add("w_action_undefined", f"{_word(rs, w)} has no image for cell {cid}")
                missing = True
                continue
            if cx.cells[t].key != convex_hull([w(v) for v in cx.cells[cid].vertices]).key:
                rep.add("w_action_incompatible", f"{_word(rs, w)} sends cell {cid} to {t} with the wrong image")
    if missing:
        return rep
    for cid in ids:
        if cx.w_action[(rs.identity.index, cid)] != cid:
            rep.add("w_action_not_action", f"identity moves cell {cid}")
    for u in rs.weyl_elements:
        for i in range(rs.rank):
            s = rs.simple_reflection(i)
            su = rs.compose(s, u)
            for cid in ids:
                if cx.act(su, cid) != cx.act(s, cx.act(u, cid)):
                    rep.add("w_action_not_action", f"action is not multiplicative on cell {cid}")
    for cid in ids:
        orbit = cx.orbit(cid)
        seen = {}
        for o in orbit:
            k = cx.cells[o].key
            if k in seen and seen[k] != o:
                rep.add("orbit_not_injective", f"cells {seen[k]} and {o} in one orbit share an image")
            seen.setdefault(k, o)
    return rep


def is_multiplicity_free(cx: WComplex) -> bool:
    ids = cx.ids
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if relative_interiors_meet(cx.cells[a], cx.cells[b]):
                return False
    return True


def orbit_count(cx: WComplex) -> int:
    return len(cx.orbits())


# -- marked types -------------------------------------------------------------

@dataclass
class MarkedType:
    complex: WComplex
    marks: frozenset  # lattice points of the support

    def marks_in(self, cid) -> list:
        P = self.complex.cells[cid]
        return sorted(p for p in self.marks if P.contains(p))

    @property
    def dominant_marks(self) -> list:
        return sorted(p for p in self.marks if all(x >= 0 for x in p))

    def dominant_marks_in(self, cid) -> list:
        return [p for p in self.marks_in(cid) if all(x >= 0 for x in p)]

    @property
    def key(self) -> tuple:
        return self.complex.key, tuple(sorted(self.marks))

    def to_json(self) -> dict:
        out = self.complex.to_json()
        out["marks"] = [list(p) for p in sorted(self.marks)]
        return out


def check_marking(cx: WComplex, marks: Iterable) -> MarkedType:
    marks = frozenset(la.vec(p) for p in marks)
    for p in marks:
        if len(p) != cx.rs.rank:
            raise AdmissibleError(f"mark {_fmt(p)} has the wrong dimension")
        if not la.is_integral(p):
            raise AdmissibleError(f"mark {_fmt(p)} is not a lattice point")
        if not cx.cell_containing(p):
            raise AdmissibleError(f"mark {_fmt(p)} lies outside the support")
    for cid in cx.ids:
        for v in cx.cells[cid].vertices:
            if v not in marks:
                raise AdmissibleError(f"vertex {_fmt(v)} of cell {cid} is unmarked")
    for w in cx.rs.weyl_elements:
        for p in marks:
            if w(p) not in marks:
                raise AdmissibleError(f"marks are not W-invariant: {_fmt(p)} -> {_fmt(w(p))}")
    return MarkedType(cx, marks)


def subdivides(fine: WComplex, coarse: WComplex) -> bool:
    """Whether every cell of ``fine`` lies in a cell of ``coarse`` and the maximal cells tile it."""
    fine_max = [fine.cells[c] for c in fine.maximal_cells()]
    coarse_max = [coarse.cells[c] for c in coarse.maximal_cells()]
    for P in fine.cells.values():
        if not any(all(Q.contains(v) for v in P.vertices) for Q in coarse.cells.values()):
            return False
    for Q in coarse_max:
        inside = [P for P in fine_max if P.dim == Q.dim and all(Q.contains(v) for v in P.vertices)]
        piv = Q.pivots
        if sum((volume(P, piv) for P in inside), 0) != volume(Q, piv):
            return False
    for Q in coarse.cells.values():
        # every coarse vertex is a vertex of the fine complex
        for v in Q.vertices:
            if not any(v in P.vertices for P in fine.cells.values()):
                return False
    return True


def same_support(a: WComplex, b: WComplex) -> bool:
    def covered(x: WComplex, y: WComplex) -> bool:
        return all(any(all(Q.contains(v) for v in P.vertices) for Q in y.cells.values())
                   or _covered_by_union(P, y) for P in x.cells.values())
    return covered(a, b) and covered(b, a)


def _covered_by_union(P: LatticePolytope, cx: WComplex) -> bool:
    # P is covered by the cells of cx iff the pieces P n Q tile P by volume.
    piv = P.pivots
    pieces = []
    for Q in cx.cells.values():
        R = intersect(P, Q)
        if R is not None and R.dim == P.dim:
            pieces.append(R)
    if P.dim == 0:
        return bool(pieces)
    uniq = {R.key: R for R in pieces}
    # pieces from a polyhedral complex overlap only in lower dimension
    return sum((volume(R, piv) for R in uniq.values()), 0) == volume(P, piv)


def type_leq(a: MarkedType, b: MarkedType) -> bool:
    """a <= b: a's complex subdivides b's and a's marks are contained in b's."""
    if not same_support(a.complex, b.complex):
        raise AdmissibleError("types have different supports")
    return subdivides(a.complex, b.complex) and a.marks <= b.marks


def isomorphic_types(a: MarkedType, b: MarkedType) -> bool:
    return a.key == b.key
