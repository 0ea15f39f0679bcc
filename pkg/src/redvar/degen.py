"""One-parameter degenerations via lower convex envelopes.

Heights are attached to dominant marked points and spread over the
stabilizer of the cell.  The lower envelope of the lifted points gives the
special-fibre subdivision and its marking; coherence of a candidate is
decided by an exact strict-inequality LP.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping, Sequence

from . import linalg as la
from .admissible import (MarkedType, WComplex, check_marking, interior_meets_chamber,
                         is_multiplicity_free, make_wcomplex, orbit_complex)
from .lp import System, check_certificate
from .polytope import (LatticePolytope, PLFunction, convex_hull, lattice_points, lower_envelope,
                       volume)
from .rootsys import RootSystem


class DegenerationError(ValueError):
    pass


@dataclass
class CoherentSubdivision:
    subdivision: WComplex
    marking: MarkedType
    envelopes: dict  # maximal input cell id -> PLFunction
    integrality_N: int
    cells: list = field(default_factory=list)  # new cells inside the input cells

    @property
    def key(self) -> tuple:
        return self.marking.key

    def to_json(self) -> dict:
        return {"cells": [list(map(list, c.vertices)) for c in sorted(self.cells, key=lambda c: c.key)],
                "marks": [list(p) for p in sorted(self.marking.marks)],
                "integrality_N": self.integrality_N}


@dataclass
class CoherenceResult:
    coherent: bool
    witness: dict | None = None  # point or label -> height
    certificate: dict | None = None
    system: System | None = field(default=None, repr=False)

    def certificate_valid(self) -> bool:
        return (self.certificate is not None and self.system is not None
                and check_certificate(self.system, self.certificate, "__t"))

    def to_json(self) -> dict:
        out = {"coherent": self.coherent}
        if self.witness is not None:
            out["witness"] = [{"point": list(k) if isinstance(k, tuple) else k, "h": v}
                              for k, v in sorted(self.witness.items(), key=lambda kv: str(kv[0]))]
        if self.certificate is not None:
            out["certificate"] = [{"row": str(k), "multiplier": v}
                                  for k, v in sorted(self.certificate.items(), key=lambda kv: str(kv[0]))]
        return out


def minimal_integrality(h: PLFunction, points: Iterable | None = None) -> int:
    """Least N making N*h integral at the given points (default: lattice points of the domain)."""
    if points is None:
        points = lattice_points(h.domain)
    return lcm(1, *(h(p).denominator for p in points))


def close_marks(rs: RootSystem, points: Iterable) -> frozenset:
    out = set()
    for p in points:
        out.update(rs.orbit(la.vec(p)))
    return frozenset(out)


def _stab_orbit_rep(stab, x: tuple) -> tuple | None:
    doms = {w(x) for w in stab if all(c >= 0 for c in w(x))}
    if len(doms) > 1:
        raise DegenerationError(f"point {x} has two dominant images under the stabilizer")
    return next(iter(doms), None)


def _lift(rs: RootSystem, delta: LatticePolytope, marks: frozenset, heights: Mapping) -> dict:
    stab = rs.stabilizer_of_vertices(delta.vertices)
    heights = {la.vec(k): Fraction(v) for k, v in heights.items()}
    for k in heights:
        if not rs.is_dominant(k):
            raise DegenerationError(f"height key {k} is not dominant")
        if k not in marks or not delta.contains(k):
            raise DegenerationError(f"height key {k} is not a dominant mark of the cell")
    lifted = {}
    for k, h in heights.items():
        for w in stab:
            lifted[w(k)] = h
    for v in delta.vertices:
        if v not in lifted:
            raise DegenerationError(f"no height at vertex {v}")
    return lifted


def degenerate(rs: RootSystem, delta: LatticePolytope, marks: Iterable, heights: Mapping) -> CoherentSubdivision:
    """Special fibre of the degeneration with valuations ``heights`` on C+ of delta."""
    marks = close_marks(rs, marks)
    lifted = _lift(rs, delta, marks, heights)
    env = lower_envelope(lifted.items())
    attained = env.attained & marks
    cx = orbit_complex(rs, env.cells)
    marking = check_marking(cx, close_marks(rs, attained))
    N = minimal_integrality(env.h)
    return CoherentSubdivision(cx, marking, {"delta": env.h}, N, list(env.cells))


# -- coherence ---------------------------------------------------------------

def _barycentric(pts: Mapping, labels: Sequence, span: int):
    """Affinely independent labels of a cell and a map x -> affine coordinates.

    None when the cell does not span the whole configuration, in which case its
    affine function keeps explicit variables.
    """
    base, rows = [], []
    for k in labels:
        cand = rows + [(Fraction(1),) + pts[k]]
        if la.rank(cand) > len(rows):
            base.append(k)
            rows = cand
    if len(base) != span:
        return None
    At = la.transpose(rows)

    def coords(x):
        return la.solve(At, (Fraction(1),) + tuple(x))

    return base, coords


def _affine_row(hk, ci: int, x: Sequence, n: int) -> dict:
    """h_k - l_ci(x) with explicit affine variables for the cell."""
    row = {hk: Fraction(1), ("l", ci, 0): Fraction(-1)}
    for j, c in enumerate(x):
        if c:
            row[("l", ci, j + 1)] = -c
    return row


def is_coherent_configuration(points: Mapping[Hashable, Sequence], cells: Sequence[Iterable],
                              marked: Iterable, ties: Sequence[Sequence] = ()) -> CoherenceResult:
    """Strict LP test that ``cells`` (label sets) with attained ``marked`` labels is regular.

    ``points`` maps labels to coordinates (labels may share a point); ``ties``
    are groups of labels forced to carry equal heights.
    """
    marked = set(marked)
    pts = {k: la.vec(v) for k, v in points.items()}
    n = len(next(iter(pts.values())))
    cell_sets = [frozenset(c) for c in cells]
    S = System()
    hv = {k: ("h", k) for k in marked}
    for k in sorted(marked, key=str):
        S.var(hv[k])
    for group in ties:
        group = [g for g in group if g in marked]
        for a, b in zip(group, group[1:]):
            S.eq({hv[a]: 1, hv[b]: -1}, 0, label=("tie", a, b))
    order = sorted(marked, key=str)
    span = la.rank([(Fraction(1),) + pts[k] for k in order])
    for ci, cell in enumerate(cell_sets):
        if not cell <= marked:
            raise DegenerationError("cell uses an unmarked label")
        bary = _barycentric(pts, sorted(cell, key=str), span)
        for k in order:
            if bary is not None:
                base, coords = bary
                if k in base:
                    continue
                row = {hv[k]: Fraction(1)}
                for b, lam in zip(base, coords(pts[k])):
                    if lam:
                        row[hv[b]] = row.get(hv[b], 0) - lam
            else:
                row = _affine_row(hv[k], ci, pts[k], n)
            if k in cell:
                S.eq(row, 0, label=("on", ci, k))
            else:
                # h_k - l(x) >= t
                row["__t"] = Fraction(-1)
                S.le({v: -c for v, c in row.items()}, 0, label=("above", ci, k))
    res = S.strictly_feasible("__t")
    if not res.feasible:
        return CoherenceResult(False, None, res.certificate, S)
    witness = {k: res.point[hv[k]] for k in marked}
    return CoherenceResult(True, witness, None, S)


def _candidate_cells(candidate, delta: LatticePolytope) -> tuple[list, frozenset]:
    if isinstance(candidate, MarkedType):
        cx = candidate.complex
        cells = [cx.cells[c] for c in cx.maximal_cells()]
        marks = candidate.marks
    else:
        cells, marks = candidate
        cells = [c if isinstance(c, LatticePolytope) else convex_hull(c) for c in cells]
        marks = frozenset(la.vec(p) for p in marks)
    inside = [c for c in cells if c.dim == delta.dim and all(delta.contains(v) for v in c.vertices)]
    if not inside:
        raise DegenerationError("candidate has no cell inside the polytope")
    piv = delta.pivots
    if sum((volume(c, piv) for c in inside), Fraction(0)) != volume(delta, piv):
        raise DegenerationError("candidate cells do not tile the polytope")
    return inside, marks


def is_coherent(rs: RootSystem, delta: LatticePolytope, candidate,
                full_marks: Iterable | None = None) -> CoherenceResult:
    """Height witness on the dominant marks of delta, or an infeasibility certificate.

    With ``full_marks`` the witness is extended to every dominant mark of delta,
    placing unattained ones one unit above the envelope.
    """
    cells, marks = _candidate_cells(candidate, delta)
    stab = rs.stabilizer_of_vertices(delta.vertices)
    local = sorted(p for p in marks if delta.contains(p))
    for c in cells:
        for v in c.vertices:
            if v not in marks:
                raise DegenerationError(f"candidate cell vertex {v} is unmarked")
    points = {p: p for p in local}
    cell_labels = [[p for p in local if c.contains(p)] for c in cells]
    orbits: dict = {}
    for p in local:
        r = _stab_orbit_rep(stab, p)
        if r is None:
            raise DegenerationError(f"mark {p} has no dominant image under the stabilizer")
        orbits.setdefault(r, []).append(p)
    res = is_coherent_configuration(points, cell_labels, local, list(orbits.values()))
    if not res.coherent:
        return res
    witness = {r: res.witness[r] for r in orbits if r in res.witness}
    if full_marks is not None:
        full = close_marks(rs, full_marks)
        env = lower_envelope([(p, res.witness[p]) for p in local])
        for p in sorted(full):
            if delta.contains(p) and rs.is_dominant(p) and p not in witness:
                witness[p] = env.h(p) + 1
    return CoherenceResult(True, witness, None, res.system)


# -- complexes ---------------------------------------------------------------

def _orbit_rep(cx: WComplex, cid):
    for c in cx.orbit(cid):
        if interior_meets_chamber(cx.rs, cx.cells[c]):
            return c
    raise DegenerationError(f"no cell in the orbit of {cid} meets the chamber")


def _transporter(cx: WComplex, src, dst):
    return next(w for w in cx.rs.weyl_elements if cx.act(w, src) == dst)


def _gamma_value(gamma: Sequence, x: Sequence) -> Fraction:
    g = la.vec(gamma)
    if len(g) != len(x) + 1:
        raise DegenerationError("gamma must be [constant, linear coefficients...]")
    return g[0] + la.dot(g[1:], x)


def shared_facets(cx: WComplex) -> list[tuple]:
    """(face id, first cell, second cell) for codimension-one faces of two maximal cells."""
    maxi = cx.maximal_cells()
    out = []
    for f in cx.ids:
        owners = [m for m in maxi if f in cx.faces_of(m) and f != m
                  and cx.cells[f].dim == cx.cells[m].dim - 1]
        for a, b in zip(owners, owners[1:]):
            out.append((f, a, b))
    return out


def degenerate_complex(T: MarkedType, cell_heights: Mapping, gamma: Mapping | None = None) -> CoherentSubdivision:
    """Glue per-cell degenerations and verify the cocycle compatibility on shared faces.

    ``cell_heights`` maps one maximal cell id per W-orbit to heights on the
    marks of that cell (spread over its stabilizer).  ``gamma`` maps shared
    facet ids to [c, a_1..a_r], read as x -> c + a.x; facets in the same orbit
    as a given one inherit the transported value.
    """
    cx = T.complex
    rs = cx.rs
    gamma = dict(gamma or {})
    if not all(c in cx.cells for c in cell_heights):
        raise DegenerationError("heights given for an unknown cell")
    if not is_multiplicity_free(cx):
        raise DegenerationError("complex is not multiplicity-free")
    maxi = cx.maximal_cells()
    given: dict = {}
    for c in cell_heights:
        if c not in maxi:
            raise DegenerationError(f"cell {c} is not maximal")
        o = tuple(cx.orbit(c))
        if o in given:
            raise DegenerationError(f"two height tables for the orbit of {c}")
        given[o] = c
    heights_at: dict = {}  # maximal cell -> {point: height}
    for m in maxi:
        o = tuple(cx.orbit(m))
        if o not in given:
            raise DegenerationError(f"no heights for the orbit of maximal cell {m}")
        src = given[o]
        P = cx.cells[src]
        stab = cx.stabilizer(src)
        table = {}
        for k, v in cell_heights[src].items():
            k = la.vec(k)
            if k not in T.marks or not P.contains(k):
                raise DegenerationError(f"height key {k} is not a mark of cell {src}")
            for s in stab:
                x = s(k)
                if x in table and table[x] != Fraction(v):
                    raise DegenerationError(f"heights on cell {src} are not stabilizer-invariant at {x}")
                table[x] = Fraction(v)
        w = _transporter(cx, src, m)
        heights_at[m] = {w(x): h for x, h in table.items()}
        for v in cx.cells[m].vertices:
            if v not in heights_at[m]:
                raise DegenerationError(f"no height at vertex {v} of cell {m}")
    envs = {}
    new_cells = []
    attained = set()
    for m in maxi:
        env = lower_envelope(heights_at[m].items())
        envs[m] = env.h
        new_cells.extend(env.cells)
        attained |= env.attained & T.marks
    for f, a, b in shared_facets(cx):
        g = _facet_gamma(cx, gamma, f, a, b)
        for x in lattice_points(cx.cells[f]):
            diff = envs[a](x) - envs[b](x)
            if diff != _gamma_value(g, x):
                raise DegenerationError(
                    f"compatibility fails on face {f} at {tuple(map(str, x))}: "
                    f"h_{a} - h_{b} = {diff}, gamma = {_gamma_value(g, x)}")
    cells = {}
    for c in new_cells:
        for F in c.faces():
            cells[F.key] = F
    order = sorted(cells.values(), key=lambda P: (P.dim, P.key))
    sub = make_wcomplex(rs, {f"c{k}": P for k, P in enumerate(order)})
    marking = check_marking(sub, attained)
    N = lcm(1, *(minimal_integrality(h) for h in envs.values()))
    uniq = {c.key: c for c in new_cells}
    return CoherentSubdivision(sub, marking, envs, N, list(uniq.values()))


def _facet_gamma(cx: WComplex, gamma: Mapping, f, a, b) -> Sequence:
    if f in gamma:
        return gamma[f]
    pairs = {(f2, a2, b2) for f2, a2, b2 in shared_facets(cx)}
    for w in cx.rs.weyl_elements:
        for g in gamma:
            if cx.act(w, g) != f:
                continue
            trip = next(((g, a2, b2) for f2, a2, b2 in pairs if f2 == g), None)
            if trip is None:
                continue
            _, a2, b2 = trip
            sign = 1 if (cx.act(w, a2), cx.act(w, b2)) == (a, b) else -1
            winv = cx.rs.inverse(w)
            vals = la.vec(gamma[g])
            # gamma_f(x) = sign * gamma_g(w^-1 x): transport the linear part
            lin = vals[1:]
            new_lin = tuple(sum(lin[k] * winv.matrix[k][j] for k in range(len(lin)))
                            for j in range(len(lin)))
            return tuple(sign * c for c in (vals[0],) + new_lin)
    raise DegenerationError(f"no gamma given for shared face {f}")
