"""Exact rational convex geometry in low dimension.

Hulls are computed by exhaustive facet search inside the affine hull of the
input, projected onto pivot coordinates so the search is always
full-dimensional.  Facet normals are reported in ambient coordinates and are
valid together with the affine-hull equations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import ceil, factorial, floor
from typing import Iterable, Sequence

from . import linalg as la

DEFAULT_MAX_DIM = 4


class PolytopeError(ValueError):
    pass


def point(p: Iterable) -> tuple:
    return la.vec(p)


@dataclass(frozen=True)
class LatticePolytope:
    """A bounded convex polytope given by both of its descriptions."""

    vertices: tuple  # sorted tuple of points
    facets: tuple  # ((normal, offset), ...) meaning normal . x <= offset
    equations: tuple  # ((normal, offset), ...) meaning normal . x == offset
    dim: int

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def is_lattice(self) -> bool:
        return all(la.is_integral(v) for v in self.vertices)

    @property
    def key(self) -> tuple:
        return self.vertices

    def contains(self, x: Sequence) -> bool:
        x = point(x)
        return (all(la.dot(a, x) == b for a, b in self.equations)
                and all(la.dot(a, x) <= b for a, b in self.facets))

    def in_affine_hull(self, x: Sequence) -> bool:
        return all(la.dot(a, point(x)) == b for a, b in self.equations)

    def relative_interior_contains(self, x: Sequence) -> bool:
        x = point(x)
        if self.dim == 0:
            return x == self.vertices[0]
        return (all(la.dot(a, x) == b for a, b in self.equations)
                and all(la.dot(a, x) < b for a, b in self.facets))

    @cached_property
    def centroid(self) -> tuple:
        n = len(self.vertices)
        return tuple(sum(c) / n for c in zip(*self.vertices))

    @cached_property
    def pivots(self) -> list[int]:
        return la.pivot_coordinates(self.vertices)

    def facet_vertex_sets(self) -> list[frozenset]:
        return [frozenset(v for v in self.vertices if la.dot(a, v) == b)
                for a, b in self.facets]

    @cached_property
    def face_vertex_sets(self) -> frozenset:
        """Vertex sets of all nonempty faces, the polytope itself included."""
        faces = {frozenset(self.vertices)}
        layer = set(self.facet_vertex_sets())
        while layer:
            faces |= layer
            nxt = set()
            for a, b in combinations(layer, 2):
                c = a & b
                if c and c not in faces:
                    nxt.add(c)
            for a in layer:
                for f in self.facet_vertex_sets():
                    c = a & f
                    if c and c not in faces:
                        nxt.add(c)
            layer = nxt
        return frozenset(faces)

    def faces(self) -> list["LatticePolytope"]:
        return sorted((convex_hull(list(f)) for f in self.face_vertex_sets),
                      key=lambda p: (p.dim, p.key))

    def is_face(self, vertices: Iterable) -> bool:
        return frozenset(point(v) for v in vertices) in self.face_vertex_sets

    def translate_by(self, w) -> "LatticePolytope":
        """Image under a linear map given as a callable."""
        return convex_hull([w(v) for v in self.vertices])

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    def __repr__(self) -> str:
        vs = ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope[{vs}]"


def _hyperplane(points: Sequence[Sequence]):
    """Normal of the hyperplane through k affinely independent points in R^k."""
    p0 = points[0]
    diffs = [la.sub(p, p0) for p in points[1:]]
    ns = la.nullspace(diffs, len(p0))
    if len(ns) != 1:
        return None
    a = la.primitive(ns[0])
    return a, la.dot(a, p0)


def _full_dim_facets(pts: list[tuple], k: int) -> list[tuple]:
    """Facets (normal, offset) of a full-dimensional point set in R^k."""
    if k == 0:
        return []
    if k == 1:
        xs = [p[0] for p in pts]
        return [((1,), max(xs)), ((-1,), -min(xs))]
    found: dict = {}
    covered: list[set] = []
    for combo in combinations(range(len(pts)), k):
        if any(set(combo) <= c for c in covered):
            continue
        hp = _hyperplane([pts[i] for i in combo])
        if hp is None:
            continue
        a, b = hp
        vals = [la.dot(a, p) for p in pts]
        if all(v <= b for v in vals):
            pass
        elif all(v >= b for v in vals):
            a, b = tuple(-x for x in a), -b
        else:
            continue
        if (a, b) not in found:
            on = {i for i, p in enumerate(pts) if la.dot(a, p) == b}
            found[(a, b)] = on
            covered.append(on)
    return list(found)


def convex_hull(points: Iterable, max_dim: int = DEFAULT_MAX_DIM) -> LatticePolytope:
    """Vertices, facets and affine equations of the hull of a finite set."""
    pts = tuple(sorted({point(p) for p in points}))
    if not pts:
        raise PolytopeError("empty point set")
    return _hull(pts, max_dim)


@lru_cache(maxsize=1 << 16)
def _hull(pts: tuple, max_dim: int) -> LatticePolytope:
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise PolytopeError("mixed dimensions")
    if n > max_dim:
        raise PolytopeError(f"ambient dimension {n} exceeds cap {max_dim}")
    piv = la.pivot_coordinates(pts)
    k = len(piv)
    proj = [tuple(p[i] for i in piv) for p in pts]
    facets_proj = _full_dim_facets(proj, k) if k else []
    facets = []
    for a, b in facets_proj:
        full = [0] * n
        for j, i in enumerate(piv):
            full[i] = a[j]
        facets.append((tuple(full), Fraction(b)))
    facets.sort()
    if k == 0:
        verts = [pts[0]]
    else:
        verts = []
        for p, q in zip(pts, proj):
            tight = [a for a, b in facets_proj if la.dot(a, q) == b]
            if tight and la.rank(tight) == k:
                verts.append(p)
    eqs = tuple(sorted(la.affine_equations(pts)))
    return LatticePolytope(tuple(sorted(verts)), tuple(facets), eqs, k)


def from_inequalities(equations: Sequence, inequalities: Sequence, ambient: int,
                      max_dim: int = DEFAULT_MAX_DIM) -> LatticePolytope | None:
    """Bounded polytope {x : a.x == b for eqs, a.x <= b for ineqs}, or None if empty."""
    eq_rows = [tuple(a) for a, _ in equations]
    eq_rhs = [Fraction(b) for _, b in equations]
    r = la.rank(eq_rows) if eq_rows else 0
    need = ambient - r
    cands = set()
    ineqs = [(tuple(a), Fraction(b)) for a, b in inequalities]
    for combo in combinations(range(len(ineqs)), need):
        A = eq_rows + [ineqs[i][0] for i in combo]
        rhs = eq_rhs + [ineqs[i][1] for i in combo]
        if la.rank(A) != ambient:
            continue
        x = la.solve(A, rhs)
        if x is None:
            continue
        if all(la.dot(a, x) <= b for a, b in ineqs):
            cands.add(x)
    if need == 0:
        x = la.solve(eq_rows, eq_rhs) if eq_rows else None
        if x is not None and all(la.dot(a, x) <= b for a, b in ineqs):
            cands.add(x)
    if not cands:
        return None
    return convex_hull(cands, max_dim)


def relative_interior_contains(P: LatticePolytope, v: Sequence) -> bool:
    if len(v) != P.ambient_dim:
        raise PolytopeError("dimension mismatch")
    return P.relative_interior_contains(v)


def intersect(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope | None:
    if P.ambient_dim != Q.ambient_dim:
        raise PolytopeError("dimension mismatch")
    return from_inequalities(P.equations + Q.equations, P.facets + Q.facets, P.ambient_dim)


def relative_interiors_meet(P: LatticePolytope, Q: LatticePolytope) -> bool:
    """Whether relint P and relint Q intersect.

    If they meet, the relative interior of P n Q equals their intersection,
    so testing one relative-interior point of P n Q decides the question.
    """
    R = intersect(P, Q)
    if R is None:
        return False
    c = R.centroid
    return P.relative_interior_contains(c) and Q.relative_interior_contains(c)


def chamber_intersection(rs, P: LatticePolytope) -> LatticePolytope | None:
    if P.ambient_dim != rs.rank:
        raise PolytopeError("polytope dimension differs from rank")
    walls = [(tuple(-int(i == j) for j in range(rs.rank)), Fraction(0)) for i in range(rs.rank)]
    return from_inequalities(P.equations, P.facets + tuple(walls), P.ambient_dim)


def lattice_points(P: LatticePolytope, dilation: int = 1) -> list[tuple]:
    """Integral points of dilation * P, sorted."""
    lo = [min(v[i] for v in P.vertices) * dilation for i in range(P.ambient_dim)]
    hi = [max(v[i] for v in P.vertices) * dilation for i in range(P.ambient_dim)]
    ranges = [range(ceil(a), floor(b) + 1) for a, b in zip(lo, hi)]
    out = []
    for x in product(*ranges):
        x = tuple(Fraction(c) for c in x)
        if (all(la.dot(a, x) == b * dilation for a, b in P.equations)
                and all(la.dot(a, x) <= b * dilation for a, b in P.facets)):
            out.append(x)
    return out


def volume(P: LatticePolytope, pivots: Sequence[int] | None = None) -> Fraction:
    """Euclidean volume of P in the coordinates ``pivots`` (its own by default)."""
    if pivots is None:
        pivots = P.pivots
    k = len(pivots)
    if P.dim < k:
        return Fraction(0)
    total = Fraction(0)
    for simplex in pulling_triangulation(P):
        base = simplex[0]
        rows = [tuple(v[i] - base[i] for i in pivots) for v in simplex[1:]]
        total += abs(la.det(rows)) if rows else Fraction(1)
    return total / factorial(k)


def pulling_triangulation(P: LatticePolytope) -> list[tuple]:
    """Triangulation into simplices (vertex tuples) pulling the first vertex."""
    if P.dim == 0:
        return [(P.vertices[0],)]
    if P.dim == 1:
        return [tuple(P.vertices)]
    v0 = P.vertices[0]
    out = []
    for fset in P.facet_vertex_sets():
        if v0 in fset:
            continue
        for s in pulling_triangulation(convex_hull(fset)):
            out.append((v0,) + s)
    return out


@dataclass(frozen=True)
class AffineFunction:
    """x -> const + coeffs . x."""

    const: Fraction
    coeffs: tuple

    def __call__(self, x: Sequence) -> Fraction:
        return self.const + la.dot(self.coeffs, x)

    def to_json(self) -> dict:
        return {"const": self.const, "linear": list(self.coeffs)}


def interpolate(points: Sequence, values: Sequence, pivots: Sequence[int]) -> AffineFunction:
    """Affine function on pivot coordinates through (point, value) pairs."""
    n = len(points[0])
    A = [(Fraction(1),) + tuple(p[i] for i in pivots) for p in points]
    sol = la.solve(A, list(values))
    if sol is None:
        raise PolytopeError("values are not affine on these points")
    coeffs = [Fraction(0)] * n
    for j, i in enumerate(pivots):
        coeffs[i] = sol[1 + j]
    return AffineFunction(sol[0], tuple(coeffs))


@dataclass
class PLFunction:
    """Convex piecewise-affine function: the max of its cell functions on the domain."""

    domain: LatticePolytope
    cells: list  # [(LatticePolytope, AffineFunction)]

    def __call__(self, x: Sequence) -> Fraction:
        x = point(x)
        if not self.domain.contains(x):
            raise PolytopeError(f"{x} outside the domain")
        return max(f(x) for _, f in self.cells)

    def cell_function(self, x: Sequence) -> AffineFunction:
        x = point(x)
        for c, f in self.cells:
            if c.contains(x):
                return f
        raise PolytopeError(f"{x} lies in no cell")

    def is_consistent(self) -> bool:
        """Cell functions agree on shared points and minorize the function."""
        for c, f in self.cells:
            for v in c.vertices:
                if f(v) != self(v):
                    return False
        return True


@dataclass
class Envelope:
    cells: list  # sorted LatticePolytopes
    attained: frozenset
    h: PLFunction


def lower_envelope(lifted: Iterable[tuple], max_dim: int = DEFAULT_MAX_DIM) -> Envelope:
    """Lower convex envelope of lifted points (point, height).

    Cells are the projections of the lower facets; ``attained`` are the input
    points lying on the envelope.
    """
    heights: dict = {}
    for p, h in lifted:
        p, h = point(p), Fraction(h)
        if p in heights and heights[p] != h:
            raise PolytopeError(f"point {p} given two heights")
        heights[p] = h
    if not heights:
        raise PolytopeError("no points")
    base = sorted(heights)
    domain = convex_hull(base, max_dim)
    piv = la.pivot_coordinates(base)
    k = len(piv)
    lifted_proj = [tuple(p[i] for i in piv) + (heights[p],) for p in base]
    if la.affine_dim(lifted_proj) == k:
        f = interpolate(base, [heights[p] for p in base], piv)
        return Envelope([domain], frozenset(base), PLFunction(domain, [(domain, f)]))
    facets = _full_dim_facets(lifted_proj, k + 1)
    cells = []
    attained = set()
    for a, b in facets:
        if a[-1] >= 0:
            continue
        on = [p for p, q in zip(base, lifted_proj) if la.dot(a, q) == b]
        attained.update(on)
        cell = convex_hull(on, max_dim)
        coeffs = [Fraction(0)] * len(base[0])
        for j, i in enumerate(piv):
            coeffs[i] = Fraction(-a[j], a[-1])
        f = AffineFunction(Fraction(b, 1) / a[-1], tuple(coeffs))
        cells.append((cell, f))
    cells.sort(key=lambda cf: cf[0].key)
    return Envelope([c for c, _ in cells], frozenset(attained), PLFunction(domain, cells))


def canonical_cells(cells: Iterable[LatticePolytope]) -> tuple:
    return tuple(sorted(c.key for c in cells))
