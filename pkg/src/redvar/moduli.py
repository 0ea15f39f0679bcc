"""Character groups, pair sequences, orbit-poset complexes, fiber polytopes, strata.

Diagonalizable groups are handled only through their character groups.  A
cell delta contributes the lattice of integral points in the linear span of
the cone over (1, delta), taken modulo the wall roots of delta that lie in
that span.  Complexes over the orbit poset are assembled on the character
side, so cohomology of groups becomes homology of character complexes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from . import linalg as la
from .abgroup import (ChainComplex, FGAbelianGroup, GroupMap, cokernel, coordinates_in_basis,
                      direct_sum, image, integer_kernel, kernel, rational_kernel_lattice)
from .admissible import (MarkedType, WComplex, check_admissible, check_marking,
                         interior_meets_chamber, is_multiplicity_free, orbit_complex, type_leq)
from .degen import (CoherenceResult, close_marks, degenerate_complex, is_coherent,
                    is_coherent_configuration, shared_facets)
from .lp import System
from .polytope import LatticePolytope, convex_hull, lower_envelope
from .reps import weyl_dim
from .rootsys import RootSystem

DEFAULT_STRATA_CAP = 5000


class ModuliError(ValueError):
    pass


# -- character lattices of single cells --------------------------------------

def _cone_equations(P: LatticePolytope) -> list[tuple]:
    return [(-b,) + tuple(a) for a, b in P.equations]


def cone_lattice_basis(P: LatticePolytope) -> list[tuple]:
    """Z-basis of the integral points of the linear span of the cone over (1, P)."""
    n = P.ambient_dim + 1
    eqs = _cone_equations(P)
    if not eqs:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return rational_kernel_lattice(eqs, n)


def wall_indices(rs: RootSystem, P: LatticePolytope) -> list[int]:
    """Simple roots whose wall meets the relative interior of P."""
    out = []
    for i in range(rs.rank):
        vals = [v[i] for v in P.vertices]
        lo, hi = min(vals), max(vals)
        if lo < 0 < hi or lo == hi == 0:
            out.append(i)
    return out


def k_delta(rs: RootSystem, delta: LatticePolytope) -> list[int]:
    if not check_admissible(rs, delta).ok:
        raise ModuliError("polytope is not W-admissible")
    return wall_indices(rs, delta)


@dataclass
class CharacterLattice:
    """(integral points of lin Cone P) modulo the wall-root sublattice inside it."""

    basis: list  # vectors in Z^(1+rank)
    group: FGAbelianGroup

    def coords(self, v: Sequence) -> tuple:
        return coordinates_in_basis(self.basis, v, len(self.basis[0]) if self.basis else 0)

    def vector(self, c: Sequence) -> tuple:
        n = len(self.basis[0])
        return tuple(sum(ci * b[k] for ci, b in zip(c, self.basis)) for k in range(n))


def character_lattice(P: LatticePolytope, wall_roots: Sequence[Sequence]) -> CharacterLattice:
    basis = cone_lattice_basis(P)
    n = P.ambient_dim + 1
    gens = [(0,) + tuple(int(x) for x in a) for a in wall_roots]
    rels = []
    if gens:
        eqs = _cone_equations(P)
        if eqs:
            scaled = [la.primitive(e) for e in eqs]
            M = [[sum(e[k] * g[k] for k in range(n)) for g in gens] for e in scaled]
            combos = integer_kernel(M, len(gens))
        else:
            combos = [tuple(int(i == j) for j in range(len(gens))) for i in range(len(gens))]
        for c in combos:
            v = tuple(sum(ci * g[k] for ci, g in zip(c, gens)) for k in range(n))
            rels.append(coordinates_in_basis(basis, v, n))
    return CharacterLattice(basis, FGAbelianGroup(len(basis), tuple(r for r in rels if any(r))))


def aut_characters(rs: RootSystem, delta: LatticePolytope) -> CharacterLattice:
    return character_lattice(delta, [rs.simple_roots[i] for i in wall_indices(rs, delta)])


def aut_character_group(rs: RootSystem, delta: LatticePolytope) -> FGAbelianGroup:
    if not check_admissible(rs, delta).ok:
        raise ModuliError("polytope is not W-admissible")
    return aut_characters(rs, delta).group


# -- the pair sequence --------------------------------------------------------

@dataclass
class PairSequence:
    points: list  # C+ of delta, the basis of fun
    fun: FGAbelianGroup
    target: FGAbelianGroup
    p: GroupMap
    L: FGAbelianGroup
    L_inclusion: GroupMap
    K: FGAbelianGroup
    lattice: CharacterLattice = field(repr=False)

    @cached_property
    def L_basis(self) -> list[tuple]:
        """Kernel generators as vectors in the basis of fun."""
        M = self.L_inclusion.matrix
        return [tuple(M[i][j] for i in range(len(M))) for j in range(self.L.ngens)]

    def audit(self) -> list[str]:
        out = []
        if not self.K.is_finite:
            out.append("cokernel is infinite")
        if self.fun.free_rank != self.L.free_rank + image(self.p).free_rank:
            out.append("ranks of fun, kernel and image do not add up")
        return out

    def to_json(self) -> dict:
        return {"C_plus": [list(c) for c in self.points], "fun_rank": self.fun.free_rank,
                "target": self.target.to_json(), "L": self.L.to_json(), "K": self.K.to_json(),
                "audit": self.audit()}


def dominant_marks_in(P: LatticePolytope, marks: Iterable) -> list[tuple]:
    return sorted(p for p in marks if P.contains(p) and all(x >= 0 for x in p))


def _p_matrix(lat: CharacterLattice, points: Sequence) -> list[list[int]]:
    cols = [lat.coords((1,) + tuple(int(x) for x in c)) for c in points]
    return [[col[i] for col in cols] for i in range(lat.group.ngens)]


def pair_sequence(rs: RootSystem, delta: LatticePolytope, marks: Iterable) -> PairSequence:
    if not check_admissible(rs, delta).ok:
        raise ModuliError("polytope is not W-admissible")
    marks = close_marks(rs, marks)
    check_marking(orbit_complex(rs, [delta]), marks)
    pts = dominant_marks_in(delta, marks)
    lat = aut_characters(rs, delta)
    fun = FGAbelianGroup.free(len(pts))
    p = GroupMap.make(fun, lat.group, _p_matrix(lat, pts))
    if not p.is_well_defined():
        raise AssertionError("p does not respect relations")
    L, inc = kernel(p)
    return PairSequence(pts, fun, lat.group, p, L, inc, cokernel(p), lat)


# -- orbit posets and their complexes -----------------------------------------

@dataclass
class OrbitPoset:
    """W-orbits of cells ordered by the face relation, with chamber-meeting representatives."""

    cx: WComplex
    reps: list
    index: dict  # cell id -> orbit index
    below: dict  # j -> set of i with orbit i < orbit j

    def chains(self, n: int) -> list[tuple]:
        """Strictly increasing chains with n+1 elements."""
        out = [(i,) for i in range(len(self.reps))]
        for _ in range(n):
            out = [c + (j,) for c in out for j in range(len(self.reps)) if c[-1] in self.below[j]]
        return sorted(out)

    def embeddings(self, i: int, j: int) -> list[tuple]:
        """(w, f): w carries rep i onto a proper face f of rep j."""
        rj = self.reps[j]
        faces = set(self.cx.faces_of(rj)) - {rj}
        out = []
        for w in self.cx.rs.weyl_elements:
            f = self.cx.act(w, self.reps[i])
            if f in faces:
                out.append((w, f))
        return out

    @cached_property
    def stabilizers(self) -> list:
        return [self.cx.stabilizer(r) for r in self.reps]


def orbit_poset(cx: WComplex) -> OrbitPoset:
    reps, index = [], {}
    for orbit in cx.orbits():
        rep = next((c for c in orbit if interior_meets_chamber(cx.rs, cx.cells[c])), None)
        if rep is None:
            raise ModuliError(f"no cell in orbit {orbit} meets the dominant chamber")
        reps.append(rep)
    reps.sort(key=cx.ids.index)
    for k, r in enumerate(reps):
        for c in cx.orbit(r):
            index[c] = k
    below = {j: set() for j in range(len(reps))}
    for j, r in enumerate(reps):
        for f in cx.faces_of(r):
            if f != r:
                below[j].add(index[f])
    return OrbitPoset(cx, reps, index, below)


def _dominant_in_orbit(stab, x: tuple) -> tuple:
    doms = {w(x) for w in stab if all(c >= 0 for c in w(x))}
    if len(doms) != 1:
        raise ModuliError(f"point {x} does not have a unique dominant image under the cell stabilizer")
    return next(iter(doms))


def _same_map(f: GroupMap, g: GroupMap) -> bool:
    return all(f.target.equal(a, b) for a, b in zip(zip(*f.matrix), zip(*g.matrix))) if f.source.ngens else True


class _Functor:
    """Groups on orbits with covariant maps for i < j (character side)."""

    def __init__(self, poset: OrbitPoset, groups: list, build):
        self.poset = poset
        self.groups = groups
        self._build = build
        self._cache = {}

    def mor(self, i: int, j: int) -> GroupMap:
        if (i, j) not in self._cache:
            maps = [self._build(i, j, w, f) for w, f in self.poset.embeddings(i, j)]
            if not maps:
                raise ModuliError("no embedding between related orbits")
            for m in maps:
                if not m.is_well_defined():
                    raise ModuliError("restriction map does not respect relations")
                if not _same_map(m, maps[0]):
                    raise ModuliError("restriction map depends on the chosen face")
            self._cache[(i, j)] = maps[0]
        return self._cache[(i, j)]


def _aut_functor(poset: OrbitPoset) -> _Functor:
    rs = poset.cx.rs
    lats = [aut_characters(rs, poset.cx.cells[r]) for r in poset.reps]

    def build(i, j, w, f):
        src, dst = lats[i], lats[j]
        cols = []
        for k in range(src.group.ngens):
            v = src.basis[k]
            moved = (v[0],) + tuple(int(x) for x in w(v[1:]))
            cols.append(dst.coords(moved))
        M = [[c[r] for c in cols] for r in range(dst.group.ngens)]
        return GroupMap.make(src.group, dst.group, M)

    F = _Functor(poset, [l.group for l in lats], build)
    F.lattices = lats
    return F


def _fun_functor(poset: OrbitPoset, marks: frozenset) -> _Functor:
    cx = poset.cx
    pts = [dominant_marks_in(cx.cells[r], marks) for r in poset.reps]
    for k, r in enumerate(poset.reps):
        stab = poset.stabilizers[k]
        for x in marks:
            if cx.cells[r].contains(x):
                _dominant_in_orbit(stab, x)
    groups = [FGAbelianGroup.free(len(p)) for p in pts]

    def build(i, j, w, f):
        stab = poset.stabilizers[j]
        M = [[0] * len(pts[i]) for _ in pts[j]]
        for col, c in enumerate(pts[i]):
            d = _dominant_in_orbit(stab, w(c))
            M[pts[j].index(d)][col] = 1
        return GroupMap.make(groups[i], groups[j], M)

    F = _Functor(poset, groups, build)
    F.points = pts
    return F


def _chain_groups(F: _Functor, top: int) -> tuple[list, list]:
    chains = [F.poset.chains(n) for n in range(top + 1)]
    groups = [direct_sum([F.groups[c[0]] for c in ch]) for ch in chains]
    return chains, groups


def _offsets(F: _Functor, chains: list) -> dict:
    off, k = {}, 0
    for c in chains:
        off[c] = k
        k += F.groups[c[0]].ngens
    return off


def _boundary(F: _Functor, chains_n: list, chains_m: list) -> list[list[int]]:
    """Matrix of the character-side differential from chains of length n+1 to n."""
    src_off, dst_off = _offsets(F, chains_n), _offsets(F, chains_m)
    rows = sum(F.groups[c[0]].ngens for c in chains_m)
    cols = sum(F.groups[c[0]].ngens for c in chains_n)
    M = [[0] * cols for _ in range(rows)]
    for y in chains_n:
        g = F.groups[y[0]]
        cy = src_off[y]
        m = F.mor(y[0], y[1])
        z = y[1:]
        rz = dst_off[z]
        for r in range(m.target.ngens):
            for c in range(g.ngens):
                M[rz + r][cy + c] += m.matrix[r][c]
        for i in range(1, len(y)):
            z = y[:i] + y[i + 1:]
            rz = dst_off[z]
            for c in range(g.ngens):
                M[rz + c][cy + c] += (-1) ** i
    return M


def _longest_chain(poset: OrbitPoset) -> int:
    n = 0
    while poset.chains(n + 1):
        n += 1
    return n


def _character_complex(F: _Functor, top: int) -> tuple[ChainComplex, list]:
    chains, groups = _chain_groups(F, top)
    maps = {}
    for n in range(1, top + 1):
        M = _boundary(F, chains[n], chains[n - 1])
        maps[n] = GroupMap.make(groups[n], groups[n - 1], M)
    return ChainComplex(groups, maps), chains


class CohomologyGroups(NamedTuple):
    h0: FGAbelianGroup
    h1: FGAbelianGroup


def aut_character_complex(cx: WComplex) -> ChainComplex:
    """Character complex whose homology is dual to the cohomology of Aut over the orbit poset."""
    if not is_multiplicity_free(cx):
        raise ModuliError("complex is not multiplicity-free")
    poset = orbit_poset(cx)
    top = _longest_chain(poset)
    return _character_complex(_aut_functor(poset), max(top, 2))[0]


def aut_complex_cohomology(cx: WComplex) -> CohomologyGroups:
    K = aut_character_complex(cx)
    if not K.check():
        raise AssertionError("differentials do not compose to zero")
    return CohomologyGroups(K.homology(0), K.homology(1))


def _block_map(src_blocks: list, dst_blocks: list, blocks: dict) -> GroupMap:
    """Assemble a map between direct sums from {(dst index, src index): matrix}."""
    src = direct_sum(src_blocks)
    dst = direct_sum(dst_blocks)
    so = [sum(g.ngens for g in src_blocks[:k]) for k in range(len(src_blocks))]
    do = [sum(g.ngens for g in dst_blocks[:k]) for k in range(len(dst_blocks))]
    M = [[0] * src.ngens for _ in range(dst.ngens)]
    for (r, c), mat in blocks.items():
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                M[do[r] + i][so[c] + j] += x
    return GroupMap.make(src, dst, M)


def pair_character_complex(T: MarkedType) -> ChainComplex:
    """Character side of the cone of Aut -> Fun over the orbit poset (M_n = X_n + F_(n-1))."""
    cx = T.complex
    if not is_multiplicity_free(cx):
        raise ModuliError("complex is not multiplicity-free")
    poset = orbit_poset(cx)
    top = max(_longest_chain(poset), 2)
    A = _aut_functor(poset)
    B = _fun_functor(poset, T.marks)
    for i in range(len(poset.reps)):
        for j in range(len(poset.reps)):
            if i in poset.below[j]:
                lhs = A.mor(i, j).compose(_p_map(A, B, i))
                rhs = _p_map(A, B, j).compose(B.mor(i, j))
                if not _same_map(lhs, rhs):
                    raise ModuliError("p is not compatible with restriction")
    XA, chains = _character_complex(A, top + 1)
    XB, _ = _character_complex(B, top + 1)
    zero = FGAbelianGroup.free(0)
    groups = [direct_sum([XA.groups[n], XB.groups[n - 1] if n >= 1 else zero]) for n in range(top + 2)]
    maps = {}
    for n in range(1, top + 2):
        src = [XA.groups[n], XB.groups[n - 1]]
        dst = [XA.groups[n - 1], XB.groups[n - 2] if n >= 2 else zero]
        blocks = {(0, 0): XA.maps[n].matrix}
        P = _p_block(A, B, chains[n - 1])
        blocks[(0, 1)] = P
        if n >= 2:
            blocks[(1, 1)] = [[-x for x in row] for row in XB.maps[n - 1].matrix]
        maps[n] = _block_map(src, dst, blocks)
    return ChainComplex(groups, maps)


def _p_map(A: _Functor, B: _Functor, i: int) -> GroupMap:
    lat = A.lattices[i]
    return GroupMap.make(B.groups[i], A.groups[i], _p_matrix(lat, B.points[i]))


def _p_block(A: _Functor, B: _Functor, chains: list) -> list[list[int]]:
    rows = sum(A.groups[c[0]].ngens for c in chains)
    cols = sum(B.groups[c[0]].ngens for c in chains)
    M = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for c in chains:
        p = _p_map(A, B, c[0])
        for i, row in enumerate(p.matrix):
            for j, x in enumerate(row):
                M[r0 + i][c0 + j] = x
        r0 += A.groups[c[0]].ngens
        c0 += B.groups[c[0]].ngens
    return M


class PairGroups(NamedTuple):
    aut_chars: FGAbelianGroup
    iso_chars: FGAbelianGroup


def pair_moduli_cohomology(T: MarkedType) -> PairGroups:
    K = pair_character_complex(T)
    if not K.check():
        raise AssertionError("differentials do not compose to zero")
    h0 = K.homology(0)
    if not h0.is_finite:
        raise ModuliError("automorphism group of the pair is infinite: marking is inconsistent")
    return PairGroups(h0, K.homology(1))


def stratum_dimension_general(rs: RootSystem, marks: Iterable) -> int:
    pts = {la.vec(p) for p in marks}
    return sum(weyl_dim(rs, p) ** 2 - 1 for p in pts if rs.is_dominant(p))


# -- regular triangulations of point configurations -------------------------------

def _orientation_forms(points: Sequence[tuple], var_of: Sequence, nvars: int) -> set:
    """Linear forms in the heights whose signs fix the lower envelope of the lifted points."""
    d = len(points[0])
    forms = set()
    for S in combinations(range(len(points)), d + 2):
        base = [(Fraction(1),) + tuple(points[i]) for i in S]
        if la.rank(base) < d + 1:
            continue
        form = [Fraction(0)] * nvars
        for k, i in enumerate(S):
            minor = la.det(base[:k] + base[k + 1:])
            form[var_of[i]] += (-1) ** (k + d + 1) * minor
        if any(form):
            f = la.primitive(form)
            lead = next(x for x in f if x)
            forms.add(tuple(-x for x in f) if lead < 0 else f)
    return forms


def arrangement_faces(nvars: int, forms: Sequence[tuple], equalities: Sequence[tuple] = (),
                      full_only: bool = False, cap: int = DEFAULT_STRATA_CAP) -> list[tuple]:
    """Nonempty faces (sign vector, interior point) of a central arrangement.

    ``equalities`` are (coefficients, rhs) rows restricting the ambient space.
    """
    forms = sorted(set(forms))
    signs_allowed = (1, -1) if full_only else (1, 0, -1)

    def solve(signs):
        S = System()
        for k in range(nvars):
            S.var(k)
        for r, (row, rhs) in enumerate(equalities):
            S.eq({k: c for k, c in enumerate(row) if c}, rhs, label=("base", r))
        for f, s in zip(forms, signs):
            coeffs = {k: c for k, c in enumerate(f) if c}
            if s == 0:
                S.eq(coeffs, 0)
            else:
                row = {k: s * c for k, c in coeffs.items()}
                row["__t"] = -1
                S.ge(row, 0)
        res = S.strictly_feasible("__t")
        if not res.feasible:
            return None
        return tuple(res.point[k] for k in range(nvars))

    start = solve(())
    if start is None:
        return []
    regions = [((), start)]
    for idx, f in enumerate(forms):
        new = []
        for signs, pt in regions:
            val = la.dot(f, pt)
            here = 1 if val > 0 else (-1 if val < 0 else 0)
            for s in signs_allowed:
                cand = pt if s == here else solve(signs + (s,))
                if cand is not None:
                    new.append((signs + (s,), cand))
        regions = new
        if len(regions) > cap:
            raise ModuliError(f"arrangement has more than {cap} faces")
    return regions


@dataclass
class Triangulation:
    cells: tuple  # frozensets of labels
    gkz: tuple
    heights: tuple
    certificate: CoherenceResult | None = None


def _labelled_envelope(points: Sequence[tuple], heights: Sequence) -> list[frozenset]:
    """Cells of the lower envelope as label sets (labels may share a location)."""
    best = {}
    for k, (p, h) in enumerate(zip(points, heights)):
        if p not in best or h < best[p][0]:
            best[p] = (h, [k])
        elif h == best[p][0]:
            best[p][1].append(k)
    if len(best) == 1:
        (h, labels), = best.values()
        return [frozenset(labels)]
    env = lower_envelope([(p, h) for p, (h, _) in best.items()], max_dim=8)
    out = []
    for cell in env.cells:
        labs = set()
        for p, (h, ks) in best.items():
            if p in env.attained and cell.contains(p):
                labs.update(ks)
        out.append(frozenset(labs))
    return sorted(out, key=sorted)


def _saturated_span_basis(vectors: Sequence[tuple]) -> list[tuple]:
    n = len(vectors[0])
    normals = la.nullspace([tuple(v) for v in vectors], n)
    if not normals:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return rational_kernel_lattice(normals, n)


def regular_triangulations(config: Sequence[tuple], cap: int = DEFAULT_STRATA_CAP) -> list[Triangulation]:
    """All regular triangulations of a homogeneous integer configuration.

    ``config`` vectors lie on an affine hyperplane missing the origin; a
    triangulation may leave points unused.  Each comes with its GKZ vector in
    normalized volume of the saturated lattice of the span.
    """
    n = len(config)
    vecs = [tuple(Fraction(x) for x in v) for v in config]
    piv = la.pivot_coordinates(vecs)
    intrinsic = [tuple(v[i] for i in piv) for v in vecs]
    d = len(piv)
    forms = _orientation_forms(intrinsic, list(range(n)), n)
    faces = arrangement_faces(n, list(forms), full_only=True, cap=cap)
    basis = _saturated_span_basis(vecs)
    coords = [coordinates_in_basis(basis, [int(x) for x in v], len(v)) for v in vecs]
    found = {}
    for _, pt in faces:
        cells = _labelled_envelope(intrinsic, pt)
        key = tuple(sorted(tuple(sorted(c)) for c in cells))
        if key in found:
            continue
        gkz = [0] * n
        for c in cells:
            if len(c) != d + 1:
                raise AssertionError("chamber witness produced a non-simplicial cell")
            vol = abs(la.det([coords[k] for k in sorted(c)]))
            for k in c:
                gkz[k] += int(vol)
        found[key] = Triangulation(tuple(sorted(cells, key=sorted)), tuple(gkz), pt)
    return [found[k] for k in sorted(found, key=lambda k: found[k].gkz, reverse=True)]


# -- fiber polytopes -----------------------------------------------------------

@dataclass
class FiberPolytopeResult:
    polytope: LatticePolytope
    vertices: list  # coordinates, aligned with subdivisions
    subdivisions: list  # Triangulation per vertex
    gkz_vertices: list
    dim: int
    alpha_dim: int
    q_dim: int
    points: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"dim": self.dim, "alpha_dim": self.alpha_dim, "q_dim": self.q_dim,
                "vertices": [list(v) for v in self.vertices],
                "gkz": [list(g) for g in self.gkz_vertices],
                "subdivisions": [[[list(self.points[k]) for k in sorted(c)] for c in t.cells]
                                 for t in self.subdivisions] if self.points else None}


def _free_coords(G: FGAbelianGroup, v: Sequence) -> tuple:
    nf = G.normal_form(v)
    return tuple(nf[len(G.torsion):])


def fiber_polytope(rs: RootSystem, delta: LatticePolytope, marks: Iterable) -> FiberPolytopeResult:
    seq = pair_sequence(rs, delta, marks)
    n = len(seq.points)
    config = [_free_coords(seq.target, [row[j] for row in seq.p.matrix]) for j in range(n)]
    tris = regular_triangulations(config)
    piv = la.pivot_coordinates([tuple(Fraction(x) for x in v) for v in config])
    intrinsic = {k: tuple(Fraction(config[k][i]) for i in piv) for k in range(n)}
    for t in tris:
        used = set().union(*t.cells)
        t.certificate = is_coherent_configuration(intrinsic, t.cells, used)
        if not t.certificate.coherent:
            raise AssertionError("triangulation from a chamber is not coherent")
    base = tris[0].gkz
    Lb = seq.L_basis
    coords = []
    for t in tris:
        diff = [Fraction(a - b) for a, b in zip(t.gkz, base)]
        if Lb:
            sol = la.solve(la.transpose(Lb), diff)
            if sol is None:
                raise AssertionError("GKZ difference outside the kernel")
        else:
            if any(diff):
                raise AssertionError("GKZ difference outside the kernel")
            sol = ()
        coords.append(tuple(sol))
    P = convex_hull(coords, max_dim=max(4, len(Lb)))
    return FiberPolytopeResult(P, coords, tris, [t.gkz for t in tris], P.dim, n - 1, len(piv),
                               seq.points)


def _maximal_classes(T: MarkedType) -> tuple[OrbitPoset, list[int]]:
    poset = orbit_poset(T.complex)
    maxi = set(T.complex.maximal_cells())
    return poset, [k for k, r in enumerate(poset.reps) if r in maxi]


def global_fiber_polytope(T: MarkedType) -> FiberPolytopeResult:
    """Product of the per-class fiber polytopes, pushed to C0 / boundary(C1)."""
    cx = T.complex
    if not is_multiplicity_free(cx):
        raise ModuliError("complex is not multiplicity-free")
    rs = cx.rs
    poset, classes = _maximal_classes(T)
    B = _fun_functor(poset, T.marks)
    parts = []
    for k in classes:
        P = cx.cells[poset.reps[k]]
        local = orbit_complex(rs, [P])
        parts.append(fiber_polytope(rs, P, [m for m in T.marks if local.cell_containing(m)]))
    sizes = [len(B.points[k]) for k in classes]
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    total = sum(sizes)
    cols = []
    for f, a, b in shared_facets(cx):
        fk = poset.index[f]
        fpts = B.points[fk]
        for c in fpts:
            col = [0] * total
            for owner, sign in ((a, 1), (b, -1)):
                ok = poset.index[owner]
                w = next(w for w in rs.weyl_elements if cx.act(w, poset.reps[ok]) == owner)
                x = rs.inverse(w)(_in_cell(cx, poset, fk, f, c))
                d = _dominant_in_orbit(poset.stabilizers[ok], x)
                i = classes.index(ok)
                col[offs[i] + B.points[ok].index(d)] += sign
            cols.append(tuple(col))
    Q = FGAbelianGroup(total, tuple(c for c in cols if any(c)))
    gkz_pts = []
    subs = []
    for combo in _product([list(range(len(p.gkz_vertices))) for p in parts]):
        v = []
        for p, k in zip(parts, combo):
            v.extend(p.gkz_vertices[k])
        gkz_pts.append(_free_coords(Q, v))
        subs.append(tuple(p.subdivisions[k] for p, k in zip(parts, combo)))
    base = gkz_pts[0]
    coords = [tuple(Fraction(a - b) for a, b in zip(g, base)) for g in gkz_pts]
    P = convex_hull(coords, max_dim=max(4, len(base)))
    keep = [i for i, c in enumerate(coords) if c in set(P.vertices)]
    seen, verts, vsubs, vg = set(), [], [], []
    for i in keep:
        if coords[i] not in seen:
            seen.add(coords[i])
            verts.append(coords[i])
            vsubs.append(subs[i])
            vg.append(gkz_pts[i])
    return FiberPolytopeResult(P, verts, vsubs, vg, P.dim, sum(p.alpha_dim for p in parts),
                               sum(p.q_dim for p in parts))


def _in_cell(cx: WComplex, poset: OrbitPoset, fk: int, f, c: tuple) -> tuple:
    """The point of the actual face f corresponding to the dominant point c of its representative."""
    w = next(w for w in cx.rs.weyl_elements if cx.act(w, poset.reps[fk]) == f)
    return w(c)


def _product(lists):
    out = [()]
    for l in lists:
        out = [o + (x,) for o in out for x in l]
    return out


# -- strata ----------------------------------------------------------------------

@dataclass
class StratumRecord:
    type: MarkedType
    dim_ci: int
    dim_general: int
    aut_order: int
    witness: dict = field(default_factory=dict, repr=False)

    @property
    def key(self) -> tuple:
        return self.type.key

    def to_json(self) -> dict:
        cx = self.type.complex
        return {"cells": [[list(v) for v in cx.cells[c].vertices] for c in cx.maximal_cells()],
                "marks": [list(p) for p in sorted(self.type.marks)],
                "dim_ci": self.dim_ci, "dim_general": self.dim_general, "aut_order": self.aut_order}


@dataclass
class StrataPoset:
    records: list
    order: list  # (i, j) with records[i] <= records[j], i != j

    def to_json(self) -> dict:
        return {"strata": [r.to_json() for r in self.records],
                "order": [list(e) for e in self.order]}


def enumerate_strata(rs: RootSystem, support: WComplex, max_marks: Iterable,
                     cap: int = DEFAULT_STRATA_CAP) -> StrataPoset:
    """All W-invariant coherent marked subdivisions of a support, ordered by type."""
    if not is_multiplicity_free(support):
        raise ModuliError("support is not multiplicity-free")
    if max(support.cells[c].dim for c in support.ids) > 2:
        raise ModuliError("enumeration is limited to supports of dimension at most 2")
    marks = close_marks(rs, max_marks)
    top = check_marking(support, marks)
    poset, classes = _maximal_classes(top)
    reps = [poset.reps[k] for k in classes]
    var = {}
    for k, r in zip(classes, reps):
        for c in dominant_marks_in(support.cells[r], marks):
            var[("m", k, c)] = len(var)
    facets = shared_facets(support)
    for fi, (f, a, b) in enumerate(facets):
        for j in range(rs.rank + 1):
            var[("g", fi, j)] = len(var)
    nv = len(var)

    def height_var(cell, x):
        k = poset.index[cell]
        w = next(w for w in rs.weyl_elements if support.act(w, poset.reps[k]) == cell)
        d = _dominant_in_orbit(poset.stabilizers[k], rs.inverse(w)(x))
        return var[("m", k, d)]

    eqs = []
    for fi, (f, a, b) in enumerate(facets):
        for x in sorted(p for p in marks if support.cells[f].contains(p)):
            row = [Fraction(0)] * nv
            row[height_var(a, x)] += 1
            row[height_var(b, x)] -= 1
            row[var[("g", fi, 0)]] -= 1
            for j, c in enumerate(x):
                row[var[("g", fi, j + 1)]] -= c
            eqs.append((tuple(row), Fraction(0)))
    forms = set()
    for k, r in zip(classes, reps):
        P = support.cells[r]
        local = sorted(p for p in marks if P.contains(p))
        piv = P.pivots
        intrinsic = [tuple(p[i] for i in piv) for p in local]
        forms |= _orientation_forms(intrinsic, [height_var(r, p) for p in local], nv)
    faces = arrangement_faces(nv, list(forms), eqs, cap=cap)
    found = {}
    for _, pt in faces:
        heights = {}
        for (tag, *rest), idx in var.items():
            if tag == "m":
                k, c = rest
                heights.setdefault(poset.reps[k], {})[c] = pt[idx]
        gamma = {f: [pt[var[("g", fi, j)]] for j in range(rs.rank + 1)]
                 for fi, (f, a, b) in enumerate(facets)}
        sub = degenerate_complex(top, heights, gamma)
        key = sub.marking.key
        if key not in found:
            found[key] = (sub, heights)
    records = []
    for key in sorted(found):
        sub, heights = found[key]
        T = sub.marking
        for r in reps:
            res = is_coherent(rs, support.cells[r], T)
            if not res.coherent:
                raise AssertionError("enumerated subdivision failed the coherence check")
        groups = pair_moduli_cohomology(T)
        records.append(StratumRecord(T, groups.iso_chars.free_rank,
                                     stratum_dimension_general(rs, T.marks),
                                     groups.aut_chars.order, heights))
    order = [(i, j) for i, a in enumerate(records) for j, b in enumerate(records)
             if i != j and type_leq(a.type, b.type)]
    return StrataPoset(records, order)
