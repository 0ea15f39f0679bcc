"""Root systems, weight lattices and materialized Weyl groups.

Weights are written in the basis of fundamental weights, so the simple roots
are the rows of the Cartan matrix and the dominant chamber is the
non-negative orthant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la

DEFAULT_WEYL_CAP = 10_000

KNOWN_ORDERS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120,
                ("B", 2): 8, ("B", 3): 48, ("B", 4): 384, ("C", 2): 8,
                ("C", 3): 48, ("C", 4): 384, ("D", 4): 192, ("G", 2): 12}


class RootSystemError(ValueError):
    pass


def _gram(series: str, rank: int) -> list[list[int]]:
    """Inner products of simple roots (integer normalization)."""
    g = [[0] * rank for _ in range(rank)]
    if series == "G":
        if rank != 2:
            raise RootSystemError("G is only supported in rank 2")
        return [[2, -3], [-3, 6]]
    if series == "D" and rank < 3:
        raise RootSystemError("D needs rank >= 3")
    if series not in "ABCD":
        raise RootSystemError(f"unsupported series {series!r}")
    for i in range(rank):
        g[i][i] = 2
    for i in range(rank - 1):
        g[i][i + 1] = g[i + 1][i] = -1
    if rank == 1:
        return g
    if series == "B":
        g[rank - 1][rank - 1] = 1
    elif series == "C":
        g[rank - 1][rank - 1] = 4
        g[rank - 2][rank - 1] = g[rank - 1][rank - 2] = -2
    elif series == "D":
        g[rank - 2][rank - 1] = g[rank - 1][rank - 2] = 0
        g[rank - 3][rank - 1] = g[rank - 1][rank - 3] = -1
    return g


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple  # rows; acts on column vectors of fw coordinates
    length: int
    index: int = field(default=-1, compare=False)

    def __call__(self, v: Sequence) -> tuple:
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.matrix)

    @property
    def is_identity(self) -> bool:
        return self.length == 0


@dataclass
class RootSystem:
    series: str
    rank: int
    cartan_matrix: list
    simple_roots: list
    fundamental_weights: list
    positive_roots: list
    weyl_elements: list
    gram: list = field(repr=False)
    _inv_cartan: list = field(repr=False, default=None)

    # -- chamber and lattice predicates ---------------------------------

    def check_dim(self, v: Sequence) -> None:
        if len(v) != self.rank:
            raise RootSystemError(f"weight {tuple(v)} has dimension {len(v)}, rank is {self.rank}")

    def is_dominant(self, v: Sequence) -> bool:
        self.check_dim(v)
        return all(Fraction(x) >= 0 for x in v)

    def is_regular(self, v: Sequence) -> bool:
        """Off every reflection hyperplane."""
        return all(self.coroot_pairing(v, a) != 0 for a in self.positive_roots)

    @property
    def identity(self) -> WeylElement:
        return self.weyl_elements[0]

    @property
    def order(self) -> int:
        return len(self.weyl_elements)

    def simple_reflection(self, i: int) -> WeylElement:
        return self._simple[i]

    # -- bilinear form --------------------------------------------------

    def root_coordinates(self, v: Sequence) -> tuple:
        """Coordinates of a weight in the simple-root basis."""
        return tuple(la.dot(v, col) for col in zip(*self._inv_cartan))

    def form(self, u: Sequence, v: Sequence) -> Fraction:
        """W-invariant form with (alpha_i, alpha_i) given by the Gram matrix."""
        c = self.root_coordinates(v)
        return sum((c[k] * Fraction(u[k]) * Fraction(self.gram[k][k], 2)
                    for k in range(self.rank)), Fraction(0))

    def coroot_pairing(self, v: Sequence, root: Sequence) -> Fraction:
        return 2 * self.form(v, root) / self.form(root, root)

    def height(self, v: Sequence) -> Fraction:
        return sum(self.root_coordinates(v), Fraction(0))

    @property
    def rho(self) -> tuple:
        return tuple(Fraction(1) for _ in range(self.rank))

    def in_root_lattice(self, v: Sequence) -> bool:
        return la.is_integral(self.root_coordinates(v))

    def leq(self, mu: Sequence, lam: Sequence) -> bool:
        """Dominance order: lam - mu is a non-negative integer root combination."""
        c = self.root_coordinates(la.sub(lam, mu))
        return la.is_integral(c) and all(x >= 0 for x in c)

    # -- orbits ----------------------------------------------------------

    def orbit(self, v: Sequence) -> list[tuple]:
        seen = []
        found = set()
        for w in self.weyl_elements:
            x = w(v)
            if x not in found:
                found.add(x)
                seen.append(x)
        return seen

    def dominant_representative(self, v: Sequence) -> tuple[WeylElement, tuple]:
        """First Weyl element (canonical order) carrying v into the chamber."""
        self.check_dim(v)
        v = la.vec(v)
        for w in self.weyl_elements:
            x = w(v)
            if all(c >= 0 for c in x):
                return w, x
        raise AssertionError("no dominant representative found")

    def stabilizer_of_vertices(self, vertices) -> list[WeylElement]:
        pts = {la.vec(p) for p in vertices}
        if not pts:
            raise RootSystemError("empty vertex set")
        for p in pts:
            self.check_dim(p)
        return [w for w in self.weyl_elements if {w(p) for p in pts} == pts]

    def compose(self, a: WeylElement, b: WeylElement) -> WeylElement:
        m = tuple(tuple(r) for r in la.matmul(a.matrix, b.matrix))
        return self._by_matrix[m]

    def inverse(self, a: WeylElement) -> WeylElement:
        return self._inverse[a.index]

    def element(self, matrix) -> WeylElement:
        return self._by_matrix[tuple(tuple(Fraction(x) for x in r) for r in matrix)]

    def to_json(self) -> dict:
        return {"type": self.series, "rank": self.rank}


def build_root_system(series: str, rank: int, weyl_cap: int = DEFAULT_WEYL_CAP) -> RootSystem:
    """Cartan data, positive roots and the full Weyl group of a simple type."""
    series = series.upper()
    if rank < 1:
        raise RootSystemError("rank must be positive")
    gram = _gram(series, rank)
    cartan = [[Fraction(2 * gram[i][j], gram[j][j]) for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        for j in range(rank):
            if cartan[i][j].denominator != 1:
                raise RootSystemError("non-integral Cartan matrix")
    cartan = [[int(x) for x in row] for row in cartan]
    simple = [tuple(Fraction(x) for x in row) for row in cartan]

    gens = []
    for i in range(rank):
        m = [[Fraction(int(r == c)) for c in range(rank)] for r in range(rank)]
        for r in range(rank):
            m[r][i] -= simple[i][r]
        gens.append(tuple(tuple(row) for row in m))

    ident = tuple(tuple(Fraction(int(r == c)) for c in range(rank)) for r in range(rank))
    length = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = tuple(tuple(r) for r in la.matmul(g, m))
                if p not in length:
                    length[p] = length[m] + 1
                    if len(length) > weyl_cap:
                        raise RootSystemError(
                            f"Weyl group of {series}{rank} exceeds cap {weyl_cap}")
                    nxt.append(p)
        frontier = nxt
    ordered = sorted(length, key=lambda m: (length[m], m))
    elements = [WeylElement(m, length[m], k) for k, m in enumerate(ordered)]
    by_matrix = {e.matrix: e for e in elements}

    inv_cartan = _inverse([[Fraction(x) for x in row] for row in cartan])
    rs = RootSystem(series, rank, cartan, simple,
                    [tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank)],
                    [], elements, gram, inv_cartan)
    rs._by_matrix = by_matrix
    rs._simple = [by_matrix[g] for g in gens]
    rs._inverse = {}
    for e in elements:
        rs._inverse[e.index] = by_matrix[tuple(tuple(r) for r in _inverse(e.matrix))]

    roots = set()
    for a in simple:
        roots.update(rs.orbit(a))
    positive = [r for r in roots if all(c >= 0 for c in rs.root_coordinates(r))]
    rs.positive_roots = sorted(positive, key=lambda r: (rs.height(r), r))
    return rs


def _inverse(M) -> list:
    n = len(M)
    aug = [tuple(M[i]) + tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    R, _ = la.rref(aug)
    return [tuple(row[n:]) for row in R]


def weyl_group_closure_ok(rs: RootSystem) -> bool:
    """Products of simple reflections with elements stay inside the list."""
    for e in rs.weyl_elements:
        for s in rs._simple:
            if tuple(tuple(r) for r in la.matmul(s.matrix, e.matrix)) not in rs._by_matrix:
                return False
    return True
