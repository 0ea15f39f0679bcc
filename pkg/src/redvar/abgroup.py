"""Finitely generated abelian groups with integer presentations.

A group is ``Z^n / L`` where ``L`` is spanned by a list of relation vectors.
Homomorphisms are integer matrices acting on generator coordinates.  Every
structural computation goes through the Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence


class GroupError(ValueError):
    pass


def _as_int(x) -> int:
    if type(x) is int:
        return x
    x = Fraction(x)
    if x.denominator != 1:
        raise GroupError(f"non-integral entry {x}")
    return int(x)


def int_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[int]]:
    out = [[_as_int(x) for x in r] for r in rows]
    if ncols is not None and any(len(r) != ncols for r in out):
        raise GroupError("ragged matrix")
    return out


def columns(cols: Sequence[Sequence], nrows: int) -> list[list[int]]:
    """Matrix with the given column vectors."""
    return [[_as_int(c[i]) for c in cols] for i in range(nrows)]


def smith_normal_form(A: Sequence[Sequence], ncols: int | None = None):
    """Return (D, U, V) with U A V = D diagonal, d_1 | d_2 | ..., and U, V unimodular."""
    M = int_matrix(A)
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (M, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for R in (M, V):
            for row in R:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        done = False
            if not done:
                entries = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
                entries += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
                _, i, j = min(entries)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % M[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return M, U, V


def _diag(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def integer_kernel(A: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of the saturated lattice {x in Z^n : A x = 0}."""
    if not A:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    D, _, V = smith_normal_form(A, ncols)
    r = len(_diag(D))
    return [tuple(V[i][k] for i in range(ncols)) for k in range(r, ncols)]


def rational_kernel_lattice(A: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Integer points of a rational kernel, for rational A."""
    rows = []
    for r in A:
        r = [Fraction(x) for x in r]
        den = 1
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
        rows.append([int(x * den) for x in r])
    return integer_kernel(rows, ncols)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def integer_solver(A: Sequence[Sequence], ncols: int):
    """Function b -> one integral solution of A x = b (or None), sharing one SNF."""
    if not A or ncols == 0:
        return lambda b: tuple([0] * ncols) if all(_as_int(x) == 0 for x in b) else None
    D, U, V = smith_normal_form(A, ncols)
    d = _diag(D)

    def solve(b):
        b = [_as_int(x) for x in b]
        c = [sum(u * x for u, x in zip(row, b)) for row in U]
        y = [0] * ncols
        for i, ci in enumerate(c):
            if i < len(d):
                if ci % d[i]:
                    return None
                y[i] = ci // d[i]
            elif ci:
                return None
        return tuple(sum(V[i][k] * y[k] for k in range(ncols)) for i in range(ncols))

    return solve


def solve_integer(A: Sequence[Sequence], b: Sequence, ncols: int) -> tuple | None:
    """One integral solution of A x = b, or None."""
    return integer_solver(A, ncols)(b)


def lattice_basis(gens: Sequence[Sequence], dim: int) -> list[tuple]:
    """A Z-basis of the lattice spanned by ``gens`` in Z^dim."""
    gens = [tuple(_as_int(x) for x in g) for g in gens if any(g)]
    if not gens:
        return []
    D, U, V = smith_normal_form(columns(gens, dim), len(gens))
    # columns(gens) = U^-1 D V^-1, so the lattice is spanned by d_i * (U^-1)_i.
    Uinv = _unimodular_inverse(U)
    d = _diag(D)
    return [tuple(Uinv[i][k] * d[k] for i in range(dim)) for k in range(len(d))]


def _unimodular_inverse(U) -> list[list[int]]:
    n = len(U)
    aug = [[Fraction(x) for x in U[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [[_as_int(x) for x in row[n:]] for row in aug]


def coordinates_in_basis(basis: Sequence[Sequence], v: Sequence, dim: int) -> tuple:
    """Integral coordinates of v in a lattice basis; raises if v is outside."""
    return coordinates_in_basis_many(basis, [v], dim)[0]


def coordinates_in_basis_many(basis: Sequence[Sequence], vs: Sequence[Sequence], dim: int) -> list[tuple]:
    if not basis:
        if any(any(v) for v in vs):
            raise GroupError("vector outside the lattice")
        return [() for _ in vs]
    solve = integer_solver(columns(basis, dim), len(basis))
    out = []
    for v in vs:
        x = solve(v)
        if x is None:
            raise GroupError("vector outside the lattice")
        out.append(x)
    return out


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^ngens modulo the span of ``relations``."""

    ngens: int
    relations: tuple = ()
    names: tuple | None = field(default=None, compare=False)

    @staticmethod
    def free(n: int) -> "FGAbelianGroup":
        return FGAbelianGroup(n, ())

    @staticmethod
    def cyclic(n: int) -> "FGAbelianGroup":
        return FGAbelianGroup(1, ((n,),) if n else ())

    @staticmethod
    def from_invariants(free_rank: int, torsion: Sequence[int]) -> "FGAbelianGroup":
        n = len(torsion) + free_rank
        rels = tuple(tuple(d if j == i else 0 for j in range(n)) for i, d in enumerate(torsion))
        return FGAbelianGroup(n, rels)

    @cached_property
    def _snf(self):
        if not self.relations:
            return [[]] * self.ngens, [[int(i == j) for j in range(self.ngens)] for i in range(self.ngens)], []
        return smith_normal_form(columns(self.relations, self.ngens), len(self.relations))

    @cached_property
    def _diagonal(self) -> list[int]:
        D = self._snf[0]
        return _diag(D) if self.relations else []

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self._diagonal if d > 1)

    @property
    def free_rank(self) -> int:
        return self.ngens - len(self._diagonal)

    @property
    def rank(self) -> int:
        return self.free_rank

    def invariants(self) -> tuple:
        return self.free_rank, self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def isomorphic(self, other: "FGAbelianGroup") -> bool:
        return self.invariants() == other.invariants()

    def normal_form(self, v: Sequence) -> tuple:
        """Canonical coordinates of the class of v: torsion residues then free part."""
        v = [_as_int(x) for x in v]
        U = self._snf[1]
        c = [sum(u * x for u, x in zip(row, v)) for row in U]
        d = self._diagonal
        out = [c[i] % d[i] for i in range(len(d)) if d[i] > 1]
        out += c[len(d):]
        return tuple(out)

    def is_zero(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.normal_form(v))

    def equal(self, u: Sequence, v: Sequence) -> bool:
        return self.is_zero([a - b for a, b in zip(u, v)])

    def relation_lattice_contains(self, v: Sequence) -> bool:
        return self.is_zero(v)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupMap:
    source: FGAbelianGroup
    target: FGAbelianGroup
    matrix: tuple  # target.ngens rows, source.ngens columns

    def __post_init__(self):
        if len(self.matrix) != self.target.ngens or any(len(r) != self.source.ngens for r in self.matrix):
            raise GroupError("matrix shape does not match the groups")

    @staticmethod
    def make(source, target, matrix) -> "GroupMap":
        m = tuple(tuple(_as_int(x) for x in r) for r in matrix)
        if not m and target.ngens:
            m = tuple(() for _ in range(target.ngens))
        return GroupMap(source, target, m)

    def __call__(self, v: Sequence) -> tuple:
        return tuple(sum(a * _as_int(x) for a, x in zip(r, v)) for r in self.matrix)

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero(self(r)) for r in self.source.relations)

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self o other."""
        m = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.source.ngens))
              for j in range(other.source.ngens)] for i in range(self.target.ngens)]
        return GroupMap.make(other.source, self.target, m)

    def is_zero(self) -> bool:
        return all(self.target.is_zero(c) for c in zip(*self.matrix)) if self.source.ngens else True

    def kernel(self) -> tuple[FGAbelianGroup, "GroupMap"]:
        return kernel(self)

    def cokernel(self) -> FGAbelianGroup:
        return cokernel(self)

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial

    def is_surjective(self) -> bool:
        return cokernel(self).is_trivial

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def _preimage_lattice(M: Sequence[Sequence], n_src: int, target: FGAbelianGroup) -> list[tuple]:
    """Basis of {x in Z^n_src : M x lies in the relation lattice of target}."""
    m = target.ngens
    rels = list(target.relations)
    block = [list(M[i]) + [r[i] for r in rels] for i in range(m)]
    if m == 0:
        return [tuple(int(i == j) for j in range(n_src)) for i in range(n_src)]
    ker = integer_kernel(block, n_src + len(rels))
    return lattice_basis([k[:n_src] for k in ker], n_src)


def subgroup(gens: Sequence[Sequence], ambient: FGAbelianGroup) -> tuple[FGAbelianGroup, GroupMap]:
    """Subgroup generated by ``gens`` with its inclusion map."""
    k = len(gens)
    M = columns(gens, ambient.ngens) if k else [[] for _ in range(ambient.ngens)]
    rels = _preimage_lattice(M, k, ambient)
    G = FGAbelianGroup(k, tuple(rels))
    return G, GroupMap.make(G, ambient, M)


def _require_well_defined(f: GroupMap) -> None:
    if not f.is_well_defined():
        raise GroupError("map does not respect the relations of its source")


def kernel(f: GroupMap) -> tuple[FGAbelianGroup, GroupMap]:
    """Kernel as an abstract group together with its inclusion into the source."""
    _require_well_defined(f)
    basis = _preimage_lattice(f.matrix, f.source.ngens, f.target)
    K, inc = subgroup(basis, f.source)
    return K, inc


def cokernel(f: GroupMap) -> FGAbelianGroup:
    _require_well_defined(f)
    cols = list(f.target.relations) + [tuple(r[j] for r in f.matrix) for j in range(f.source.ngens)]
    return FGAbelianGroup(f.target.ngens, tuple(c for c in cols if any(c)))


def image(f: GroupMap) -> FGAbelianGroup:
    gens = [tuple(r[j] for r in f.matrix) for j in range(f.source.ngens)]
    return subgroup(gens, f.target)[0]


def direct_sum(groups: Sequence[FGAbelianGroup]) -> FGAbelianGroup:
    n = sum(g.ngens for g in groups)
    rels = []
    off = 0
    for g in groups:
        for r in g.relations:
            v = [0] * n
            v[off:off + g.ngens] = r
            rels.append(tuple(v))
        off += g.ngens
    return FGAbelianGroup(n, tuple(rels))


def homology(incoming: GroupMap | None, outgoing: GroupMap | None,
             middle: FGAbelianGroup | None = None) -> FGAbelianGroup:
    """ker(outgoing) / im(incoming) at the middle group.

    Either map may be None for the ends of a complex.
    """
    C = middle or (outgoing.source if outgoing is not None else incoming.target)
    n = C.ngens
    if outgoing is not None:
        L = _preimage_lattice(outgoing.matrix, n, outgoing.target)
    else:
        L = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    quot = list(C.relations)
    if incoming is not None:
        quot += [tuple(r[j] for r in incoming.matrix) for j in range(incoming.source.ngens)]
    rels = coordinates_in_basis_many(L, [q for q in quot if any(q)], n)
    return FGAbelianGroup(len(L), tuple(r for r in rels if any(r)))


@dataclass
class ChainComplex:
    """Groups C_0..C_N with maps d_n: C_n -> C_{n-1} (index n = 1..N)."""

    groups: list
    maps: dict  # n -> GroupMap from C_n to C_{n-1}

    def check(self) -> bool:
        for n in self.maps:
            if n - 1 in self.maps:
                if not self.maps[n - 1].compose(self.maps[n]).is_zero():
                    return False
        return True

    def homology(self, n: int) -> FGAbelianGroup:
        if n < 0 or n >= len(self.groups):
            return FGAbelianGroup.free(0)
        return homology(self.maps.get(n + 1), self.maps.get(n), self.groups[n])
