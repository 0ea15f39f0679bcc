"""Exact linear algebra over the rationals.

Vectors are tuples and matrices are lists of row tuples; every entry is an
``int`` or a ``fractions.Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


def frac(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def matvec(M: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in M)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    return [tuple(dot(row, c) for c in cols) for row in A]


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [tuple(c) for c in zip(*M)]


def identity(n: int) -> Matrix:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [[Fraction(x) for x in row] for row in M]
    if not R:
        return [], []
    ncols = len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return [tuple(row) for row in R], pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M or not len(M[0]):
        return 0
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : Mx = 0} over Q."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    R, piv = rref(M)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One rational solution of Ax = b, or None."""
    n = len(A[0]) if A else 0
    aug = [tuple(row) + (bi,) for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return tuple(x)


def det(M: Sequence[Sequence]):
    """Determinant by fraction-valued Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def primitive(v: Sequence) -> Vector:
    """Scale a nonzero rational vector to a primitive integer vector."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def denominator_lcm(values: Iterable) -> int:
    out = 1
    for x in values:
        out = lcm(out, Fraction(x).denominator)
    return out


def affine_basis(points: Sequence[Sequence]) -> tuple[Vector, list[Vector]]:
    """Base point and a basis of the direction space of the affine hull."""
    p0 = tuple(points[0])
    diffs = [sub(p, p0) for p in points[1:]]
    if not diffs:
        return p0, []
    R, piv = rref(diffs)
    return p0, [R[i] for i in range(len(piv))]


def affine_dim(points: Sequence[Sequence]) -> int:
    return len(affine_basis(points)[1])


def affine_equations(points: Sequence[Sequence]) -> list[tuple[Vector, Fraction]]:
    """Integer equations a.x = b cutting out the affine hull."""
    p0, basis = affine_basis(points)
    n = len(p0)
    normals = nullspace(basis, n) if basis else nullspace([], n)
    return [(primitive(a), dot(primitive(a), p0)) for a in normals]


def pivot_coordinates(points: Sequence[Sequence]) -> list[int]:
    """Coordinate indices on which projection is injective on the affine hull."""
    _, basis = affine_basis(points)
    if not basis:
        return []
    _, piv = rref(basis)
    return piv
