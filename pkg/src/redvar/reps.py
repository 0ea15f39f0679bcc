"""Dimensions, characters and tensor products of irreducible representations.

Characters come from Freudenthal's recursion on dominant weights and are
expanded over Weyl orbits on demand.  Tensor products are decomposed by
peeling off highest weights; the Brauer-Klimyk rule is a faster second route.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .polytope import LatticePolytope, chamber_intersection, convex_hull, lattice_points
from .rootsys import RootSystem

DEFAULT_HILBERT_CAP = 20


class RepError(ValueError):
    pass


def _check_weight(rs: RootSystem, lam: Sequence) -> tuple:
    lam = la.vec(lam)
    rs.check_dim(lam)
    if not la.is_integral(lam):
        raise RepError(f"weight {lam} is not integral")
    if not rs.is_dominant(lam):
        raise RepError(f"weight {lam} is not dominant")
    return lam


def weyl_dim(rs: RootSystem, lam: Sequence) -> int:
    lam = _check_weight(rs, lam)
    shifted = la.add(lam, rs.rho)
    num, den = Fraction(1), Fraction(1)
    for a in rs.positive_roots:
        num *= rs.form(shifted, a)
        den *= rs.form(rs.rho, a)
    out = num / den
    assert out.denominator == 1
    return int(out)


def dominant_weights_below(rs: RootSystem, lam: Sequence) -> list[tuple]:
    """Dominant weights mu <= lam, highest first."""
    lam = _check_weight(rs, lam)
    seen = {lam}
    todo = [lam]
    while todo:
        mu = todo.pop()
        for a in rs.positive_roots:
            nu = la.sub(mu, a)
            if nu not in seen and all(x >= 0 for x in nu):
                seen.add(nu)
                todo.append(nu)
    return sorted(seen, key=lambda mu: (rs.height(la.sub(lam, mu)), mu))


@dataclass
class Character:
    """Weight multiplicities of a W-invariant virtual or actual module."""

    rs: RootSystem = field(repr=False)
    dominant: dict  # dominant weight -> multiplicity

    def multiplicity(self, nu: Sequence) -> int:
        _, d = self.rs.dominant_representative(la.vec(nu))
        return self.dominant.get(d, 0)

    @property
    def weights(self) -> dict:
        out = {}
        for mu, m in self.dominant.items():
            for nu in self.rs.orbit(mu):
                out[nu] = m
        return out

    def dimension(self) -> int:
        return sum(m * len(self.rs.orbit(mu)) for mu, m in self.dominant.items())

    def to_json(self) -> dict:
        return {"weights": [[list(nu), m] for nu, m in sorted(self.weights.items())]}


_char_cache: dict = {}


def character(rs: RootSystem, lam: Sequence) -> Character:
    lam = _check_weight(rs, lam)
    key = (rs.series, rs.rank, lam)
    if key in _char_cache:
        return _char_cache[key]
    rho = rs.rho
    top = rs.form(la.add(lam, rho), la.add(lam, rho))
    mult = {}
    for mu in dominant_weights_below(rs, lam):
        if mu == lam:
            mult[mu] = 1
            continue
        acc = Fraction(0)
        for a in rs.positive_roots:
            k = 1
            while True:
                nu = la.add(mu, la.scale(k, a))
                _, d = rs.dominant_representative(nu)
                m = mult.get(d, 0)
                if not m:
                    break
                acc += m * rs.form(nu, a)
                k += 1
        denom = top - rs.form(la.add(mu, rho), la.add(mu, rho))
        value = 2 * acc / denom
        assert value.denominator == 1
        if value:
            mult[mu] = int(value)
    ch = Character(rs, mult)
    _char_cache[key] = ch
    return ch


def tensor_decompose(rs: RootSystem, lam: Sequence, mu: Sequence) -> list[tuple]:
    """[(nu, multiplicity)] for V_lam (x) V_mu, by highest-weight extraction."""
    a, b = character(rs, lam).weights, character(rs, mu).weights
    prod = Counter()
    for x, m in a.items():
        for y, n in b.items():
            prod[la.add(x, y)] += m * n
    out = []
    while True:
        dom = [nu for nu, m in prod.items() if m and all(c >= 0 for c in nu)]
        if not dom:
            break
        top = max(dom, key=lambda nu: (rs.height(nu), nu))
        m = prod[top]
        if m < 0:
            raise AssertionError("negative multiplicity during extraction")
        out.append((top, m))
        for nu, k in character(rs, top).weights.items():
            prod[nu] -= m * k
    if any(prod.values()):
        raise AssertionError("character did not decompose")
    return sorted(out)


def _dot_dominant(rs: RootSystem, v: tuple):
    """(sign, nu) with w(v + rho) - rho = nu dominant, or (0, None) if singular."""
    shifted = la.add(v, rs.rho)
    w, d = rs.dominant_representative(shifted)
    if any(c == 0 for c in d):
        return 0, None
    return (-1) ** w.length, la.sub(d, rs.rho)


def tensor_with_irreducible(rs: RootSystem, decomposition: dict, lam: Sequence) -> dict:
    """Brauer-Klimyk: (sum_nu m_nu V_nu) (x) V_lam."""
    wts = character(rs, lam).weights
    out = Counter()
    for nu, m in decomposition.items():
        for eta, k in wts.items():
            s, top = _dot_dominant(rs, la.add(nu, eta))
            if s:
                out[top] += s * m * k
    return {nu: m for nu, m in out.items() if m}


def tensor_decompose_bk(rs: RootSystem, lam: Sequence, mu: Sequence) -> list[tuple]:
    return sorted(tensor_with_irreducible(rs, {_check_weight(rs, lam): 1}, mu).items())


@dataclass
class LemmaReport:
    mu: tuple
    n0: int | None
    checked: list  # (N, contains V_{N mu})
    tested_filter: str
    bound: int
    bound_confirmed: bool | None

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "N0": self.n0,
                "checked": [[n, ok] for n, ok in self.checked],
                "filter": self.tested_filter, "bound": self.bound,
                "bound_confirmed": self.bound_confirmed}


def verify_tensor_power_lemma(rs: RootSystem, lam: Sequence, face: Sequence[Sequence],
                              n_max: int) -> LemmaReport:
    """Search the least N0 with V_{N mu} in V_lam^(x)N for all tested multiples N of N0."""
    lam = _check_weight(rs, lam)
    orbit_poly = convex_hull(rs.orbit(lam))
    face = [la.vec(v) for v in face]
    if not orbit_poly.is_face(face):
        raise RepError("the given vertices do not form a face of the orbit polytope")
    F = convex_hull(face)
    if lam not in F.vertices:
        raise RepError("the face does not contain the highest weight")
    mu = F.centroid
    checked = []
    contains = {}
    power = {tuple(Fraction(0) for _ in lam): 1}
    for N in range(1, n_max + 1):
        power = tensor_with_irreducible(rs, power, lam)
        target = la.scale(N, mu)
        if la.is_integral(target):
            contains[N] = power.get(target, 0) > 0
            checked.append((N, contains[N]))

    def good(n0: int):
        tested = [N for N in contains if N % n0 == 0]
        return bool(tested) and all(contains[N] for N in tested)

    n0 = next((k for k in range(1, n_max + 1) if good(k)), None)
    bound = weyl_dim(rs, lam)
    confirmed = good(bound) if bound <= n_max else None
    return LemmaReport(mu, n0, checked, "only N with N*mu integral are tested", bound, confirmed)


def hilbert_function(rs: RootSystem, cells: Sequence[LatticePolytope], n: int,
                     cap: int = DEFAULT_HILBERT_CAP) -> int:
    """Sum of dim(V_lam)^2 over dominant lattice points of n times the support."""
    if n < 0:
        raise RepError("degree must be non-negative")
    if n > cap:
        raise RepError(f"degree {n} exceeds cap {cap}")
    pts = set()
    for P in cells:
        for x in lattice_points(P, n):
            if all(c >= 0 for c in x):
                pts.add(x)
    return sum(weyl_dim(rs, x) ** 2 for x in pts)


def centroid_face_vertices(rs: RootSystem, lam: Sequence) -> list[tuple]:
    """Vertices mu of conv(W lam) n chamber, each with a face through lam centred at mu."""
    lam = _check_weight(rs, lam)
    P = convex_hull(rs.orbit(lam))
    Q = chamber_intersection(rs, P)
    faces = [F for F in P.faces() if lam in F.vertices]
    out = []
    for mu in Q.vertices:
        match = next((F for F in faces if F.centroid == mu), None)
        out.append((match, mu))
    return out
