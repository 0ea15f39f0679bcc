"""Exact Fourier-Motzkin elimination for small rational linear systems.

The solver handles systems of equalities and inequalities ``a.x <= b`` and
maximizes a distinguished slack variable.  Every derived row remembers the
nonnegative multipliers that produced it from the original rows, so
infeasibility comes with a Farkas certificate.  Redundant rows are pruned
with Chernikov's history rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

ZERO = Fraction(0)


@dataclass
class Row:
    coeffs: list
    rhs: Fraction
    mult: dict  # original label -> multiplier
    hist: frozenset  # original inequality labels involved


@dataclass
class LPResult:
    feasible: bool
    optimum: Fraction | None = None
    point: dict | None = None
    certificate: dict | None = None  # label -> multiplier


@dataclass
class System:
    """Builder for a system over named variables."""

    variables: list = field(default_factory=list)
    _index: dict = field(default_factory=dict)
    ineqs: list = field(default_factory=list)  # (coeff dict, rhs, label)
    eqs: list = field(default_factory=list)

    def var(self, name: Hashable) -> Hashable:
        if name not in self._index:
            self._index[name] = len(self.variables)
            self.variables.append(name)
        return name

    def le(self, coeffs: dict, rhs, label: Hashable = None) -> None:
        """Add sum(coeffs[v] * v) <= rhs."""
        for v in coeffs:
            self.var(v)
        if label is None:
            label = ("le", len(self.ineqs))
        self.ineqs.append(({k: Fraction(c) for k, c in coeffs.items()}, Fraction(rhs), label))

    def ge(self, coeffs: dict, rhs, label: Hashable = None) -> None:
        self.le({k: -Fraction(c) for k, c in coeffs.items()}, -Fraction(rhs), label)

    def eq(self, coeffs: dict, rhs, label: Hashable = None) -> None:
        for v in coeffs:
            self.var(v)
        if label is None:
            label = ("eq", len(self.eqs))
        self.eqs.append(({k: Fraction(c) for k, c in coeffs.items()}, Fraction(rhs), label))

    def maximize(self, objective: Hashable) -> LPResult:
        return maximize(self, objective)

    def strictly_feasible(self, slack: Hashable = "__t") -> LPResult:
        """Maximize the slack ``slack`` (capped at 1); feasible iff optimum > 0."""
        self.var(slack)
        self.le({slack: 1}, 1, label=("cap", slack))
        res = maximize(self, slack)
        if res.feasible and res.optimum is not None and res.optimum <= 0:
            return LPResult(False, res.optimum, None, res.certificate)
        return res


def _dense(system: System, coeffs: dict) -> list:
    row = [ZERO] * len(system.variables)
    for k, c in coeffs.items():
        row[system._index[k]] += c
    return row


def _combine(r1: Row, c1: Fraction, r2: Row, c2: Fraction) -> Row:
    coeffs = [c1 * a + c2 * b for a, b in zip(r1.coeffs, r2.coeffs)]
    mult = dict()
    for src, c in ((r1.mult, c1), (r2.mult, c2)):
        for k, m in src.items():
            v = mult.get(k, ZERO) + c * m
            if v:
                mult[k] = v
            else:
                mult.pop(k, None)
    return Row(coeffs, c1 * r1.rhs + c2 * r2.rhs, mult, r1.hist | r2.hist)


def _normal_key(row: Row):
    lead = next((a for a in row.coeffs if a != 0), None)
    if lead is None:
        return None
    s = abs(lead)
    return tuple(a / s for a in row.coeffs), row.rhs / s


def _prune(rows: list[Row], eliminated: int) -> list[Row]:
    best: dict = {}
    kept: list[Row] = []
    for r in rows:
        if eliminated and len(r.hist) > eliminated + 1:
            continue
        key = _normal_key(r)
        if key is None:
            kept.append(r)
            continue
        coeffs, rhs = key
        prev = best.get(coeffs)
        if prev is None or rhs < prev[0]:
            best[coeffs] = (rhs, r)
    kept.extend(r for _, r in best.values())
    return kept


def _pick_value(lo, hi):
    if lo is None and hi is None:
        return ZERO
    if lo is None:
        return min(ZERO, Fraction(int(hi // 1)))
    if hi is None:
        return max(ZERO, Fraction(-int((-lo) // 1)))
    if lo <= 0 <= hi:
        return ZERO
    a = Fraction(-int((-lo) // 1))
    if a <= hi:
        return a
    return (lo + hi) / 2


def maximize(system: System, objective: Hashable) -> LPResult:
    """Maximize ``objective`` subject to the system, exactly.

    The objective must be bounded above by the system's rows.
    """
    n = len(system.variables)
    obj = system._index[objective]
    rows = [Row(_dense(system, c), b, {lab: Fraction(1)}, frozenset([lab]))
            for c, b, lab in system.ineqs]
    eqs = [Row(_dense(system, c), b, {lab: Fraction(1)}, frozenset())
           for c, b, lab in system.eqs]

    # Equality substitution.
    substitutions = []  # (var index, row); later rows never mention earlier vars
    while eqs:
        e = eqs.pop(0)
        j = next((i for i in range(n) if e.coeffs[i] != 0 and i != obj), None)
        if j is None:
            if e.coeffs[obj] != 0:
                rows.append(Row(list(e.coeffs), e.rhs, dict(e.mult), frozenset()))
                neg = {k: -m for k, m in e.mult.items()}
                rows.append(Row([-a for a in e.coeffs], -e.rhs, neg, frozenset()))
            elif e.rhs != 0:
                return LPResult(False, certificate=dict(e.mult))
            continue
        piv = e.coeffs[j]

        def reduce(r: Row) -> Row:
            if r.coeffs[j] == 0:
                return r
            out = _combine(r, Fraction(1), e, -r.coeffs[j] / piv)
            out.hist = r.hist
            return out

        eqs = [reduce(o) for o in eqs]
        rows = [reduce(r) for r in rows]
        substitutions.append((j, e))

    substituted = {j for j, _ in substitutions}
    order = [i for i in range(n) if i != obj and i not in substituted]
    stages = []  # (var index, rows before elimination)
    eliminated = 0
    while order:
        def cost(i):
            p = sum(1 for r in rows if r.coeffs[i] > 0)
            m = sum(1 for r in rows if r.coeffs[i] < 0)
            return p * m - p - m
        i = min(order, key=lambda k: (cost(k), k))
        order.remove(i)
        stages.append((i, rows))
        pos = [r for r in rows if r.coeffs[i] > 0]
        neg = [r for r in rows if r.coeffs[i] < 0]
        new = [r for r in rows if r.coeffs[i] == 0]
        for rp in pos:
            for rn in neg:
                new.append(_combine(rp, -rn.coeffs[i], rn, rp.coeffs[i]))
        eliminated += 1
        rows = _prune(new, eliminated)
        for r in rows:
            if all(a == 0 for a in r.coeffs) and r.rhs < 0:
                return LPResult(False, certificate=dict(r.mult))

    hi = lo = None
    hi_row = lo_row = None
    for r in rows:
        a = r.coeffs[obj]
        if a == 0:
            if r.rhs < 0:
                return LPResult(False, certificate=dict(r.mult))
            continue
        bound = r.rhs / a
        if a > 0 and (hi is None or bound < hi):
            hi, hi_row = bound, r
        if a < 0 and (lo is None or bound > lo):
            lo, lo_row = bound, r
    if hi is None:
        raise ValueError("objective is unbounded; add an explicit cap")
    if lo is not None and lo > hi:
        cert = _combine(hi_row, -lo_row.coeffs[obj], lo_row, hi_row.coeffs[obj])
        return LPResult(False, certificate=dict(cert.mult))

    values = [None] * n
    values[obj] = hi
    for i, stage_rows in reversed(stages):
        lo_i = hi_i = None
        for r in stage_rows:
            a = r.coeffs[i]
            if a == 0:
                continue
            rest = sum((c * values[k] for k, c in enumerate(r.coeffs)
                        if k != i and c != 0 and values[k] is not None), ZERO)
            bound = (r.rhs - rest) / a
            if a > 0:
                hi_i = bound if hi_i is None else min(hi_i, bound)
            else:
                lo_i = bound if lo_i is None else max(lo_i, bound)
        values[i] = _pick_value(lo_i, hi_i)
    for i in range(n):
        if values[i] is None and i not in substituted:
            values[i] = ZERO
    for j, e in reversed(substitutions):
        rest = sum((c * (values[k] or ZERO) for k, c in enumerate(e.coeffs) if k != j), ZERO)
        values[j] = (e.rhs - rest) / e.coeffs[j]
    point = {name: values[system._index[name]] for name in system.variables}
    certificate = dict(hi_row.mult)
    return LPResult(True, hi, point, certificate)


def check_certificate(system: System, certificate: dict, slack: Hashable | None = None) -> bool:
    """Verify a Farkas certificate for infeasibility of the strict system.

    The multipliers on inequality rows must be nonnegative; their combination
    must cancel every variable except the slack, and bound the slack by a
    non-positive value (or give ``0 <= negative`` outright).
    """
    total: dict = {}
    rhs = ZERO
    labels = {lab: (c, b, "le") for c, b, lab in system.ineqs}
    labels.update({lab: (c, b, "eq") for c, b, lab in system.eqs})
    for lab, m in certificate.items():
        c, b, kind = labels[lab]
        if kind == "le" and m < 0:
            return False
        for k, a in c.items():
            total[k] = total.get(k, ZERO) + m * a
        rhs += m * b
    for k, a in total.items():
        if k != slack and a != 0:
            return False
    ts = total.get(slack, ZERO) if slack is not None else ZERO
    if ts == 0:
        return rhs < 0
    if ts > 0:
        return rhs / ts <= 0
    return False
