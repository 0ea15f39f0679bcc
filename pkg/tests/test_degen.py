from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from redvar.admissible import check_marking, check_wcomplex, orbit_complex, type_leq
from redvar.degen import (DegenerationError, degenerate, degenerate_complex, is_coherent,
                          is_coherent_configuration, minimal_integrality)
from redvar.polytope import convex_hull, lower_envelope

from conftest import pts, seg

FULL = pts(0, 1, 2)


def H(d):
    return {(Fraction(k),): Fraction(v) for k, v in d.items()}


def test_degenerate_examples(A1):
    out = degenerate(A1, seg(-2, 2), FULL, H({0: -1, 1: 0, 2: 0}))
    assert sorted(c.vertices for c in out.cells) == [((-2,), (0,)), ((0,), (2,))]
    assert out.marking.marks == frozenset(pts(-2, 0, 2))
    assert out.envelopes["delta"]((1,)) == Fraction(-1, 2)
    assert out.integrality_N == 2
    flat = degenerate(A1, seg(-2, 2), FULL, H({0: 0, 1: 0, 2: 0}))
    assert len(flat.cells) == 1 and len(flat.marking.marks) == 5 and flat.integrality_N == 1
    bump = degenerate(A1, seg(-2, 2), FULL, H({0: 1, 1: 0, 2: 0}))
    assert len(bump.cells) == 1 and bump.marking.marks == frozenset(pts(-2, -1, 1, 2))
    assert check_wcomplex(out.subdivision).ok


def test_degenerate_errors(A1):
    with pytest.raises(DegenerationError):
        degenerate(A1, seg(-2, 2), FULL, H({0: 0, 1: 0}))
    with pytest.raises(DegenerationError):
        degenerate(A1, seg(-2, 2), FULL, {(-1,): 0, (0,): 0, (2,): 0})


def test_minimal_integrality():
    env = lower_envelope([((-2,), 0), ((-1,), 0), ((0,), -1), ((1,), 0), ((2,), 0)])
    assert minimal_integrality(env.h) == 2
    assert minimal_integrality(lower_envelope([((0,), 0), ((3,), 3)]).h) == 1
    mixed = lower_envelope([((0,), 0), ((3,), 1), ((5,), 2)])
    assert minimal_integrality(mixed.h) == 6


def test_is_coherent_examples(A1):
    split = orbit_complex(A1, [seg(0, 2)])
    T = check_marking(split, pts(-2, 0, 2))
    res = is_coherent(A1, seg(-2, 2), T)
    assert res.coherent
    back = degenerate(A1, seg(-2, 2), pts(-2, 0, 2), res.witness)
    assert back.marking.key == T.key
    whole = check_marking(orbit_complex(A1, [seg(-2, 2)]), pts(-2, -1, 0, 1, 2))
    res = is_coherent(A1, seg(-2, 2), whole)
    assert res.coherent and len(set(res.witness.values())) == 1


def test_nested_triangles_incoherent():
    outer = {"a": (0, 0), "b": (12, 0), "c": (0, 12)}
    inner = {"d": (3, 3), "e": (6, 3), "f": (3, 6)}
    points = {**outer, **inner}
    middle = [("d", "e", "f")]
    for turn in (("a", "b", "d", "e"), ("a", "b", "e", "d")):
        cells = middle + [
            ("a", "b", "e"), ("b", "c", "f"), ("c", "a", "d"),
            ("a", "d", "e"), ("b", "e", "f"), ("c", "f", "d")]
        if turn[3] == "d":
            cells = middle + [
                ("a", "b", "d"), ("b", "c", "e"), ("c", "a", "f"),
                ("b", "d", "e"), ("c", "e", "f"), ("a", "f", "d")]
        res = is_coherent_configuration(points, cells, points)
        assert not res.coherent
        assert res.certificate_valid()


def _two_cell_type(A1):
    cx = orbit_complex(A1, [seg(0, 2)])
    return cx, check_marking(cx, pts(-2, -1, 0, 1, 2))


def _cell(cx, lo, hi):
    return next(c for c in cx.ids if cx.cells[c].vertices == ((lo,), (hi,)))


def test_degenerate_complex_examples(A1):
    cx, T = _two_cell_type(A1)
    R = _cell(cx, 0, 2)
    zero = next(c for c in cx.ids if cx.cells[c].vertices == ((0,),))
    out = degenerate_complex(T, {R: H({0: 0, 1: 0, 2: 0})}, {zero: [0, 0]})
    assert len(out.cells) == 2 and out.marking.marks == T.marks
    with pytest.raises(DegenerationError, match="compatibility"):
        degenerate_complex(T, {R: H({0: 0, 1: 0, 2: 0})}, {zero: [1, 0]})


def test_degenerate_complex_nonzero_gamma(A1):
    # on the three-cell complex the middle and outer cells meet at +-1
    cx = orbit_complex(A1, [seg(-1, 1), seg(1, 2)])
    T = check_marking(cx, pts(-2, -1, 0, 1, 2))
    mid, outer = _cell(cx, -1, 1), _cell(cx, 1, 2)
    one = next(c for c in cx.ids if cx.cells[c].vertices == ((1,),))
    heights = {mid: H({0: -1, 1: 0}), outer: H({1: 3, 2: 5})}
    out = degenerate_complex(T, heights, {one: [-3, 0]})
    assert sorted(c.vertices for c in out.cells) == [((-2,), (-1,)), ((-1,), (0,)), ((0,), (1,)), ((1,), (2,))]
    assert out.integrality_N == 1


heights = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@given(heights, heights, heights)
def test_round_trip_a1(h0, h1, h2):
    from redvar.rootsys import build_root_system
    rs = build_root_system("A", 1)
    out = degenerate(rs, seg(-2, 2), FULL, {(0,): h0, (1,): h1, (2,): h2})
    assert all(v in out.marking.marks for c in out.cells for v in c.vertices)
    res = is_coherent(rs, seg(-2, 2), out.marking)
    assert res.coherent
    again = degenerate(rs, seg(-2, 2), out.marking.marks, res.witness)
    assert again.marking.key == out.marking.key
    whole = check_marking(orbit_complex(rs, [seg(-2, 2)]), pts(-2, -1, 0, 1, 2))
    assert type_leq(out.marking, whole)
