import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from redvar.admissible import (AdmissibleError, check_admissible, check_marking, check_wcomplex,
                               is_admissible, is_multiplicity_free, make_wcomplex, orbit_complex, orbit_count,
                               subdivides, type_leq)
from redvar.polytope import convex_hull

from conftest import pts, seg
from oracles import admissible_by_lp


def test_check_admissible_examples(A1):
    assert check_admissible(A1, seg(-2, 2)).ok
    assert check_admissible(A1, seg(-1, 2)).codes() == {"interiors_overlap"}
    half = convex_hull([(0,), (Fraction(3, 2),)])
    assert "non_lattice_vertex" in check_admissible(A1, half).codes()
    assert check_admissible(A1, seg(-3, -1)).codes() == {"interior_misses_chamber"}


def _two_cell(A1, with_zero=True):
    cells = {"L": seg(-2, 0), "R": seg(0, 2), "m": convex_hull([(-2,)]), "p": convex_hull([(2,)])}
    if with_zero:
        cells["z"] = convex_hull([(0,)])
    return make_wcomplex(A1, cells)


def test_check_wcomplex_examples(A1):
    cx = _two_cell(A1)
    assert check_wcomplex(cx).ok
    assert cx.act(A1.simple_reflection(0), "L") == "R"
    single = make_wcomplex(A1, {"d": seg(-2, 2), "a": convex_hull([(-2,)]), "b": convex_hull([(2,)])})
    assert check_wcomplex(single).ok
    bad = make_wcomplex(A1, {"R": seg(0, 2), "p": convex_hull([(2,)])})
    assert "face_closure" in check_wcomplex(bad).codes()


def test_explicit_action_and_multiplicity(A1):
    cells = {"a": seg(0, 2), "b": seg(0, 2), "z": convex_hull([(0,)]), "t": convex_hull([(2,)]),
             "a'": seg(-2, 0), "b'": seg(-2, 0), "t'": convex_hull([(-2,)])}
    with pytest.raises(AdmissibleError):
        make_wcomplex(A1, cells)
    table = {0: {"a": "a'", "a'": "a", "b": "b'", "b'": "b", "z": "z", "t": "t'", "t'": "t"}}
    cx = make_wcomplex(A1, cells, table)
    assert cx.explicit_action
    assert not is_multiplicity_free(cx)
    assert is_multiplicity_free(_two_cell(A1))
    assert is_multiplicity_free(orbit_complex(A1, [seg(-2, 2)]))


def test_orbit_counts(A1):
    seg_cx = make_wcomplex(A1, {"d": seg(-2, 2), "a": convex_hull([(-2,)]), "b": convex_hull([(2,)])})
    assert orbit_count(seg_cx) == 2
    assert orbit_count(_two_cell(A1)) == 3
    assert orbit_count(make_wcomplex(A1, {"o": convex_hull([(0,)])})) == 1


def test_orbit_count_ignores_ids(A1):
    cx = _two_cell(A1)
    renamed = make_wcomplex(A1, {f"x{k}": cx.cells[c] for k, c in enumerate(reversed(cx.ids))})
    assert orbit_count(renamed) == orbit_count(cx)


def test_check_marking(A1):
    cx = orbit_complex(A1, [seg(-2, 2)])
    assert check_marking(cx, pts(-2, 2)).marks == frozenset(pts(-2, 2))
    assert len(check_marking(cx, pts(-2, 0, 2)).marks) == 3
    with pytest.raises(AdmissibleError):
        check_marking(cx, pts(2))
    with pytest.raises(AdmissibleError):
        check_marking(cx, pts(-2, 2, 3))
    with pytest.raises(AdmissibleError):
        check_marking(cx, pts(-2, 1, 2))


def test_type_leq_examples(A1):
    split = orbit_complex(A1, [seg(0, 2)])
    whole = orbit_complex(A1, [seg(-2, 2)])
    thirds = orbit_complex(A1, [seg(-1, 1), seg(1, 2)])
    assert type_leq(check_marking(split, pts(-2, 0, 2)), check_marking(whole, pts(-2, 0, 2)))
    assert type_leq(check_marking(whole, pts(-2, 2)), check_marking(whole, pts(-2, 0, 2)))
    a = check_marking(split, pts(-2, -1, 0, 1, 2))
    b = check_marking(thirds, pts(-2, -1, 0, 1, 2))
    assert not type_leq(a, b) and not type_leq(b, a)
    assert subdivides(split, whole) and not subdivides(whole, split)
    with pytest.raises(AdmissibleError):
        type_leq(a, check_marking(orbit_complex(A1, [seg(-1, 1)]), pts(-1, 1)))


def test_hexagon_orbit_complex(A2):
    cx = orbit_complex(A2, [convex_hull(A2.orbit((1, 1)))])
    assert len(cx.ids) == 13 and orbit_count(cx) == 4
    assert check_wcomplex(cx).ok


def _random_polytope(rs, rng):
    n = rng.randint(1, 4)
    return convex_hull([tuple(rng.randint(-4, 4) for _ in range(rs.rank)) for _ in range(n)])


def test_admissibility_agrees_with_lp_oracle(A1, A2):
    rng = random.Random(7)
    for k in range(60):
        rs = A1 if k % 2 else A2
        P = _random_polytope(rs, rng)
        assert is_admissible(rs, P) == admissible_by_lp(rs, P)


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_admissible_iff_orbit_complex_valid(a, b):
    from redvar.rootsys import build_root_system
    rs = build_root_system("A", 1)
    P = seg(min(a, b), max(a, b))
    from redvar.admissible import interior_meets_chamber
    if not interior_meets_chamber(rs, P):
        return
    cx = orbit_complex(rs, [P])
    assert check_admissible(rs, P).ok == (check_wcomplex(cx).ok and is_multiplicity_free(cx))
