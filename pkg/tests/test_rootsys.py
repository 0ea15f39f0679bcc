from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from redvar import linalg as la
from redvar.rootsys import KNOWN_ORDERS, RootSystemError, build_root_system, weyl_group_closure_ok


@pytest.mark.parametrize("series,rank", sorted(KNOWN_ORDERS))
def test_weyl_orders_and_closure(series, rank):
    if KNOWN_ORDERS[(series, rank)] > 2000:
        pytest.skip("large group")
    rs = build_root_system(series, rank)
    assert rs.order == KNOWN_ORDERS[(series, rank)]
    assert weyl_group_closure_ok(rs)
    assert rs.weyl_elements[0].is_identity


def test_cartan_shape(B2, G2):
    for rs in (B2, G2):
        M = rs.cartan_matrix
        assert all(M[i][i] == 2 for i in range(rs.rank))
        assert all(M[i][j] <= 0 for i in range(rs.rank) for j in range(rs.rank) if i != j)


def test_a1_simple_root(A1):
    assert A1.simple_roots == [(2,)]
    assert A1.order == 2


def test_weyl_elements_permute_roots(A2, B2, G2):
    for rs in (A2, B2, G2):
        roots = set(rs.positive_roots) | {la.scale(-1, a) for a in rs.positive_roots}
        for w in rs.weyl_elements:
            assert {w(a) for a in roots} == roots
            assert abs(la.det(w.matrix)) == 1


def test_is_dominant(A1, A2):
    assert A1.is_dominant((3,))
    assert not A2.is_dominant((1, -1))
    assert A2.is_dominant((0, 0))
    with pytest.raises(RootSystemError):
        A2.is_dominant((1,))


def test_dominant_representative(A1, A2):
    w, v = A1.dominant_representative((-3,))
    assert v == (3,) and w == A1.simple_reflection(0)
    w, v = A2.dominant_representative((-1, 2))
    assert v == (1, 1) and w == A2.simple_reflection(0)
    w, v = A2.dominant_representative((0, 0))
    assert w.is_identity and v == (0, 0)


def test_stabilizers(A1, A2):
    assert len(A1.stabilizer_of_vertices([(-2,), (2,)])) == 2
    assert [w.is_identity for w in A1.stabilizer_of_vertices([(0,), (2,)])] == [True]
    assert len(A2.stabilizer_of_vertices(A2.orbit((1, 1)))) == 6


def test_unsupported_and_cap():
    with pytest.raises(RootSystemError):
        build_root_system("E", 6)
    with pytest.raises(RootSystemError):
        build_root_system("A", 4, weyl_cap=50)


weights = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@given(weights)
def test_orbit_stabilizer_and_idempotence(v):
    rs = build_root_system("A", 2)
    v = la.vec(v)
    w, d = rs.dominant_representative(v)
    assert rs.is_dominant(d) and w(v) == d
    w2, d2 = rs.dominant_representative(d)
    assert w2.is_identity and d2 == d
    orbit = rs.orbit(v)
    stab = [u for u in rs.weyl_elements if u(v) == v]
    assert len(orbit) * len(stab) == rs.order
    assert all(la.is_integral(x) for x in orbit)
    if rs.is_regular(v):
        assert sum(all(c > 0 for c in x) for x in orbit) == 1


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_b2_g2_orbits_integral(v):
    for rs in (build_root_system("B", 2), build_root_system("G", 2)):
        for w in rs.weyl_elements:
            assert la.is_integral(w(v))
        assert rs.form(v, v) == rs.form(rs.dominant_representative(v)[1], rs.dominant_representative(v)[1])


def test_rho_pairs_to_one(B2):
    for i, a in enumerate(B2.simple_roots):
        assert B2.coroot_pairing(B2.rho, a) == Fraction(1)
