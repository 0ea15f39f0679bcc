import pytest
from hypothesis import given, strategies as st

from redvar.polytope import convex_hull
from redvar.reps import (RepError, centroid_face_vertices, character, hilbert_function, tensor_decompose,
                         tensor_decompose_bk, verify_tensor_power_lemma, weyl_dim)

from conftest import seg
from oracles import a1_hilbert, clebsch_gordan


def test_weyl_dims(A1, A2, B2, G2):
    assert weyl_dim(A1, (5,)) == 6
    assert weyl_dim(A2, (1, 1)) == 8
    for rs in (A1, A2, B2, G2):
        assert weyl_dim(rs, (0,) * rs.rank) == 1
    assert sorted([weyl_dim(G2, (1, 0)), weyl_dim(G2, (0, 1))]) == [7, 14]
    assert sorted([weyl_dim(B2, (1, 0)), weyl_dim(B2, (0, 1))]) == [4, 5]
    with pytest.raises(RepError):
        weyl_dim(A1, (-1,))


def test_characters(A1, A2):
    assert character(A1, (2,)).weights == {(-2,): 1, (0,): 1, (2,): 1}
    assert character(A2, (0, 0)).weights == {(0, 0): 1}
    adj = character(A2, (1, 1))
    assert adj.multiplicity((0, 0)) == 2
    assert sorted(m for w, m in adj.weights.items() if any(w)) == [1] * 6


@pytest.mark.parametrize("a", range(7))
def test_clebsch_gordan(A1, a):
    for b in range(7):
        assert tensor_decompose(A1, (a,), (b,)) == clebsch_gordan(a, b)


def test_a2_tensor(A2):
    assert tensor_decompose(A2, (1, 0), (0, 1)) == [((0, 0), 1), ((1, 1), 1)]
    assert tensor_decompose(A2, (1, 1), (0, 0)) == [((1, 1), 1)]


@pytest.mark.parametrize("lam", [(a, b) for a in range(5) for b in range(5) if a + b <= 4])
def test_dimension_matches_character(A2, lam):
    assert character(A2, lam).dimension() == weyl_dim(A2, lam)


@given(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_tensor_symmetric_and_dimension(lam, mu):
    from redvar.rootsys import build_root_system
    rs = build_root_system("A", 2)
    dec = tensor_decompose(rs, lam, mu)
    assert dec == tensor_decompose(rs, mu, lam) == tensor_decompose_bk(rs, lam, mu)
    assert sum(m * weyl_dim(rs, nu) for nu, m in dec) == weyl_dim(rs, lam) * weyl_dim(rs, mu)


def test_tensor_power_lemma(A1, A2):
    rep = verify_tensor_power_lemma(A1, (2,), [(-2,), (2,)], 9)
    assert rep.mu == (0,) and rep.n0 == 2 and rep.bound == 3 and rep.bound_confirmed
    assert verify_tensor_power_lemma(A1, (2,), [(2,)], 6).n0 == 1
    rep = verify_tensor_power_lemma(A2, (1, 1), A2.orbit((1, 1)), 6)
    assert rep.n0 is not None and rep.n0 <= rep.bound
    with pytest.raises(RepError):
        verify_tensor_power_lemma(A1, (2,), [(-2,)], 4)


def test_lemma_filter_reported(A2):
    edge = [(1, 1), (2, -1)]
    rep = verify_tensor_power_lemma(A2, (1, 1), edge, 4)
    assert all(n % 2 == 0 for n, _ in rep.checked)
    assert "integral" in rep.tested_filter


def test_hilbert(A1):
    cells = [seg(0, 2)]
    assert [hilbert_function(A1, cells, n) for n in range(3)] == [1, 14, 55]
    assert hilbert_function(A1, [seg(-2, 0), seg(0, 2)], 3) == a1_hilbert(-2, 2, 3)
    with pytest.raises(RepError):
        hilbert_function(A1, cells, 21)


def test_centroid_faces(A1, A2):
    pairs = centroid_face_vertices(A1, (2,))
    assert {mu: F.vertices for F, mu in pairs} == {(0,): ((-2,), (2,)), (2,): ((2,),)}
    assert [mu for _, mu in centroid_face_vertices(A1, (0,))] == [(0,)]
    for F, mu in centroid_face_vertices(A2, (1, 1)):
        assert F is not None and F.centroid == mu and (1, 1) in F.vertices
