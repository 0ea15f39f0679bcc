import pytest
from hypothesis import given, strategies as st

from redvar.abgroup import (ChainComplex, FGAbelianGroup, GroupError, GroupMap, cokernel, homology, image,
                            kernel, smith_normal_form)
from redvar import linalg as la


def _check_snf(A, ncols):
    D, U, V = smith_normal_form(A, ncols)
    assert [list(r) for r in la.matmul(la.matmul(U, A), V)] == [list(r) for r in D]
    assert abs(la.det(U)) == 1 and abs(la.det(V)) == 1
    d = [D[i][i] for i in range(min(len(D), ncols))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(ncols) if i != j)
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return d


def test_snf_examples():
    assert _check_snf([[2]], 1) == [2]
    assert _check_snf([[1, 0], [0, 0]], 2) == [1, 0]
    assert _check_snf([[2, 4], [6, 8]], 2) == [2, 4]


def test_kernel_cokernel_examples():
    target = FGAbelianGroup(2, ((0, 2),))
    p = GroupMap.make(FGAbelianGroup.free(3), target, [[1, 1, 1], [0, 1, 0]])
    K, inc = kernel(p)
    assert K.free_rank == 2 and K.torsion == ()
    basis = [tuple(r[j] for r in inc.matrix) for j in range(K.ngens)]
    for v in basis:
        assert target.is_zero(la.matvec(p.matrix, v))
    span = {(-2, 2, 0), (-1, 0, 1)}
    for v in span:
        assert la.solve(la.transpose(basis), v) is not None
    assert cokernel(p).is_trivial
    Z2 = FGAbelianGroup.free(2)
    assert cokernel(GroupMap.make(Z2, Z2, [[1, 0], [0, 2]])).torsion == (2,)
    assert kernel(GroupMap.make(Z2, Z2, [[1, 0], [0, 1]]))[0].is_trivial
    Z = FGAbelianGroup.free(1)
    zero = GroupMap.make(Z, Z, [[0]])
    assert kernel(zero)[0].free_rank == 1 and cokernel(zero).free_rank == 1


def test_homology_examples():
    Z = FGAbelianGroup.free(1)
    K = ChainComplex([Z, Z, Z], {1: GroupMap.make(Z, Z, [[0]]), 2: GroupMap.make(Z, Z, [[2]])})
    assert K.check()
    assert K.homology(1).torsion == (2,) and K.homology(1).free_rank == 0
    Z2 = FGAbelianGroup.free(2)
    flat = ChainComplex([Z2, Z2], {1: GroupMap.make(Z2, Z2, [[0, 0], [0, 0]])})
    assert flat.homology(0).free_rank == 2 and flat.homology(1).free_rank == 2


def test_ill_defined_map_rejected():
    Z4 = FGAbelianGroup.cyclic(4)
    Z = FGAbelianGroup.free(1)
    assert not GroupMap.make(Z4, Z, [[1]]).is_well_defined()
    assert GroupMap.make(Z4, FGAbelianGroup.cyclic(2), [[1]]).is_well_defined()
    with pytest.raises(GroupError):
        kernel(GroupMap.make(Z4, Z, [[1]]))


def test_group_json_and_str():
    G = FGAbelianGroup.from_invariants(2, [2])
    assert G.to_json() == {"free_rank": 2, "torsion": [2]}
    assert str(G) == "Z^2 + Z/2"
    assert str(FGAbelianGroup.free(0)) == "0"


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_properties(A):
    n = len(A[0])
    d = _check_snf(A, n)
    D, _, _ = smith_normal_form(A, n)
    assert smith_normal_form(D, n)[0] == D
    assert sum(1 for x in d if x) == la.rank(A)


@given(matrices)
def test_rank_nullity(A):
    n = len(A[0])
    f = GroupMap.make(FGAbelianGroup.free(n), FGAbelianGroup.free(len(A)), A)
    K, _ = kernel(f)
    assert K.free_rank + image(f).free_rank == n
    assert K.torsion == ()
    assert cokernel(f).free_rank == len(A) - la.rank(A)
