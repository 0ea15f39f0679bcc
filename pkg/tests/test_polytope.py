from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from redvar import linalg as la
from redvar.polytope import (PolytopeError, chamber_intersection, convex_hull, intersect, lattice_points,
                             lower_envelope, relative_interior_contains, volume)

from conftest import pts, seg


def test_hull_examples(A2):
    assert seg(0, 2).vertices == ((0,), (2,))
    assert convex_hull(pts(0, 1, 2)).vertices == ((0,), (2,))
    sq = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert len(sq.vertices) == 4 and len(sq.facets) == 4
    hexagon = convex_hull(A2.orbit((1, 1)))
    assert len(hexagon.vertices) == 6 and hexagon.dim == 2


def test_relative_interior(A2):
    assert relative_interior_contains(seg(0, 2), (1,))
    assert not relative_interior_contains(seg(0, 2), (0,))
    assert relative_interior_contains(convex_hull(A2.orbit((1, 1))), (0, 0))
    edge = convex_hull([(0, 0), (2, 0)])
    assert edge.relative_interior_contains((1, 0))
    assert not edge.relative_interior_contains((1, 1))


def test_intersections(A1, A2):
    assert intersect(seg(0, 2), seg(-2, 0)).vertices == ((0,),)
    assert intersect(seg(0, 1), seg(2, 3)) is None
    Q = chamber_intersection(A2, convex_hull(A2.orbit((1, 1))))
    assert set(Q.vertices) == {(0, 0), (1, 1), (3, 0), (0, 3)} or Q.dim == 2
    assert all(A2.is_dominant(v) for v in Q.vertices)
    assert chamber_intersection(A1, seg(-2, 2)).vertices == ((0,), (2,))
    assert chamber_intersection(A1, seg(1, 2)).vertices == ((1,), (2,))


def test_hexagon_chamber_quadrilateral(A2):
    Q = chamber_intersection(A2, convex_hull(A2.orbit((1, 1))))
    assert len(Q.vertices) == 4
    assert (0, 0) in Q.vertices and (1, 1) in Q.vertices


def test_lattice_points(A2):
    assert lattice_points(seg(0, 2)) == [(0,), (1,), (2,)]
    assert len(lattice_points(convex_hull([(0, 0), (1, 0), (0, 1)]))) == 3
    hexagon = convex_hull(A2.orbit((1, 1)))
    scan = [(x, y) for x in range(-3, 4) for y in range(-3, 4) if hexagon.contains((x, y))]
    assert lattice_points(hexagon) == sorted(la.vec(p) for p in scan)
    assert lattice_points(seg(0, 2), 2) == [(k,) for k in range(5)]


def test_envelope_examples():
    env = lower_envelope([((-2,), 0), ((-1,), 0), ((0,), -1), ((1,), 0), ((2,), 0)])
    assert [c.vertices for c in env.cells] == [((-2,), (0,)), ((0,), (2,))]
    assert env.attained == {(-2,), (0,), (2,)}
    assert env.h((1,)) == Fraction(-1, 2) == env.h((-1,))
    flat = lower_envelope([((x,), 0) for x in range(-2, 3)])
    assert len(flat.cells) == 1 and len(flat.attained) == 5
    sq = lower_envelope([((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 1)])
    assert len(sq.cells) == 2 and all(c.dim == 2 for c in sq.cells)
    with pytest.raises(PolytopeError):
        lower_envelope([((0,), 0), ((0,), 1)])


def test_cube_faces():
    cube = convex_hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    assert len(cube.facets) == 6
    assert len(cube.faces()) == 27


points2d = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=8)


@given(points2d)
def test_hull_round_trip_and_duality(ps):
    P = convex_hull(ps)
    assert convex_hull(P.vertices) == P
    assert all(P.contains(p) for p in ps)
    for v in P.vertices:
        rest = [u for u in P.vertices if u != v]
        if rest:
            assert not convex_hull(rest).contains(v)
    for x in range(-4, 5):
        for y in range(-4, 5):
            inside = all(la.dot(a, (x, y)) <= b for a, b in P.facets) and P.in_affine_hull((x, y))
            assert inside == P.contains((x, y))


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5),
       st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_envelope_properties(h1, h2):
    for lifted in ([((x - 2,), h) for x, h in enumerate(h1)],
                   [(p, h) for p, h in zip([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)], h2)]):
        env = lower_envelope(lifted)
        dom = convex_hull([p for p, _ in lifted])
        assert sum((volume(c, dom.pivots) for c in env.cells), Fraction(0)) == volume(dom, dom.pivots)
        for p, h in lifted:
            assert env.h(p) <= h
            assert (env.h(p) == h) == (la.vec(p) in env.attained)
        for v in dom.vertices:
            assert v in env.attained
        assert env.h.is_consistent()
