import pytest

from corecalc import Polyhedron
from corecalc.errors import DimensionMismatch
from corecalc.polyhedra import (
    canonical,
    difference,
    dimension,
    intersect,
    is_subset,
    minkowski_sum,
    negate,
    product,
    project,
    set_equal,
    to_hrep,
    to_vrep,
    translate,
)
from corecalc.polyhedra import VRep
from conftest import HALF


def test_square_vertices(square):
    V = to_vrep(square)
    assert set(V.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert V.rays == ()


def test_half_line():
    V = to_vrep(Polyhedron.from_hrep(1, [((-1,), 0)]))
    assert V.vertices == ((0,),)
    assert V.rays == ((1,),)


def test_face_of_strip():
    P = Polyhedron.from_hrep(2, [((1, 0), 0), ((-1, 0), 0), ((0, 1), -1)])
    V = to_vrep(P)
    assert V.vertices == ((0, -1),)
    assert V.rays == ((0, -1),)


def test_simplex_facets():
    h = to_hrep(VRep.build(2, [(0, 0), (1, 0), (0, 1)]))
    assert set(h.ineqs) == {((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)}
    assert h.eqs == ()


def test_line_becomes_one_equation():
    h = to_hrep(VRep.build(2, [(0, 0)], [(1, 0), (-1, 0)]))
    assert h.ineqs == ()
    assert len(h.eqs) == 1
    (a, b), = h.eqs
    assert a[0] == 0 and a[1] != 0 and b == 0


def test_contains(square):
    assert square.contains((HALF, HALF))
    assert not square.contains((2, 0))
    assert Polyhedron.from_hrep(2, (), [((0, 1), 0)]).contains((3, 0))


def test_contains_wrong_length(square):
    with pytest.raises(DimensionMismatch):
        square.contains((1,))


@pytest.mark.parametrize("P, d", [
    (Polyhedron.box((0, 0), (1, 1)), 2),
    (Polyhedron.from_vrep(2, [(0, 0), (1, 0)]), 1),
    (Polyhedron.from_hrep(2, [((1, 0), 0), ((-1, 0), -1)]), -1),
    (Polyhedron.point((3, 4)), 0),
])
def test_dimension(P, d):
    assert dimension(P) == d


def test_minkowski(square):
    assert set_equal(minkowski_sum(square, square), Polyhedron.box((0, 0), (2, 2)))
    lower = Polyhedron.from_hrep(2, [((0, 1), 0)])
    upper = Polyhedron.from_hrep(2, [((0, -1), 0)])
    assert set_equal(minkowski_sum(lower, negate(upper)), lower)
    assert set_equal(minkowski_sum(square, Polyhedron.point((0, 0))), square)


def test_difference_of_boxes(square):
    assert set_equal(difference(square, square), Polyhedron.box((-1, -1), (1, 1)))


def test_set_ops(square):
    q = intersect(Polyhedron.from_hrep(2, [((1, 0), 0)]), Polyhedron.from_hrep(2, [((0, 1), 0)]))
    assert set_equal(q, Polyhedron.from_hrep(2, [((1, 0), 0), ((0, 1), 0)]))
    unit = Polyhedron.box((0,), (1,))
    assert set_equal(product(unit, unit), square)
    assert set_equal(translate(square, (1, 1)), Polyhedron.box((1, 1), (2, 2)))


def test_project():
    wedge = Polyhedron.from_hrep(2, [((1, -1), 0), ((0, 1), 1)])
    assert set_equal(project(wedge, [0]), Polyhedron.from_hrep(1, [((1,), 1)]))
    assert set_equal(project(Polyhedron.box((0, 0), (1, 1)), [1]), Polyhedron.box((0,), (1,)))
    assert set_equal(project(Polyhedron.from_hrep(2, (), [((1, 1), 0)]), [0]), Polyhedron.universe(1))


def test_set_equal_and_subset(square):
    assert set_equal(square, Polyhedron.from_vrep(2, [(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert not set_equal(Polyhedron.from_hrep(1, [((-1,), 0)]), Polyhedron.from_hrep(1, [((-1,), 1)]))
    cone = Polyhedron.from_vrep(2, [(0, 0)], [(1, 0), (0, 1)])
    assert set_equal(cone, Polyhedron.from_hrep(2, [((-1, 0), 0), ((0, -1), 0)]))
    assert is_subset(square, cone) and not is_subset(cone, square)


def test_empty_sets():
    E = Polyhedron.from_hrep(2, [((1, 0), 0), ((-1, 0), -1)])
    assert E.is_empty()
    assert to_vrep(E).is_empty
    assert set_equal(E, Polyhedron.empty(2))
    assert is_subset(E, Polyhedron.box((0, 0), (1, 1)))


def test_canonical_is_irredundant():
    P = Polyhedron.from_hrep(2, [((1, 0), 1), ((2, 0), 3), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)])
    C = canonical(P)
    assert len(C.h.ineqs) == 4
    assert set_equal(C, P)


def test_dimension_mismatch(square):
    with pytest.raises(DimensionMismatch):
        intersect(square, Polyhedron.box((0,), (1,)))
