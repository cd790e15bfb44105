import pytest

from corecalc import (
    PolyCone,
    Polyhedron,
    SetValuedMap,
    coderivative,
    coderivative_chain_rule,
    coderivative_sum_rule,
    cone_intersect,
    cone_is_trivial,
    cone_neg,
    cone_sum,
    graph_core_check,
    intermediate_points,
    intersection_rule,
    map_compose,
    map_sum,
    normal_cone,
    sum_decompositions,
)
from corecalc.errors import NotCoreSolidError, NotInSetError, PreconditionError
from corecalc.normalcalc import cone_equal
from corecalc.polyhedra import set_equal
from conftest import HALF, halfplanes

QUADRANT = PolyCone.build(2, [(1, 0), (0, 1)])


def interval(lo, hi):
    return Polyhedron.box((lo,), (hi,))


def test_normal_cone_examples(square):
    nonpos = halfplanes(((1, 0), 0), ((0, 1), 0))
    assert cone_equal(normal_cone(nonpos, (0, 0)), QUADRANT)
    assert cone_equal(normal_cone(square, (1, 1)), QUADRANT)
    assert cone_is_trivial(normal_cone(square, (HALF, HALF)))


def test_normal_cone_outside_is_empty(square):
    C = normal_cone(square, (2, 2))
    assert C.empty and not C.contains((0, 0))


def test_normal_cone_of_subspace():
    C = normal_cone(Polyhedron.from_hrep(2, (), [((0, 1), 0)]), (5, 0))
    assert C.lineality == ((0, 1),) and C.generators == ()


def test_cone_algebra():
    e1, e2 = PolyCone.build(2, [(1, 0)]), PolyCone.build(2, [(0, 1)])
    assert cone_equal(cone_sum(e1, e2), QUADRANT)
    other = PolyCone.build(2, [(-1, 0), (0, 1)])
    assert cone_equal(cone_intersect(QUADRANT, other), e2)
    assert cone_is_trivial(PolyCone.build(2))
    assert cone_equal(cone_neg(e1), PolyCone.build(2, [(-1, 0)]))
    assert cone_equal(cone_sum(e1, cone_neg(e1)), PolyCone.build(2, (), [(1, 0)]))


def test_from_polyhedron_rejects_shifted_sets(square):
    with pytest.raises(PreconditionError):
        PolyCone.from_polyhedron(square)


def test_intersection_rule_under_qc():
    v = intersection_rule(halfplanes(((1, 0), 0)), halfplanes(((0, 1), 0)), (0, 0))
    assert v.qc_satisfied and v.equal
    assert cone_equal(v.lhs, QUADRANT) and cone_equal(v.rhs, QUADRANT)


def test_intersection_rule_without_qc():
    v = intersection_rule(halfplanes(((0, 1), 0)), halfplanes(((0, -1), 0)), (0, 0))
    assert not v.qc_satisfied
    assert v.rhs_subset_lhs and v.equal
    line = PolyCone.build(2, (), [(0, 1)])
    assert cone_equal(v.lhs, line) and cone_equal(v.rhs, line)


def test_intersection_rule_interior(square):
    v = intersection_rule(square, square, (HALF, HALF))
    assert v.equal and cone_is_trivial(v.lhs)


def test_intersection_rule_needs_common_point(square):
    with pytest.raises(NotInSetError):
        intersection_rule(square, Polyhedron.box((2, 2), (3, 3)), (1, 1))


def test_graph_core_check(above_abs):
    assert graph_core_check(above_abs, (0, 1)) == (True, True)
    assert graph_core_check(above_abs, (1, 1)) == (False, False)
    assert graph_core_check(above_abs, (0, 0)) == (False, False)


def test_graph_core_check_needs_solid_graph():
    F = SetValuedMap(1, 1, Polyhedron.from_hrep(2, (), [((0, 1), 0)]))
    with pytest.raises(NotCoreSolidError):
        graph_core_check(F, (0, 0))


def test_coderivative(above_diag):
    assert set_equal(coderivative(above_diag, (0, 0), (1,)), Polyhedron.point((1,)))
    assert coderivative(above_diag, (0, 0), (-1,)).is_empty()
    assert set_equal(coderivative(above_diag, (0, 1), (0,)), Polyhedron.point((0,)))


def test_coderivative_off_graph(above_diag):
    with pytest.raises(NotInSetError):
        coderivative(above_diag, (1, 0), (1,))


def test_map_sum(above_diag, above_antidiag):
    S = map_sum(above_diag, above_antidiag)
    assert set_equal(S.graph, halfplanes(((0, -1), 0)))
    Z = map_sum(above_diag, SetValuedMap.zero(1, 1))
    assert set_equal(Z.graph, above_diag.graph)


def test_sum_decompositions(above_diag, above_antidiag):
    assert set_equal(sum_decompositions(above_diag, above_antidiag, (0, 0)), Polyhedron.point((0, 0)))
    seg = Polyhedron.from_vrep(2, [(0, 2), (2, 0)])
    assert set_equal(sum_decompositions(above_diag, above_antidiag, (0, 2)), seg)
    only = sum_decompositions(above_diag, SetValuedMap.zero(1, 1), (0, 3))
    assert set_equal(only, Polyhedron.point((3, 0)))


def test_coderivative_sum_rule(above_diag, above_antidiag):
    v = coderivative_sum_rule(above_diag, above_antidiag, (0, 0), (0, 0), (1,))
    assert v.qc_satisfied and v.equal
    assert set_equal(v.lhs, Polyhedron.point((0,)))
    v = coderivative_sum_rule(above_diag, above_antidiag, (0, 0), (0, 0), (-1,))
    assert v.equal and v.lhs.is_empty() and v.rhs.is_empty()


def test_sum_rule_neutral_summand(above_abs):
    v = coderivative_sum_rule(above_abs, SetValuedMap.zero(1, 1), (0, 0), (0, 0), (1,))
    assert v.equal
    assert set_equal(v.lhs, coderivative(above_abs, (0, 0), (1,)))


def test_sum_rule_rejects_bad_decomposition(above_diag, above_antidiag):
    with pytest.raises(PreconditionError):
        coderivative_sum_rule(above_diag, above_antidiag, (0, 2), (0, 1), (1,))


def test_composition(above_diag):
    C = map_compose(above_diag, above_diag)
    assert set_equal(C.graph, above_diag.graph)
    assert set_equal(intermediate_points(above_diag, above_diag, (0, 0)), Polyhedron.point((0,)))
    assert set_equal(map_compose(SetValuedMap.identity(1), above_diag).graph, above_diag.graph)


def test_coderivative_chain_rule(above_diag):
    v = coderivative_chain_rule(above_diag, above_diag, (0, 0), (0,), (1,))
    assert v.qc_satisfied and v.details["qc_i"] and v.equal
    assert set_equal(v.lhs, Polyhedron.point((1,)))
    v = coderivative_chain_rule(above_diag, above_diag, (0, 0), (0,), (-1,))
    assert v.equal and v.lhs.is_empty()


def test_chain_rule_identity_outer(above_abs):
    v = coderivative_chain_rule(above_abs, SetValuedMap.identity(1), (0, 0), (0,), (1,))
    assert v.equal
    assert set_equal(v.lhs, interval(-1, 1))


def test_verdict_violation_flag():
    v = intersection_rule(halfplanes(((1, 0), 0)), halfplanes(((0, 1), 0)), (0, 0))
    assert not v.violation
