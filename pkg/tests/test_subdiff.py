import math

import pytest

from corecalc import (
    LinearMap,
    MarginalProblem,
    PolyFunction,
    Polyhedron,
    SetValuedMap,
    adjoint_image,
    argmin_set,
    evaluate,
    fn_add,
    fn_precompose,
    indicator,
    is_core_solid,
    marginal_function,
    marginal_subdiff_rule,
    subdiff_chain_rule,
    subdiff_sum_rule,
    subdifferential,
)
from corecalc.errors import (
    DimensionMismatch,
    ImproperFunctionError,
    NotInSetError,
    NotMinimizerError,
    UnboundedBelowError,
)
from corecalc.polyhedra import set_equal

SUM = LinearMap(1, 2, ((1, 1),))
ZERO = PolyFunction.max_affine([((0,), 0)])


def interval(lo, hi):
    return Polyhedron.box((lo,), (hi,))


def ray(lo=None, hi=None):
    rows = []
    if hi is not None:
        rows.append(((1,), hi))
    if lo is not None:
        rows.append(((-1,), -lo))
    return Polyhedron.from_hrep(1, rows)


def test_evaluate(absval):
    assert evaluate(absval, (-3,)) == 3
    assert evaluate(absval, (0,)) == 0
    assert evaluate(indicator(interval(0, 1)), (2,)) == math.inf


def test_subdifferential(absval):
    assert set_equal(subdifferential(absval, (0,)), interval(-1, 1))
    assert set_equal(subdifferential(absval, (2,)), Polyhedron.point((1,)))
    assert set_equal(subdifferential(indicator(interval(0, 1)), (0,)), ray(hi=0))


def test_subdifferential_outside_domain():
    with pytest.raises(NotInSetError):
        subdifferential(indicator(interval(0, 1)), (2,))


def test_improper_functions():
    with pytest.raises(ImproperFunctionError):
        PolyFunction(1, Polyhedron.from_hrep(2, [((0, 1), 0)]))  # a <= 0 has no upward ray
    with pytest.raises(ImproperFunctionError):
        PolyFunction(1, Polyhedron.from_hrep(2, [((1, 0), 0)]))  # unbounded below
    with pytest.raises(ImproperFunctionError):
        PolyFunction(1, Polyhedron.empty(2))
    with pytest.raises(ImproperFunctionError):
        fn_add(indicator(interval(0, 1)), indicator(interval(2, 3)))


def test_fn_add(absval):
    twice = fn_add(absval, absval)
    assert set_equal(twice.epi, PolyFunction.max_affine([((2,), 0), ((-2,), 0)]).epi)
    assert set_equal(fn_add(absval, ZERO).epi, absval.epi)


def test_sum_rule(absval):
    v = subdiff_sum_rule(absval, absval, (0,))
    assert v.qc_satisfied and v.equal
    assert set_equal(v.lhs, interval(-2, 2))
    v = subdiff_sum_rule(absval, ZERO, (0,))
    assert v.equal and set_equal(v.rhs, interval(-1, 1))


def test_sum_rule_without_qc():
    v = subdiff_sum_rule(indicator(ray(hi=0)), indicator(ray(lo=0)), (0,))
    assert not v.qc_satisfied
    assert v.equal
    assert set_equal(v.lhs, Polyhedron.universe(1))


def test_precompose_and_adjoint(absval):
    g = fn_precompose(absval, SUM)
    assert evaluate(g, (2, -5)) == 3
    assert set_equal(adjoint_image(SUM, interval(-1, 1)), Polyhedron.from_vrep(2, [(-1, -1), (1, 1)]))
    assert set_equal(fn_precompose(absval, LinearMap.identity(1)).epi, absval.epi)


def test_chain_rule(absval):
    v = subdiff_chain_rule(absval, SUM, (0, 0))
    assert v.equal
    assert set_equal(v.lhs, Polyhedron.from_vrep(2, [(-1, -1), (1, 1)]))
    v = subdiff_chain_rule(absval, SUM, (1, 1))
    assert v.equal and set_equal(v.lhs, Polyhedron.point((1, 1)))
    v = subdiff_chain_rule(absval, LinearMap.identity(1), (0,))
    assert v.equal and set_equal(v.lhs, interval(-1, 1))


def test_linear_map_shape():
    with pytest.raises(DimensionMismatch):
        LinearMap(2, 2, ((1, 0),))
    assert SUM.apply((2, 3)) == (5,)
    assert SUM.adjoint((4,)) == (4, 4)


def test_indicator():
    d = subdifferential(indicator(interval(0, 1)), (1,))
    assert set_equal(d, ray(lo=0))
    sq = indicator(Polyhedron.box((0, 0), (1, 1)))
    assert set_equal(subdifferential(sq, ("1/2", "1/2")), Polyhedron.point((0, 0)))
    assert is_core_solid(sq.epi) is not None
    seg = indicator(Polyhedron.from_vrep(2, [(0, 0), (1, 0)]))
    assert is_core_solid(seg.epi) is None


def value_map():
    """phi(x, y) = y over F(x) = {y >= |x|}."""
    phi = PolyFunction.max_affine([((0, 1), 0)])
    F = SetValuedMap(1, 1, Polyhedron.from_hrep(2, [((1, -1), 0), ((-1, -1), 0)]))
    return MarginalProblem(phi, F)


def test_marginal_function(absval):
    M = value_map()
    assert set_equal(marginal_function(M).epi, absval.epi)
    assert set_equal(argmin_set(M, (0,)), Polyhedron.point((0,)))
    assert set_equal(argmin_set(M, (2,)), Polyhedron.point((2,)))


def test_marginal_of_zero_is_indicator(above_abs):
    M = MarginalProblem(PolyFunction.max_affine([((0, 0), 0)]), above_abs)
    assert set_equal(marginal_function(M).epi, indicator(Polyhedron.universe(1)).epi)
    assert set_equal(argmin_set(M, (1,)), ray(lo=1))


def test_marginal_unbounded_below():
    phi = PolyFunction.max_affine([((0, 1), 0)])
    with pytest.raises(UnboundedBelowError):
        MarginalProblem(phi, SetValuedMap(1, 1, Polyhedron.universe(2)))


def test_marginal_rule():
    M = value_map()
    v = marginal_subdiff_rule(M, (0,), (0,))
    assert v.qc_satisfied and v.details["qf1"] and v.equal
    assert set_equal(v.lhs, interval(-1, 1))
    v = marginal_subdiff_rule(M, (2,), (2,))
    assert v.equal and set_equal(v.rhs, Polyhedron.point((1,)))


def test_marginal_rule_flat_graph():
    phi = PolyFunction.max_affine([((0, 0), 0)])
    F = SetValuedMap(1, 1, Polyhedron.from_hrep(2, (), [((0, 1), 0)]))
    v = marginal_subdiff_rule(MarginalProblem(phi, F), (0,), (0,))
    assert v.details == {"qf": True, "qf1": False}
    assert v.qc_satisfied and v.equal
    assert set_equal(v.lhs, Polyhedron.point((0,)))


def test_marginal_rule_needs_minimizer():
    with pytest.raises(NotMinimizerError):
        marginal_subdiff_rule(value_map(), (0,), (1,))
