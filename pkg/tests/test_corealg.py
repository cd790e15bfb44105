from fractions import Fraction

import pytest

from corecalc import (
    Polyhedron,
    core_contains,
    extremal_principle,
    gauge,
    is_absorbing,
    is_core_solid,
    is_extremal,
    separate_point,
    separate_sets,
)
from corecalc.corealg import shift_is_disjoint
from corecalc.errors import DimensionMismatch, EmptyInputError, NotAbsorbingError, NotCoreSolidError, NotInSetError
from conftest import HALF, halfplanes

LOWER = halfplanes(((0, 1), 0))
UPPER = halfplanes(((0, -1), 0))
SEGMENT = Polyhedron.from_vrep(2, [(0, 0), (1, 0)])
CUBE = Polyhedron.box((-1, -1), (1, 1))


def test_core_membership(square):
    assert core_contains(square, (HALF, HALF))
    assert not core_contains(square, (1, HALF))
    assert not core_contains(SEGMENT, (HALF, 0))


def test_core_solid(square):
    w = is_core_solid(square)
    assert w is not None and core_contains(square, w)
    assert is_core_solid(SEGMENT) is None
    assert is_core_solid(Polyhedron.universe(2)) is not None
    assert is_core_solid(Polyhedron.empty(2)) is None


def test_absorbing(square):
    assert is_absorbing(CUBE)
    assert not is_absorbing(square)
    assert not is_absorbing(Polyhedron.from_hrep(2, (), [((0, 1), 0)]))


def test_gauge():
    assert gauge(CUBE, (2, 1)) == 2
    assert gauge(CUBE, (0, 0)) == 0
    assert gauge(halfplanes(((1, 0), 1)), (3, 5)) == 3
    assert gauge(halfplanes(((1, 0), 1)), (-3, 5)) == 0


def test_gauge_needs_absorbing(square):
    with pytest.raises(NotAbsorbingError):
        gauge(square, (1, 1))


def test_separate_outside_point(square):
    cert = separate_point(square, (2, 0))
    assert cert.f.coeffs == (1, 0)
    assert cert.sup_lhs == 1 and cert.inf_rhs == 2
    w, x0 = cert.proper_witnesses
    assert w == (0, 0) and x0 == (2, 0)


def test_separate_boundary_point(square):
    cert = separate_point(square, (1, 1))
    assert cert.f.coeffs == (1, 1)
    assert cert.sup_lhs == 2 == cert.inf_rhs
    w, _ = cert.proper_witnesses
    assert square.contains(w) and cert.f(w) < 2


def test_separate_core_point(square):
    assert separate_point(square, (HALF, HALF)) is None


def test_separate_point_errors():
    with pytest.raises(NotCoreSolidError):
        separate_point(SEGMENT, (2, 0))
    with pytest.raises(EmptyInputError):
        separate_point(Polyhedron.empty(2), (0, 0))
    with pytest.raises(DimensionMismatch):
        separate_point(CUBE, (0,))


def test_separate_halfplanes():
    cert = separate_sets(LOWER, UPPER)
    # f = (0, 1): sup of x2 over the lower half-plane is 0, inf over the upper is 0
    assert cert.f.coeffs == (0, 1)
    assert cert.sup_lhs == 0 == cert.inf_rhs
    x1, x2 = cert.proper_witnesses
    assert LOWER.contains(x1) and UPPER.contains(x2) and cert.f(x1) < cert.f(x2)


def test_separate_boxes(square):
    cert = separate_sets(square, Polyhedron.box((2, 0), (3, 1)))
    assert cert.f.coeffs == (1, 0)
    assert (cert.sup_lhs, cert.inf_rhs) == (1, 2)
    assert separate_sets(square, square) is None


def test_extremal_halfplanes():
    cert = is_extremal(LOWER, UPPER)
    assert cert.verdict
    assert cert.direction == (0, -1)
    assert len(cert.checked_ts) == 21
    for t in cert.checked_ts:
        assert shift_is_disjoint(LOWER, UPPER, cert.direction, t)


def test_extremality_verdicts(square):
    assert not is_extremal(square, square).verdict
    assert is_extremal(square, Polyhedron.box((5, 5), (6, 6))).verdict


def test_extremal_principle(square):
    assert extremal_principle(LOWER, UPPER, (0, 0)).coeffs == (0, 1)
    f = extremal_principle(square, Polyhedron.box((1, 0), (2, 1)), (1, HALF))
    assert f.coeffs == (1, 0)
    assert extremal_principle(square, square, (HALF, HALF)) is None


def test_extremal_principle_point_check(square):
    with pytest.raises(NotInSetError):
        extremal_principle(square, Polyhedron.box((1, 0), (2, 1)), (0, 0))


def test_dual_vector_arithmetic():
    cert = separate_point(CUBE, (3, 0))
    f = cert.f
    assert f((1, 2)) == 1
    assert (-f).coeffs == (-1, 0)
    assert not f.is_zero
    assert isinstance(f((Fraction(1, 3), 0)), Fraction)
