"""Exact convex calculus for rational polyhedra.

Cores, separation and extremality of sets; normal cones and coderivatives
of set-valued maps; subdifferentials of polyhedral functions; and verifiers
that compute both sides of each calculus rule and compare them exactly.
"""
from .corealg import (
    DualVector,
    ExtremalityCertificate,
    SeparationCertificate,
    core_contains,
    extremal_principle,
    gauge,
    is_absorbing,
    is_core_solid,
    is_extremal,
    separate_point,
    separate_sets,
)
from .errors import CoreCalcError
from .normalcalc import (
    PolyCone,
    RuleVerdict,
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
from .polyhedra import HRep, Polyhedron, VRep
from .subdiff import (
    LinearMap,
    MarginalProblem,
    PolyFunction,
    adjoint_image,
    argmin_set,
    evaluate,
    fn_add,
    fn_precompose,
    indicator,
    marginal_function,
    marginal_subdiff_rule,
    subdiff_chain_rule,
    subdiff_sum_rule,
    subdifferential,
)

__version__ = "0.1.0"
