"""Exact toric geometry for smooth complete fans and their additive actions."""

from .additive import (additive_act, additive_act_X, build_paper_fan, check_equivariance,
                       component_star_check, ga_orbit_report, orbit_dimension, orbit_dimension_Y,
                       family_cones)
from .cox import (ChartPoint, chart_transition, group_act, in_Y, lift, points_equal, quasitorus,
                  quotient_map)
from .fans import (Fan, FanError, Polytope, closure_intersection, dual_fan_of_polytope,
                   fan_isomorphic, fan_validate, is_complete, is_smooth, orbit_poset,
                   primitive_collections, star_fan, verify_isomorphism)
from .lp import FarkasCertificate, LinearSystem, feasible, fm_feasible, verify_farkas
from .projectivity import (ProjectivityVerdict, SupportFunction, build_support_system,
                           is_projective, chain_certificate, verify_paper_certificate)

__all__ = [
    "ChartPoint", "Fan", "FanError", "FarkasCertificate", "LinearSystem", "Polytope",
    "ProjectivityVerdict", "SupportFunction", "additive_act", "additive_act_X",
    "build_paper_fan", "build_support_system", "chart_transition", "check_equivariance",
    "closure_intersection", "component_star_check", "dual_fan_of_polytope", "fan_isomorphic",
    "fan_validate", "feasible", "fm_feasible", "ga_orbit_report", "group_act", "in_Y",
    "is_complete", "is_projective", "is_smooth", "lift", "orbit_dimension", "orbit_dimension_Y",
    "orbit_poset", "family_cones", "chain_certificate", "points_equal", "primitive_collections",
    "quasitorus", "quotient_map", "star_fan", "verify_farkas", "verify_isomorphism",
    "verify_paper_certificate",
]
