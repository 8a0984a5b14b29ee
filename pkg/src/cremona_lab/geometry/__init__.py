"""Exact projective geometry for the surfaces in the catalog."""

from .cyclo import MAX_CONDUCTOR, Cyclotomic, cyclo, cyclo_sqrt, euler_phi
from .monomial import MonomialMap, Subspace, fixed_subspaces, normalize_point
from .quartic import (
    Line,
    Orbit,
    QuarticModel,
    dp4_line_action,
    lines_dp4,
    quartic_model,
    small_orbits_dp4,
)

__all__ = [
    "MAX_CONDUCTOR",
    "Cyclotomic",
    "Line",
    "MonomialMap",
    "Orbit",
    "QuarticModel",
    "Subspace",
    "cyclo",
    "cyclo_sqrt",
    "dp4_line_action",
    "euler_phi",
    "fixed_subspaces",
    "lines_dp4",
    "normalize_point",
    "quartic_model",
    "small_orbits_dp4",
]
