"""Brute-force enumeration oracles over small finite fields."""

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    build_delta_l,
    build_symbol,
    matrix_algebra,
    poly_quotient,
    power_series_2d,
    product_algebra,
    quantum_plane,
    quotient_by_slice,
    truncated_dvr,
)
from .counts import (
    OracleBoundsError,
    P2Census,
    SliceReport,
    check_slice,
    count_ideals_2d,
    count_ideals_algebra,
    count_sublattices,
    segal_index_p_ideals,
    subscheme_census_p2,
    window_supports,
)
from .modules import Census, Submodule, grothendieck_class, submodules_bfs, submodules_raw, whole
from .tower import HeckeTower, TowerReport, hecke_apply, hecke_T_minus, verify_tower

__all__ = [
    "AlgebraError",
    "FiniteAlgebra",
    "build_delta_l",
    "build_symbol",
    "matrix_algebra",
    "poly_quotient",
    "power_series_2d",
    "product_algebra",
    "quantum_plane",
    "quotient_by_slice",
    "truncated_dvr",
    "OracleBoundsError",
    "P2Census",
    "SliceReport",
    "check_slice",
    "count_ideals_2d",
    "count_ideals_algebra",
    "count_sublattices",
    "segal_index_p_ideals",
    "subscheme_census_p2",
    "window_supports",
    "Census",
    "Submodule",
    "grothendieck_class",
    "submodules_bfs",
    "submodules_raw",
    "whole",
    "HeckeTower",
    "TowerReport",
    "hecke_apply",
    "hecke_T_minus",
    "verify_tower",
]
