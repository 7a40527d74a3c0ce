"""Exact computation of the homology-ribbon obstruction ψ(K, P) from Seifert data."""

from .exact_algebra import LaurentPoly
from .obstruction import (derivative_set_bounds, family_table, intersection_oracle, m_value,
                          n_value, psi_vanishes, stabilized_gcd)
from .reports import KnotSpec, analyze, preset_example1, preset_example2, preset_family
from .seifert import BlockForm, Metaboliser, SeifertMatrix

__all__ = [
    "BlockForm", "KnotSpec", "LaurentPoly", "Metaboliser", "SeifertMatrix", "analyze",
    "derivative_set_bounds", "family_table", "intersection_oracle", "m_value", "n_value",
    "preset_example1", "preset_example2", "preset_family", "psi_vanishes", "stabilized_gcd",
]
__version__ = "0.1.0"
