"""Exact checks of Virasoro constraints for stable pairs descendents.

Two families of geometry are covered: the line class on the cubic 3-fold,
where every descendent series is computed in closed form, and surfaces with
``H^1 = 0`` through their Hilbert schemes of at most one point.
"""

from .cohmodel import CohClass, CohModel, ValidationError, build_model
from .descalg import DescExpr, OperatorPreset, apply_Lk, ch, collapse
from .exact import QSeries, RatFn, reconstruct_rational, rf_series

__all__ = [
    "CohClass",
    "CohModel",
    "ValidationError",
    "build_model",
    "DescExpr",
    "OperatorPreset",
    "apply_Lk",
    "ch",
    "collapse",
    "QSeries",
    "RatFn",
    "reconstruct_rational",
    "rf_series",
]
