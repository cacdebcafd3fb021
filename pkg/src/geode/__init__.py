"""Exact computations with the Geode series and Lukasiewicz lattice paths."""

from .errors import GeodeError
from .report import Check, VerificationReport
from .series import Monomial, Series, TruncationContext
from .solver import (
    GeodeBundle,
    WienerHopfBundle,
    compute_G,
    compute_H,
    evaluate_geode_at_zero_sum,
    solve_S,
    solve_wiener_hopf_pair,
    verify_core_identities,
)

__all__ = [
    "Check",
    "GeodeBundle",
    "GeodeError",
    "Monomial",
    "Series",
    "TruncationContext",
    "VerificationReport",
    "WienerHopfBundle",
    "compute_G",
    "compute_H",
    "evaluate_geode_at_zero_sum",
    "solve_S",
    "solve_wiener_hopf_pair",
    "verify_core_identities",
]
