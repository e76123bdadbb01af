"""Tight-closure workbench over prime fields."""

__version__ = "0.1.0"

from .closure import (IN_PROVED, LIKELY_IN, OUT_EVIDENCE, UNDETERMINED, ClosureConfig,
                      bracket_power, tc_certificate_check, tc_hull, tc_membership)
from .errors import WorkbenchError
from .poly import PolyRing, Polynomial
from .rings import RingIdeal, RingPresentation, parameter_system, present_ring

__all__ = [
    "IN_PROVED", "LIKELY_IN", "OUT_EVIDENCE", "UNDETERMINED", "ClosureConfig",
    "bracket_power", "tc_certificate_check", "tc_hull", "tc_membership",
    "WorkbenchError", "PolyRing", "Polynomial", "RingIdeal", "RingPresentation",
    "parameter_system", "present_ring",
]
