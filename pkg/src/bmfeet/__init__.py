"""Exact computations with orthogonal Buekenhout-Metz unitals and their pedal sets."""

from .fields import FieldError, FieldTower, make_tower, tower_for_q
from .plane import BaerPencil, Conic, Plane, plane_for
from .unital import InvalidParams, Unital, UnitalParams, build_unital, iter_valid_params, validate_params
from .pedal import PedalSet, SecantProfile, classify, detect_baer_pencil, feet_closed_form, pedal_brute
from .analysis import VerificationReport, run_suite

__all__ = [
    "FieldError", "FieldTower", "make_tower", "tower_for_q",
    "BaerPencil", "Conic", "Plane", "plane_for",
    "InvalidParams", "Unital", "UnitalParams", "build_unital", "iter_valid_params", "validate_params",
    "PedalSet", "SecantProfile", "classify", "detect_baer_pencil", "feet_closed_form", "pedal_brute",
    "VerificationReport", "run_suite",
]

__version__ = "0.1.0"
