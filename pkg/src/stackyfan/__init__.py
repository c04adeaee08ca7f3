"""Exact combinatorics of stacky fans."""
from .cone import Cone, cone, facet_description, minimal_nonsimplicial_face, ns_index
from .cox import SquarefreeMonomialIdeal, irrelevant_ideal, is_saturated, saturation_components, saturation_ideal
from .desing import divisorial_simplicialize, partial_desingularize, reichstein_transform_at_cone
from .errors import (
    ConeNotInFan,
    FanValidationError,
    InternalInvariantViolation,
    StackyFanError,
    ValidationError,
)
from .exactlin import IntMatrix, smith_normal_form
from .fan import Fan, star_subdivide
from .io import Document, fixture, load, loads
from .stacky import LatticePresentation, StackyFan, gale_dual, stabilizer_invariants, stacky_star_subdivide

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "ConeNotInFan",
    "Document",
    "Fan",
    "FanValidationError",
    "IntMatrix",
    "InternalInvariantViolation",
    "LatticePresentation",
    "SquarefreeMonomialIdeal",
    "StackyFan",
    "StackyFanError",
    "ValidationError",
    "cone",
    "divisorial_simplicialize",
    "facet_description",
    "fixture",
    "gale_dual",
    "irrelevant_ideal",
    "is_saturated",
    "load",
    "loads",
    "minimal_nonsimplicial_face",
    "ns_index",
    "partial_desingularize",
    "reichstein_transform_at_cone",
    "saturation_components",
    "saturation_ideal",
    "smith_normal_form",
    "stabilizer_invariants",
    "stacky_star_subdivide",
    "star_subdivide",
]
