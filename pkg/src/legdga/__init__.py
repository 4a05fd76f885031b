"""Combinatorial Legendrian contact homology for planar Lagrangian projections and spun tori."""

from .curve_geometry import PlanarCurve, analyze, load_curve, quotient_symmetric
from .dga_core import DGA, Augmentation
from .knot_dga import build_knot_dga
from .laurent import Field, LaurentPoly, parse_laurent
from .torus_dga import build_spun_dga

__version__ = "0.1.0"

__all__ = [
    "DGA",
    "Augmentation",
    "Field",
    "LaurentPoly",
    "PlanarCurve",
    "analyze",
    "build_knot_dga",
    "build_spun_dga",
    "load_curve",
    "parse_laurent",
    "quotient_symmetric",
]
