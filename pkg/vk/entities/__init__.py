"""Entities module for the vk toolkit."""

from .complex import EdgeLoop, SimplicialComplex
from .report import Certificate, Report
from .spatial_graph import OrientedCycle, SpatialGraph
from .words import FreeWord, MagnusSeries
from .wreath import WreathElement

__all__ = [
    "EdgeLoop",
    "SimplicialComplex",
    "Certificate",
    "Report",
    "OrientedCycle",
    "SpatialGraph",
    "FreeWord",
    "MagnusSeries",
    "WreathElement",
]
