"""
vk
==

Exact computations around the van Kampen obstruction: simplicial
complexes and their finger-move lattices, free nilpotent quotients,
p-group non-power witnesses and linking numbers of spatial K6 graphs.
"""

__version__ = "0.1.0"

from vk.config import Config
from vk.entities import FreeWord, SimplicialComplex, SpatialGraph
from vk.core import VanKampenSolver, catalog

__all__ = ["Config", "FreeWord", "SimplicialComplex", "SpatialGraph", "VanKampenSolver", "catalog"]
