"""Equivariant cohomology of bisymplectic and symplectic Grassmannians."""
from .subsets import Geometry, GrassmannianSpec, admissible, codim, enumerate_admissible

__all__ = ["Geometry", "GrassmannianSpec", "admissible", "codim", "enumerate_admissible"]
__version__ = "0.1.0"
