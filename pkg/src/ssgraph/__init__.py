"""Dual-engine toolkit for special-vertex neighborhoods in supersingular
isogeny graphs: a kernel-polynomial engine over F_{p^2} and a quaternion
ideal-class engine, plus cross-checks against classical modular polynomials.
"""

from .ff import (FieldContext, FieldElement, make_quadratic_context,
                 parse_element, prime_context, serialize_element)
from .isogeny import IsogenyGraph, bfs_graph, neighborhood
from .modpoly import ModularPolynomial
from .quat import KIND_E0, KIND_E1728, predicted_neighborhood
from .report import Neighbor, NeighborhoodReport

__version__ = "0.1.0"

__all__ = [
    "FieldContext", "FieldElement", "IsogenyGraph", "KIND_E0", "KIND_E1728",
    "ModularPolynomial", "Neighbor", "NeighborhoodReport", "bfs_graph",
    "make_quadratic_context", "neighborhood", "parse_element",
    "predicted_neighborhood", "prime_context", "serialize_element",
    "__version__",
]
