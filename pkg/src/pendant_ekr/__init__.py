"""Exact EKR experiments on pendant graph constructions."""

from .families import SetFamily, VertexSet, enumerate_independent, is_intersecting, shadow, star
from .graphs import Graph, attach_pendants, independence_number, pendant_complete, pendant_path
from .solver import max_intersecting
from .theorems import verify_ekr

__all__ = [
    "Graph",
    "SetFamily",
    "VertexSet",
    "attach_pendants",
    "enumerate_independent",
    "independence_number",
    "is_intersecting",
    "max_intersecting",
    "pendant_complete",
    "pendant_path",
    "shadow",
    "star",
    "verify_ekr",
]

__version__ = "0.1.0"
