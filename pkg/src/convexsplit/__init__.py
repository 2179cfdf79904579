"""Combinatorial engine for convex surface decompositions of 3-manifolds."""

__version__ = "0.1.0"
