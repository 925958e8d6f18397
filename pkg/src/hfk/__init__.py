"""Combinatorial knot Floer homology over the two-element field."""

__version__ = "0.1.0"
