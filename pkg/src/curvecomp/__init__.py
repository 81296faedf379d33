"""Exact computations for plane curves with isomorphic complements."""

__version__ = "0.1.0"
