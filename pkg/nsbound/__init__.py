"""Exact Hilbert invariants and Neron-Severi torsion bounds for projective varieties."""

__version__ = "0.1.0"
