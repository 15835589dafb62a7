"""Exact lattice computations for contact toric manifolds over Hirzebruch surfaces."""
__version__ = "0.1.0"
