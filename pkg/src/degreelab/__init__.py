"""Degree-sequence laboratory for potentially K_m - P_k graphic sequences."""

__version__ = "0.1.0"
