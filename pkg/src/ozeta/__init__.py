"""Exact zeta functions of orders on surfaces over finite fields, with brute-force oracles."""

__version__ = "0.1.0"
