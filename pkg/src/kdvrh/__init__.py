"""Numerical forward and inverse scattering for KdV on an unbounded background."""

__version__ = "0.1.0"
