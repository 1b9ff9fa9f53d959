"""Exceptional collections of line bundles on rank-2 flag varieties."""

__version__ = "0.1.0"
