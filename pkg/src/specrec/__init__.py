"""Exact engine for mixed correlators on genus-zero spectral curves."""

__version__ = "0.1.0"
