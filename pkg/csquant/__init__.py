"""Coherent-state quantization of circle, sphere and fuzzy-sphere observation sets."""

__version__ = "1.0.0"
