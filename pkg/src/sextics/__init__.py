"""Exact tools for sextic and decic plane curves over quadratic fields."""

__version__ = "0.1.0"
