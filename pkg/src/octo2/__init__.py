"""Exact composition-algebra toolkit for characteristic-2 fields."""

__version__ = "0.1.0"
