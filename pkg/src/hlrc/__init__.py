"""Hierarchical locally recoverable evaluation codes over finite fields."""

__version__ = "0.1.0"
