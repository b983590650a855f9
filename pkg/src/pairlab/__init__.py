"""Pair correlation, additive energy, and GCD-sum experiment toolkit."""

__version__ = "0.1.0"
