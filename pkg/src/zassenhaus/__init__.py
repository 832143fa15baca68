"""Exact computations of Zassenhaus filtration dimensions and p-extension counts."""

__version__ = "0.1.0"
