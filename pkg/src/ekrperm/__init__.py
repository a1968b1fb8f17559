"""Exact tools for Erdos-Ko-Rado questions on permutation groups."""

__version__ = "0.1.0"
