"""Exact machinery for lower bounds of linear forms in logarithms."""
__version__ = "0.1.0"
