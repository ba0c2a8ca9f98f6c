"""Sumset toolkit - exact sumsets, lower bounds and exhaustive checks in Z_p^m"""

__version__ = "0.1.0"
