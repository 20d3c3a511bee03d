"""Exact and numerical analysis of the planar quintic family
x' = y^3 - x^3, y' = -x + m*y^5 and its relatives."""

__version__ = "0.1.0"
