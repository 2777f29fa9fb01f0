"""Exact computations around the nested Hilbert scheme of points Hilb^(n,2) in the plane."""

__version__ = "0.1.0"
