"""Numerical toolkit for dispersion in time."""
