"""Topological image classification via HOMFLY polynomials of feature curves."""

__version__ = "0.1.0"
