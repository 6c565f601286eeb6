"""Voting trees over tournaments, Volterra quadratic operators, and certified spiral dynamics."""

__version__ = "0.1.0"
