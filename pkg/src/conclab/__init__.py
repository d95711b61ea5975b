"""Exact concordance invariants for knots, boundary links and Bing doubles."""

__version__ = "0.1.0"
