"""Exact q-series engine for coloured torus-knot invariants and W-algebra characters."""

__version__ = "0.1.0"
