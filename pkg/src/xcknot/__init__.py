"""Exact XC-algebra verification and universal knot invariants on the Sweedler algebra."""

__version__ = "0.1.0"
