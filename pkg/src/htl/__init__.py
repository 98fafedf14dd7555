"""Exact computations with nilpotent tuples, weight filtrations, Koszul
complexes and twistor bundles on the projective line."""

__version__ = "0.1.0"
