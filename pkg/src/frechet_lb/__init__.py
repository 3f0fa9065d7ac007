"""Reductions from CNF-SAT and Orthogonal Vectors to Fréchet distance, with exact verification tools."""

__version__ = "0.1.0"
