"""Exact liaison-theoretic computations over a prime field."""

__version__ = "0.1.0"
