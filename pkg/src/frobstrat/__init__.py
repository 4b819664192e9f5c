"""Frobenius-semilinear invariants of hyperelliptic curves in odd characteristic."""
__version__ = "0.1.0"
