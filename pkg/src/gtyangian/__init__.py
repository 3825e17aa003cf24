"""Exact Gelfand-Tsetlin engine for gl(m|n) and super-Yangian modules."""

__version__ = "0.1.0"
