"""Categorical diagram computations with cost accounting and compilers."""

__version__ = "0.1.0"
