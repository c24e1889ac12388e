"""Koenig edge deletion: recognition, reductions and exact solvers."""

__version__ = "0.1.0"
