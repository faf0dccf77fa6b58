"""Exact computations with oriented graph complexes, weighted corolla properads,
cubic noncommutative algebras and polyvector fields."""

__version__ = "0.1.0"
