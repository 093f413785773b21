"""Exact computations in the Morita bicategory of finite-dimensional algebras over Q."""

__version__ = "0.1.0"
