"""Descent-theoretic constructions over finite-dimensional algebras on prime fields."""

__version__ = "0.1.0"
