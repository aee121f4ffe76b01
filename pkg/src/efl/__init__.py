"""Polynomial-method toolkit for coloring linear hypergraphs with n colors."""

__version__ = "0.1.0"
