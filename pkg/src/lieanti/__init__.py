"""Exact workbench for Lie antialgebras, their adjoint Lie superalgebras and enveloping algebras."""

__version__ = "0.1.0"
