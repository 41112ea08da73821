"""Exact finite-model toolkit for quantale-enriched (T,V)-category theory."""

__version__ = "0.1.0"
