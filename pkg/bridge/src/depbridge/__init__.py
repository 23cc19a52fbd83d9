"""Dependency parser bridge: raw sentence files in, CoNLL-U out."""

__version__ = "0.1.0"
