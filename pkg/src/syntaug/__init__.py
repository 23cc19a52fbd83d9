"""Parallel corpus filtering and syntax-aware subtree-swapping augmentation."""

__version__ = "0.1.0"
