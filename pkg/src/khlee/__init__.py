"""Khovanov-Lee homology, the s-filtration and link concordance bounds."""

__version__ = "0.1.0"
