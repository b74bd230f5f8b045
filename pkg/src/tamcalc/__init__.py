"""Barcode calculus for sheaves on the line, with a finite-poset oracle."""
__version__ = "0.1.0"
