"""Supersingular genus-2 curves in characteristic 3: fields, curves, covers and a Weil-polynomial census."""

__version__ = "0.1.0"
