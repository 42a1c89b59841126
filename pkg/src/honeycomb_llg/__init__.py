"""Lorentz lattice gas with flipping rotators and mirrors on the honeycomb lattice."""

__version__ = "0.1.0"
