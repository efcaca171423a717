"""Exact Fock-space verification of a twisted quantum toroidal algebra representation."""

__version__ = "0.1.0"
