"""Exact computations with the integral Burau representation and its congruence subgroups."""

__version__ = "0.1.0"
