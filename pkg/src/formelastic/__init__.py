"""Differential-form formulation of static linear elasticity, with classical cross-checks."""

__version__ = "0.1.0"
