"""Simulation of causal-order-switch and fixed-order solutions to the
odd-number-of-constant-functions problem, plus the Sagnac-loop optical model."""

__version__ = "0.1.0"
