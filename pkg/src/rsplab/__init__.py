"""Simulation and verification of remote state preparation in n dimensions."""

__version__ = "0.1.0"
