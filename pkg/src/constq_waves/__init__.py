"""Fundamental solutions of the time-fractional diffusion-wave equation."""

__version__ = "0.1.0"
