"""Exact computations in categories of comodules over Hopf algebroids."""

__version__ = "0.1.0"
