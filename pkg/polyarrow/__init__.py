"""Exact-rational toolkit for polytopal normed spaces, double arrows and push-outs."""

__version__ = "0.1"
