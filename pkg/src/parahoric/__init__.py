"""Exact computations with truncated valuation rings and parahoric-type groups."""

__version__ = "0.1.0"
