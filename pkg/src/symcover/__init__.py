"""Exact computations on conjugacy classes and characters of S_n and A_n."""

__version__ = "0.1.0"
