"""Exact-arithmetic populations of critical points of master functions
for the root systems A_N, B_N and C_N."""

from .core import ProblemInstance
from .poly import Poly

__all__ = ["Poly", "ProblemInstance"]
__version__ = "0.1.0"
