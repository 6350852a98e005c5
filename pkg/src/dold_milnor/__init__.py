"""Exact Stiefel-Whitney numbers and unoriented bordism for Dold and Milnor manifolds."""

from .bordism import bordant, bounds, partitions, sw_number, sw_profile
from .manifolds import CplxProj, Dold, Milnor, Product, RealProj, dimension, euler_mod2, parse, total_sw_class

__all__ = [
    "CplxProj",
    "Dold",
    "Milnor",
    "Product",
    "RealProj",
    "bordant",
    "bounds",
    "dimension",
    "euler_mod2",
    "parse",
    "partitions",
    "sw_number",
    "sw_profile",
    "total_sw_class",
]
