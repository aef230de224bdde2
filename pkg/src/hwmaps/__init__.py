"""Heisenberg-Weyl observables and the linear maps built from them."""

from .hwops import displacement_op, observable, weyl_op
from .maps import SandwichMap, hw_map
from .rmatrix import r_matrix

__all__ = ["SandwichMap", "displacement_op", "hw_map", "observable", "r_matrix", "weyl_op"]
__version__ = "0.1.0"
