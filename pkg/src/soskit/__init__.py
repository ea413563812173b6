"""soskit: sum-of-squares optimization toolkit.

Compiles polynomial nonnegativity, SOS-matrix and moment constraints into
standard-form cone programs, solves them with an embedded first-order
solver, and provides application layers for dynamical-system certification,
moment and probability bounds, shape-constrained fitting, copositive
relaxations, robust SDP and polynomial games.
"""

__version__ = "0.1.0"

from .poly import Exponent, Polynomial, PolyMatrix, parse

__all__ = ["Polynomial", "PolyMatrix", "Exponent", "parse", "__version__"]
