"""Numerical verification of inverse-coefficient bounds for close-to-convex classes.

Modules
-------
series        truncated power series, composition and reversion
caratheodory  Schur-parameter description of Carathéodory coefficients
omega         piecewise closed form for a disk maximum and its grid oracle
bounds        delta_n functionals, named case functions, bound reports
optimizer     deterministic grid-plus-pattern-search maximization
cli           command-line reports
"""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
