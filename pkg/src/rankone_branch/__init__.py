"""Branching of spherical complementary series of rank-one groups.

Covers ``SO_0(n,1)``, ``SU(n,1)``, ``Sp(n,1)`` and ``F_4(-20)`` restricted
to their rank-one subgroups: zonal spherical polynomials, K-type
dimensions, restriction norms, unitarity constants and the summability
criterion for discrete components.
"""
from .errors import (ConvergenceWarning, DivergenceDetected, DominanceError, InvalidTypeError,
                     KernelError, PoleError, RegimeError)
from .families import GroupFamily, Kind

__version__ = "0.1.0"

__all__ = [
    "GroupFamily", "Kind", "ConvergenceWarning", "DivergenceDetected", "DominanceError",
    "InvalidTypeError", "KernelError", "PoleError", "RegimeError",
]
