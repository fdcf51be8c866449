"""Branching from K-types to L-types and the norms of the restriction blocks.

``R`` restricts functions on the sphere ``S`` to the equatorial subsphere.
The block ``R_{tau, sigma}`` maps the K-type ``W^tau`` to the L-type
``V^sigma``.  Its squared norm is given in closed form and, independently,
by an oracle that integrates a separated-variable vector of the isotypic
component directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .corefn import EPS, HEURISTIC, BoundedValue, gamma_ratio, quad_weighted
from .errors import InvalidTypeError
from .families import GroupFamily, Kind, check_ktype, check_ltype
from .spherical import (complex_radial_jacobi, fractional_phi_values, phi_norm_sq_oracle,
                        real_zonal)
from .weyl import RootSystem, ktype_dim, ltype_dim, positive_roots


@dataclass(frozen=True)
class BranchPair:
    tau: tuple[int, ...]
    sigma: tuple[int, ...]
    admissible: bool


def admissible_sigmas(family: GroupFamily, tau) -> list[tuple[int, ...]]:
    """L-types ``sigma`` with ``R_{tau, sigma} != 0``, ascending."""
    tau = check_ktype(family, tau)
    kind = family.kind
    if kind is Kind.OCTONION:
        return [(tau[1],)]
    sub = family.subgroup()
    if kind is Kind.REAL:
        p = tau[0]
        return [(s,) for s in range(p % 2, p + 1, 2)]
    p, q = tau
    out = []
    if kind is Kind.COMPLEX:
        for j in range(min(p, q) + 1):
            sig = (p - j, q - j)
            if _valid(sub, sig):
                out.append(sig)
    else:
        for s in range(q, p + 1, 2):
            if _valid(sub, (s, q)):
                out.append((s, q))
    return sorted(out)


def _valid(family: GroupFamily, t) -> bool:
    try:
        check_ktype(family, t)
        return True
    except InvalidTypeError:
        return False


def is_admissible(family: GroupFamily, tau, sigma) -> bool:
    tau = check_ktype(family, tau)
    sigma = check_ltype(family, sigma)
    return sigma in admissible_sigmas(family, tau)


def admissible_taus(family: GroupFamily, sigma, p_max: int) -> list[tuple[int, ...]]:
    """All ``tau`` containing ``sigma`` with leading index ``<= p_max``, ascending."""
    sigma = check_ltype(family, sigma)
    if p_max < sigma[0]:
        raise ValueError(f"p_max = {p_max} is below the leading index of {sigma}")
    kind = family.kind
    if kind is Kind.REAL:
        return [(p,) for p in range(sigma[0], p_max + 1, 2)]
    if kind is Kind.OCTONION:
        q = sigma[0]
        return [(p, q) for p in range(q, p_max + 1, 2)]
    s, t = sigma
    if kind is Kind.COMPLEX:
        return [(s + j, t + j) for j in range(p_max - s + 1)]
    return [(p, t) for p in range(s, p_max + 1, 2)]


def line_offsets(family: GroupFamily, sigma, p_max: int) -> np.ndarray:
    """Step index ``j`` of ``admissible_taus`` as an array."""
    sigma = check_ltype(family, sigma)
    step = 1 if family.kind is Kind.COMPLEX else 2
    return np.arange((p_max - sigma[0]) // step + 1)


def line_taus(family: GroupFamily, sigma, j):
    """K-type indices along the admissible line, vectorized in ``j``.

    Returns ``(p, q)`` arrays (``q`` is zero for the real family).
    """
    j = np.asarray(j)
    kind = family.kind
    if kind is Kind.REAL:
        return sigma[0] + 2 * j, np.zeros_like(j)
    if kind is Kind.OCTONION:
        return sigma[0] + 2 * j, np.full_like(j, sigma[0])
    s, t = sigma
    if kind is Kind.COMPLEX:
        return s + j, t + j
    return s + 2 * j, np.full_like(j, t)


def real_norm_constant(n: int) -> float:
    return math.gamma(n / 2) / (math.gamma((n - 1) / 2) * math.sqrt(math.pi))


def restriction_norm_sq_closed(family: GroupFamily, tau, sigma,
                               printed: bool = False) -> BoundedValue:
    """Closed form of ``||R_{tau, sigma}||^2``; zero on inadmissible pairs.

    For the quaternionic family the middle factor is
    ``2k + 2(n-1) + s + 1`` with ``p - s = 2k``; ``printed=True`` gives the
    variant with ``- 1`` in its place, kept for comparison.  The octonionic
    value is the dimension ratio ``dim W^{p,q} / dim V^q``.
    """
    tau, sigma = check_ktype(family, tau), check_ltype(family, sigma)
    if sigma not in admissible_sigmas(family, tau):
        return BoundedValue.from_exact(0)
    kind, n = family.kind, family.n
    if kind is Kind.REAL:
        p, s = tau[0], sigma[0]
        c = real_norm_constant(n)
        const = BoundedValue(c, 8 * EPS * c, HEURISTIC)
        g1 = gamma_ratio(Fraction(n + p + s - 2, 2), Fraction(n + p + s - 1, 2))
        g2 = gamma_ratio(Fraction(p - s + 1, 2), Fraction(p - s + 2, 2))
        return const * (2 * p + n - 2) * g1 * g2
    if kind is Kind.COMPLEX:
        return BoundedValue.from_exact(sum(tau) + n - 1)
    if kind is Kind.QUATERNION:
        k, s = (tau[0] - sigma[0]) // 2, sigma[0]
        mid = 2 * k + 2 * (n - 1) + s + (-1 if printed else 1)
        val = Fraction((k + 1) * mid * (k + 2 * (n - 1) + s), (2 * n - 1) * (2 * n - 2))
        return BoundedValue.from_exact(val)
    return BoundedValue.from_exact(Fraction(ktype_dim(family, tau), ltype_dim(family, sigma)))


def _log_weyl_dims(rs: RootSystem, twice_weights: np.ndarray) -> np.ndarray:
    """Vectorized log of the Weyl dimension for rows of twice-weights."""
    roots = np.array(positive_roots(rs), dtype=float)
    rho2 = roots.sum(axis=0)
    shifted = twice_weights + rho2
    return (np.log(shifted @ roots.T).sum(axis=1)
            - np.log(roots @ rho2).sum())


def log_restriction_norm_sq(family: GroupFamily, sigma, p, q) -> np.ndarray:
    """Vectorized ``log ||R_{tau, sigma}||^2`` along an admissible line."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    kind, n = family.kind, family.n
    s = float(sigma[0])
    if kind is Kind.REAL:
        return (math.log(real_norm_constant(n)) + np.log(2 * p + n - 2)
                + gammaln((n + p + s - 2) / 2) - gammaln((n + p + s - 1) / 2)
                + gammaln((p - s + 1) / 2) - gammaln((p - s + 2) / 2))
    if kind is Kind.COMPLEX:
        return np.log(p + q + n - 1)
    if kind is Kind.QUATERNION:
        k = (p - s) / 2
        return (np.log(k + 1) + np.log(2 * k + 2 * n + s - 1) + np.log(k + 2 * n + s - 2)
                - math.log((2 * n - 1) * (2 * n - 2)))
    w = np.stack([p, q, q, q], axis=1)
    ldim = _log_weyl_dims(RootSystem("B", 4), w)
    return ldim - math.log(ltype_dim(family, (int(sigma[0]),)))


def _separated_norm_ratio(k: int, m: int, deg_h: int, g, g0: float, degree: int,
                          nodes: int | None) -> BoundedValue:
    """``|g(0)|^2 / (c_{m,k} int_{B^k} |g|^2 (1-|y|^2)^a dy)``.

    ``g`` is a radial function of ``r = |y|`` on the unit ball of ``R^k``,
    ``m`` the real ambient dimension of the sphere and
    ``a = (m - k - 2)/2 + deg_h``.  The radial integral is done in
    ``t = 2 r^2 - 1`` by Gauss-Jacobi; ``degree`` is the degree of ``|g|^2``
    in ``t``, used to pick an exact node count.
    """
    a = Fraction(m - k - 2, 2) + deg_h
    b = Fraction(k - 2, 2)
    if nodes is None:
        nodes = degree // 2 + 3

    def integrand(t):
        return np.abs(g(np.sqrt((1 + t) / 2))) ** 2

    radial = quad_weighted(a, b, integrand, nodes)
    scale = 2.0 ** float(-a - b - 2)
    sphere_area = 2 * math.pi ** (k / 2) / math.gamma(k / 2)
    c_mk = math.gamma(m / 2) / (math.pi ** (k / 2) * math.gamma((m - k) / 2))
    denom = radial * (scale * sphere_area * c_mk)
    return BoundedValue.from_exact(0) if g0 == 0 else (g0 * g0) / denom


def restriction_norm_sq_oracle(family: GroupFamily, tau, sigma,
                               nodes: int | None = None) -> BoundedValue:
    """``||R f||^2 / ||f||^2`` for a separated-variable ``f`` in the isotypic part.

    ``f = h(x') g(x_last)`` with ``h`` in ``V^sigma`` and ``g`` a zonal
    polynomial of shifted (possibly fractional) dimension, so both norms
    reduce to one radial integral.  The real family also accepts pairs with
    ``p - s`` odd, where ``g(0) = 0`` forces the value 0.  For the octonionic
    family the two Schur norms are computed by quadrature.
    """
    tau, sigma = check_ktype(family, tau), check_ltype(family, sigma)
    kind, n = family.kind, family.n
    if kind is Kind.REAL and tau[0] >= sigma[0]:
        p, s = tau[0], sigma[0]
        d = p - s
        g0 = float(real_zonal(n + 2 * s, d, np.array(0.0))[0])
        return _separated_norm_ratio(1, n, s, lambda r: real_zonal(n + 2 * s, d, r)[0],
                                     g0, d, nodes)
    if sigma not in admissible_sigmas(family, tau):
        raise ValueError(f"{tau} -> {sigma} is not an admissible pair")
    if kind is Kind.COMPLEX:
        (p, q), (s, t) = tau, sigma
        j, n_eff = p - s, n + s + t

        def g(r):
            return complex_radial_jacobi(n_eff, j, j, r)

        return _separated_norm_ratio(2, 2 * n, s + t, g, float(g(np.array(0.0))), 2 * j, nodes)
    if kind is Kind.QUATERNION:
        (p, q), s = tau, sigma[0]
        n_eff = Fraction(n) + Fraction(s, 2)

        def g(r):
            return fractional_phi_values(n_eff, p - s, r)

        return _separated_norm_ratio(4, 4 * n, s, g, float(g(np.array(0.0))), p - s, nodes)
    sub = phi_norm_sq_oracle(family.subgroup(), sigma, nodes)
    full = phi_norm_sq_oracle(family, tau, nodes)
    return sub / full


def branch_pairs(family: GroupFamily, p_max: int) -> list[BranchPair]:
    """Every admissible ``(tau, sigma)`` with leading index ``<= p_max``."""
    out = []
    kind = family.kind
    for p in range(p_max + 1):
        if kind is Kind.REAL:
            taus = [(p,)]
        elif kind is Kind.COMPLEX:
            taus = [(p, q) for q in range(p_max + 1) if _valid(family, (p, q))]
        else:
            taus = [(p, q) for q in range(p % 2, p + 1, 2) if _valid(family, (p, q))]
        for tau in taus:
            out.extend(BranchPair(tau, sig, True) for sig in admissible_sigmas(family, tau))
    return out
