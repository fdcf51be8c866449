"""Zonal spherical polynomials on ``S = K/M`` and their sphere integrals.

Points are given in the polar coordinates of each family:

* real: ``x1`` in [-1, 1];
* complex: ``(xi, theta)`` with ``x1 = e^{i theta} cos xi``;
* quaternionic: ``(xi, theta)`` with ``x1 = cos xi (cos theta + y sin theta)``;
* octonionic: ``(xi, eta)`` with ``x0 = cos xi cos eta``.

Every function is normalized to 1 at the base point.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .corefn import (EPS, HEURISTIC, RIGOROUS, BoundedValue, gauss_jacobi,
                     hyp2f1_coefficients, jacobi_values, pochhammer)
from .errors import ConvergenceWarning
from .families import GroupFamily, Kind, check_ktype


def _homogeneous(coeffs, power: int, x, v):
    """``sum_j a_j (-v)^j x^(power - 2j)`` and the sum of term magnitudes.

    With ``v = 1 - x^2`` this is ``x^power F(-m, b; c; -tan^2)`` written
    without dividing by ``x``.
    """
    val = np.zeros_like(x, dtype=float)
    mag = np.zeros_like(x, dtype=float)
    for j, a in enumerate(coeffs):
        term = float(a) * (-v) ** j * x ** (power - 2 * j)
        val = val + term
        mag = mag + np.abs(term)
    return val, mag


def _one_minus_sq(x):
    return (1 - x) * (1 + x)


def real_zonal(n, p: int, x):
    """``phi_p^n(x1)`` for real (possibly fractional) dimension ``n``."""
    x = np.asarray(x, dtype=float)
    if p % 2 == 0:
        m, b = p // 2, Fraction(-(p - 1), 2)
    else:
        m, b = (p - 1) // 2, Fraction(-p, 2)
    coeffs = hyp2f1_coefficients(m, b, (Fraction(n) - 1) / 2)
    return _homogeneous(coeffs, p, x, _one_minus_sq(x))


def complex_radial(n, p: int, q: int, r):
    """Radial factor ``cos^{p+q} xi F(-p, -q; n-1; -tan^2 xi)``, ``r = cos xi``."""
    r = np.asarray(r, dtype=float)
    coeffs = hyp2f1_coefficients(min(p, q), Fraction(-max(p, q)), Fraction(n) - 1)
    return _homogeneous(coeffs, p + q, r, _one_minus_sq(r))


def complex_radial_jacobi(n, p: int, q: int, r):
    """The same radial factor as ``r^|p-q| P_m^{(n-2, |p-q|)}(2r^2 - 1) / P_m(1)``,
    ``m = min(p, q)``; stable at high degree."""
    r = np.asarray(r, dtype=float)
    m, d = min(p, q), abs(p - q)
    a = float(Fraction(n) - 2)
    top = jacobi_values(m, a, d, np.array(1.0))
    return r ** d * jacobi_values(m, a, d, 2 * r * r - 1) / top


def quaternion_radial(n, p: int, q: int, r):
    """``cos^p xi F(-(p-q)/2, -(p+q+2)/2; 2(n-1); -tan^2 xi)``."""
    r = np.asarray(r, dtype=float)
    coeffs = hyp2f1_coefficients((p - q) // 2, Fraction(-(p + q + 2), 2),
                                 2 * (Fraction(n) - 1))
    return _homogeneous(coeffs, p, r, _one_minus_sq(r))


def sp1_character(q: int, theta):
    """``sin((q+1) theta) / ((q+1) sin theta)`` as ``U_q(cos theta) / (q+1)``."""
    c = np.cos(np.asarray(theta, dtype=float))
    return sp1_character_cos(q, c)


def sp1_character_cos(q: int, c):
    c = np.asarray(c, dtype=float)
    u_prev, u = np.zeros_like(c), np.ones_like(c)
    for _ in range(q):
        u_prev, u = u, 2 * c * u - u_prev
    return u / (q + 1)


def octonion_parts(p: int, q: int, cos_xi, cos_eta):
    """The two factors ``phi_q^8(cos eta)`` and the ``xi`` factor."""
    eta_val, eta_mag = real_zonal(8, q, cos_eta)
    r = np.asarray(cos_xi, dtype=float)
    coeffs = hyp2f1_coefficients((p - q) // 2, Fraction(-(p + q + 6), 2), Fraction(4))
    xi_val, xi_mag = _homogeneous(coeffs, p, r, _one_minus_sq(r))
    return (eta_val, eta_mag), (xi_val, xi_mag)


def base_point(family: GroupFamily):
    return 1.0 if family.kind is Kind.REAL else (0.0, 0.0)


def _check_point(family: GroupFamily, pt):
    if family.kind is Kind.REAL:
        x = float(pt)
        if not -1.0 <= x <= 1.0:
            raise ValueError(f"x1 must lie in [-1, 1], got {x}")
        return (x,)
    xi, ang = (float(a) for a in pt)
    if not 0.0 <= xi <= math.pi / 2:
        raise ValueError(f"xi must lie in [0, pi/2], got {xi}")
    if family.kind is Kind.OCTONION:
        if not 0.0 <= ang <= math.pi:
            raise ValueError(f"eta must lie in [0, pi], got {ang}")
    elif not 0.0 <= ang < 2 * math.pi:
        raise ValueError(f"theta must lie in [0, 2 pi), got {ang}")
    return xi, ang


def _phi_arrays(family: GroupFamily, tau, a, b=None):
    """Vectorized zonal values and term magnitudes.

    ``a`` is ``x1`` (real) or ``cos xi``; ``b`` is ``theta`` (complex),
    ``cos theta`` (quaternionic) or ``cos eta`` (octonionic).
    """
    kind = family.kind
    if kind is Kind.REAL:
        return real_zonal(family.n, tau[0], a)
    p, q = tau
    if kind is Kind.COMPLEX:
        val, mag = complex_radial(family.n, p, q, a)
        phase = np.exp(1j * (p - q) * np.asarray(b, dtype=float))
        return val * phase, mag
    if kind is Kind.QUATERNION:
        val, mag = quaternion_radial(family.n, p, q, a)
        ch = sp1_character_cos(q, b)
        return val * ch, mag * np.abs(ch)
    (ev, em), (xv, xm) = octonion_parts(p, q, a, b)
    return ev * xv, em * xm


def phi_eval(family: GroupFamily, tau, pt) -> BoundedValue:
    """Zonal spherical function ``phi_tau`` at a point, with ``phi(H_0) = 1``.

    The quaternionic formula is divided by ``q + 1`` so that it takes the
    value 1 at the base point.
    """
    tau = check_ktype(family, tau)
    coords = _check_point(family, pt)
    if family.kind is Kind.REAL:
        val, mag = _phi_arrays(family, tau, np.array(coords[0]))
    else:
        xi, ang = coords
        second = {Kind.COMPLEX: ang}.get(family.kind, math.cos(ang))
        val, mag = _phi_arrays(family, tau, np.array(math.cos(xi)), np.array(second))
    val = val.item()
    deg = sum(tau) + 4
    return BoundedValue(val, 4 * deg * EPS * float(mag) + EPS * abs(val), RIGOROUS)


def fractional_dim_phi(n_eff, k: int, x: float) -> BoundedValue:
    """``phi_{k,0}^{n_eff}`` at ``|x| = x`` for real ``n_eff > 1``.

    Uses the Jacobi form ``j! / (2 n_eff - 2)_j P_j^{(2 n_eff - 3, 1)}(2x^2 - 1)``
    with Jacobi degree ``j = k / 2``.
    """
    n_eff = Fraction(n_eff)
    if n_eff <= 1:
        raise ValueError("n_eff must exceed 1")
    if k < 0 or k % 2:
        raise ValueError(f"(k, 0) needs k even and non-negative, got {k}")
    if not 0.0 <= x <= 1.0:
        raise ValueError("|x| must lie in [0, 1]")
    v = fractional_phi_values(n_eff, k, np.array(float(x))).item()
    j = k // 2
    return BoundedValue(v, 8 * (j + 1) * EPS * max(1.0, abs(v)), HEURISTIC)


def fractional_phi_values(n_eff, k: int, r):
    j = k // 2
    n_eff = Fraction(n_eff)
    pref = float(math.factorial(j) / pochhammer(2 * n_eff - 2, j))
    t = 2 * np.asarray(r, dtype=float) ** 2 - 1
    return pref * jacobi_values(j, float(2 * n_eff - 3), 1.0, t)


@dataclass(frozen=True)
class PolarWeight:
    """Unit-mass integration weight for zonal functions on the sphere.

    ``density`` is written in the polar coordinates named by ``coords``;
    ``rule(nodes)`` returns quadrature points in those coordinates and
    weights that integrate against the density.
    """

    family: GroupFamily
    coords: tuple[str, ...]
    bounds: tuple[tuple[float, float], ...]
    constant: float
    description: str
    density: Callable
    _rule: Callable

    def rule(self, nodes: int):
        return self._rule(nodes)


def _tensor(*axes):
    pts = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    wts = np.ones_like(pts[0])
    for i, a in enumerate(axes):
        shape = [1] * len(axes)
        shape[i] = -1
        wts = wts * np.asarray(a[1]).reshape(shape)
    return tuple(p.ravel() for p in pts), wts.ravel()


def polar_weight(family: GroupFamily) -> PolarWeight:
    kind, n = family.kind, family.n
    pi = math.pi
    if kind is Kind.REAL:
        a = (n - 3) / 2
        c = math.gamma(n / 2) / (math.sqrt(pi) * math.gamma((n - 1) / 2))

        def rule(N):
            x, w = gauss_jacobi(N, a, a)
            return (x,), c * w

        return PolarWeight(family, ("x1",), ((-1.0, 1.0),), c,
                           f"c (1 - x1^2)^({n}-3)/2 dx1",
                           lambda x: c * (1 - x * x) ** a, rule)

    if kind is Kind.COMPLEX:
        if n == 1:
            c = 1 / (2 * pi)

            def rule(N):
                th = 2 * pi * np.arange(2 * N + 1) / (2 * N + 1)
                return (np.ones_like(th), th), np.full(th.shape, 1 / (2 * N + 1))

            return PolarWeight(family, ("theta",), ((0.0, 2 * pi),), c, "c dtheta",
                               lambda th: c + 0 * th, rule)
        c = (n - 1) / pi

        def rule(N):
            t, w = gauss_jacobi(N, n - 2, 0.0)
            M = 2 * N + 1
            th = 2 * pi * np.arange(M) / M
            return _tensor((np.sqrt((1 + t) / 2), c * w * 2.0 ** -(n - 2) / 4),
                           (th, np.full(M, 2 * pi / M)))

        return PolarWeight(family, ("r", "theta"), ((0.0, 1.0), (0.0, 2 * pi)), c,
                           f"c (1 - r^2)^({n}-2) r dr dtheta",
                           lambda r, th: c * (1 - r * r) ** (n - 2) * r + 0 * th, rule)

    if kind is Kind.QUATERNION:
        def theta_axis(N):
            cth, w = gauss_jacobi(N, 0.5, 0.5)
            return np.arccos(cth), w

        if n == 1:
            c = 2 / pi

            def rule(N):
                th, w = theta_axis(N)
                return (np.ones_like(th), th), c * w

            return PolarWeight(family, ("theta",), ((0.0, pi),), c, "c sin^2 theta dtheta",
                               lambda th: c * np.sin(th) ** 2, rule)
        c = 4 * (2 * n - 2) * (2 * n - 1) / pi

        def rule(N):
            t, w = gauss_jacobi(N, 2 * n - 3, 1.0)
            return _tensor((np.sqrt((1 + t) / 2), c * w * 2.0 ** -(2 * n)),
                           theta_axis(N))

        return PolarWeight(family, ("r", "theta"), ((0.0, 1.0), (0.0, pi)), c,
                           f"c (1 - r^2)^(2*{n}-3) r^3 sin^2 theta dr dtheta",
                           lambda r, th: c * (1 - r * r) ** (2 * n - 3) * r ** 3 * np.sin(th) ** 2,
                           rule)

    c = 896 / pi

    def rule(N):
        s, w = gauss_jacobi(N, 3.0, 3.0)
        u, wu = gauss_jacobi(N, 2.5, 2.5)
        return _tensor((np.arccos(np.sqrt((1 + s) / 2)), c * w / 256),
                       (np.arccos(u), wu))

    return PolarWeight(family, ("xi", "eta"), ((0.0, pi / 2), (0.0, pi)), c,
                       "c cos^7 xi sin^7 xi sin^6 eta dxi deta",
                       lambda xi, eta: c * (np.cos(xi) * np.sin(xi)) ** 7 * np.sin(eta) ** 6,
                       rule)


def _rule_values(family: GroupFamily, tau, nodes: int):
    """Zonal values at the quadrature points of ``polar_weight(family)``."""
    pts, w = polar_weight(family).rule(nodes)
    kind = family.kind
    if kind is Kind.REAL:
        vals, _ = _phi_arrays(family, tau, pts[0])
    elif kind is Kind.COMPLEX:
        vals, _ = _phi_arrays(family, tau, pts[0], pts[1])
    else:
        vals, _ = _phi_arrays(family, tau, np.cos(pts[0]) if kind is Kind.OCTONION
                              else pts[0], np.cos(pts[1]))
    return vals, w


def default_nodes(tau) -> int:
    return sum(tau) + 3


def phi_inner(family: GroupFamily, tau1, tau2, nodes: int | None = None,
              tol: float = 1e-12) -> BoundedValue:
    """``int phi_tau1 conj(phi_tau2)`` against the unit-mass polar weight."""
    tau1, tau2 = check_ktype(family, tau1), check_ktype(family, tau2)
    if nodes is None:
        nodes = max(default_nodes(tau1), default_nodes(tau2))
    results = []
    for N in (nodes, 2 * nodes):
        v1, w = _rule_values(family, tau1, N)
        v2, _ = _rule_values(family, tau2, N)
        results.append(np.sum(w * v1 * np.conj(v2)))
    val = results[1]
    if abs(val.imag) < 1e-15 * max(1.0, abs(val)):
        val = val.real
    radius = float(abs(results[1] - results[0]))
    if radius > tol * max(1.0, abs(val)):
        warnings.warn(f"node doubling disagreement {radius:.3g} exceeds {tol:.3g}",
                      ConvergenceWarning, stacklevel=2)
    return BoundedValue(complex(val) if isinstance(val, complex) else float(val),
                        radius, HEURISTIC)


def phi_norm_sq_oracle(family: GroupFamily, tau, nodes: int | None = None,
                       tol: float = 1e-12) -> BoundedValue:
    """Quadrature value of ``||phi_tau||^2``; should equal ``1/dim W^tau``."""
    out = phi_inner(family, tau, tau, nodes, tol)
    return BoundedValue(float(np.real(out.value)), out.error_radius, HEURISTIC)
