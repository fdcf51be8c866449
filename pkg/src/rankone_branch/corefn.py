"""Scalar kernel: exact Pochhammer products, Gamma ratios, terminating 2F1,
Jacobi polynomials and Gauss-Jacobi quadrature.

Exact values are carried as :class:`fractions.Fraction`. Floating results
come back as :class:`BoundedValue`, a float with an error radius.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number, Rational

import numpy as np
from scipy.special import roots_jacobi

from .errors import ConvergenceWarning, PoleError

EPS = np.finfo(float).eps

RIGOROUS = "rigorous"
HEURISTIC = "heuristic"


@dataclass(frozen=True)
class BoundedValue:
    """A floating value with an absolute error radius.

    ``value`` may be complex (zonal functions of the complex family carry a
    phase).  ``exact`` holds the exact rational value when one is known.
    """

    value: float | complex
    error_radius: float = 0.0
    rigor: str = RIGOROUS
    exact: Fraction | None = None

    def __post_init__(self):
        r = float(self.error_radius)
        if math.isnan(r) or r < 0:
            raise ValueError(f"error radius must be non-negative, got {r}")
        if self.rigor not in (RIGOROUS, HEURISTIC):
            raise ValueError(f"unknown rigor flag {self.rigor!r}")

    @classmethod
    def from_exact(cls, x) -> "BoundedValue":
        x = Fraction(x)
        v = float(x)
        # one rounding of the exact value
        return cls(v, abs(v) * EPS / 2, RIGOROUS, x)

    @staticmethod
    def _coerce(other):
        if isinstance(other, BoundedValue):
            return other
        if isinstance(other, Rational):
            return BoundedValue.from_exact(other)
        if isinstance(other, Number):
            return BoundedValue(other, 0.0)
        return NotImplemented

    @staticmethod
    def _rigor(a, b):
        return RIGOROUS if a.rigor == b.rigor == RIGOROUS else HEURISTIC

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        exact = self.exact + other.exact if None not in (self.exact, other.exact) else None
        return BoundedValue(self.value + other.value,
                            self.error_radius + other.error_radius,
                            self._rigor(self, other), exact)

    __radd__ = __add__

    def __neg__(self):
        return BoundedValue(-self.value, self.error_radius, self.rigor,
                            None if self.exact is None else -self.exact)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ra, rb = self.error_radius, other.error_radius
        radius = abs(self.value) * rb + abs(other.value) * ra + ra * rb
        exact = self.exact * other.exact if None not in (self.exact, other.exact) else None
        return BoundedValue(self.value * other.value, radius,
                            self._rigor(self, other), exact)

    __rmul__ = __mul__

    def reciprocal(self) -> "BoundedValue":
        a, r = abs(self.value), self.error_radius
        if r >= a:
            raise ZeroDivisionError("interval contains zero")
        exact = None if self.exact is None else 1 / self.exact
        return BoundedValue(1 / self.value, r / (a * (a - r)), self.rigor, exact)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __float__(self):
        return float(self.value)

    def __complex__(self):
        return complex(self.value)

    def contains(self, x, slack: float = 0.0) -> bool:
        return abs(self.value - x) <= self.error_radius + slack


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An integer or half-integer, stored as twice its value."""

    twice_value: int

    @classmethod
    def of(cls, x) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        t = Fraction(x) * 2
        if t.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(t))

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __float__(self):
        return self.twice_value / 2

    def __str__(self):
        return str(self.to_fraction())


def _as_exact(x):
    """Fraction for exact inputs, None for floats."""
    if isinstance(x, HalfInteger):
        return x.to_fraction()
    if isinstance(x, Rational):
        return Fraction(x)
    return None


def _is_pole(x) -> bool:
    f = _as_exact(x)
    if f is not None:
        return f.denominator == 1 and f <= 0
    return float(x) <= 0 and float(x).is_integer()


def pochhammer(a, m: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+m-1)``, exactly."""
    if m < 0:
        raise ValueError("m must be non-negative")
    a = Fraction(a.to_fraction() if isinstance(a, HalfInteger) else a)
    out = Fraction(1)
    for j in range(m):
        out *= a + j
    return out


def _lgamma_signed(x: float):
    if x > 0:
        return math.lgamma(x), 1
    # Gamma alternates sign between consecutive negative integers
    return math.lgamma(x), (-1 if math.floor(-x) % 2 == 0 else 1)


def gamma_ratio(a, b) -> BoundedValue:
    """``Gamma(a) / Gamma(b)``.

    When ``a - b`` is an integer and both are exact, the ratio is a Pochhammer
    product and comes back exact.  Otherwise log-Gamma is used; ``math.lgamma``
    is accurate to a few ulp of its result, so the radius is taken as
    ``|r| * 8 eps * (1 + |lgamma a| + |lgamma b|)`` and labeled heuristic.
    """
    if _is_pole(a) or _is_pole(b):
        raise PoleError(f"Gamma pole at a={a} or b={b}")
    fa, fb = _as_exact(a), _as_exact(b)
    if fa is not None and fb is not None and (fa - fb).denominator == 1:
        d = int(fa - fb)
        r = pochhammer(fb, d) if d >= 0 else 1 / pochhammer(fa, -d)
        return BoundedValue.from_exact(r)
    la, sa = _lgamma_signed(float(a))
    lb, sb = _lgamma_signed(float(b))
    v = sa * sb * math.exp(la - lb)
    radius = abs(v) * 8 * EPS * (1 + abs(la) + abs(lb))
    return BoundedValue(v, radius, HEURISTIC)


@lru_cache(maxsize=4096)
def hyp2f1_coefficients(m: int, b: Fraction, c: Fraction) -> tuple[Fraction, ...]:
    """Exact coefficients of ``F(-m, b; c; x)`` as a polynomial in ``x``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    b, c = Fraction(b), Fraction(c)
    coeffs = [Fraction(1)]
    for j in range(m):
        if c + j == 0:
            raise PoleError(f"(c)_{j + 1} vanishes for c={c}")
        coeffs.append(coeffs[-1] * (j - m) * (b + j) / ((c + j) * (j + 1)))
    return tuple(coeffs)


def hyp2f1_terminating(m: int, b, c, x: float) -> BoundedValue:
    """Evaluate the terminating series ``F(-m, b; c; x)``.

    Coefficients are accumulated exactly; the float substitution uses Horner
    with the standard running-error bound.
    """
    coeffs = hyp2f1_coefficients(m, Fraction(b), Fraction(c))
    fl = [float(a) for a in coeffs]
    acc = 0.0
    for a in reversed(fl):
        acc = acc * x + a
    absx = abs(x)
    mag = sum(abs(a) * absx ** j for j, a in enumerate(fl))
    g = (2 * m + 2) * EPS
    return BoundedValue(acc, g / (1 - g) * mag, RIGOROUS)


def jacobi_values(k: int, alpha: float, beta: float, t):
    """Vectorized three-term recurrence for ``P_k^{(alpha, beta)}(t)``."""
    t = np.asarray(t, dtype=float)
    alpha, beta = float(alpha), float(beta)
    p_prev = np.ones_like(t)
    if k == 0:
        return p_prev
    p = (alpha + 1) + (alpha + beta + 2) * (t - 1) / 2
    for n in range(2, k + 1):
        s = 2 * n + alpha + beta
        a1 = 2 * n * (n + alpha + beta) * (s - 2)
        a2 = (s - 1) * (alpha * alpha - beta * beta)
        a3 = (s - 1) * s * (s - 2)
        a4 = 2 * (n + alpha - 1) * (n + beta - 1) * s
        p_prev, p = p, ((a2 + a3 * t) * p - a4 * p_prev) / a1
    return p


def jacobi_poly(k: int, alpha, beta, t: float) -> BoundedValue:
    """Jacobi polynomial ``P_k^{(alpha, beta)}(t)`` by recurrence."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    if float(alpha) <= -1 or float(beta) <= -1:
        raise ValueError("alpha and beta must exceed -1")
    v = float(jacobi_values(k, alpha, beta, t))
    # recurrence is forward stable on [-1, 1]; scale by the endpoint bound
    scale = max(abs(v), float(jacobi_values(k, alpha, beta, 1.0)),
                abs(float(jacobi_values(k, alpha, beta, -1.0))))
    return BoundedValue(v, 4 * (k + 1) * EPS * scale, HEURISTIC)


@lru_cache(maxsize=256)
def gauss_jacobi(nodes: int, alpha: float, beta: float):
    """Gauss-Jacobi nodes and weights on [-1, 1]."""
    x, w = roots_jacobi(nodes, alpha, beta)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _apply(f, x):
    try:
        y = np.asarray(f(x))
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([f(xi) for xi in x])


def quad_weighted(alpha, beta, f, nodes: int, tol: float = 1e-12) -> BoundedValue:
    """``int_{-1}^{1} (1-t)^alpha (1+t)^beta f(t) dt`` by Gauss-Jacobi.

    The error radius is the disagreement with a rule of twice as many
    nodes (heuristic); exact for polynomial ``f`` of degree < 2 nodes.
    """
    alpha, beta = float(alpha), float(beta)
    if alpha <= -1 or beta <= -1:
        raise ValueError("alpha and beta must exceed -1")
    if nodes < 1:
        raise ValueError("need at least one node")
    x1, w1 = gauss_jacobi(nodes, alpha, beta)
    x2, w2 = gauss_jacobi(2 * nodes, alpha, beta)
    v1 = np.dot(w1, _apply(f, x1))
    v2 = np.dot(w2, _apply(f, x2))
    radius = abs(v2 - v1)
    if radius > tol * max(1.0, abs(v2)):
        warnings.warn(f"node doubling disagreement {radius:.3g} exceeds {tol:.3g}",
                      ConvergenceWarning, stacklevel=2)
    return BoundedValue(v2.item(), float(radius), HEURISTIC)


def jacobi_norm_sq(k: int, alpha: float, beta: float) -> float:
    """Classical squared norm of ``P_k^{(alpha, beta)}`` against its weight."""
    lg = math.lgamma
    log_h = ((alpha + beta + 1) * math.log(2) + lg(k + alpha + 1) + lg(k + beta + 1)
             - lg(k + 1))
    if k == 0:
        # (a+b+1) Gamma(a+b+1) = Gamma(a+b+2), regular at a+b = -1
        return math.exp(log_h - lg(alpha + beta + 2))
    return math.exp(log_h - lg(k + alpha + beta + 1)) / (2 * k + alpha + beta + 1)
