"""Unitarity constants of the spherical complementary series and of the
unitarizable quotients at reducible integer points.

``lambda_nu(tau)`` is the factor by which the invariant norm rescales the
L^2 norm on the K-type ``W^tau``.  All values are Pochhammer ratios; they
are exact for rational ``nu``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy.special import gammaln

from .corefn import EPS, HEURISTIC, BoundedValue, gamma_ratio, pochhammer
from .errors import KernelError, PoleError, RegimeError
from .families import GroupFamily, Kind, check_ktype, check_ltype

COMPLEMENTARY = "complementary"
QUOTIENT = "quotient"
OTHER = "principal-other"

# the three k = 0 quotients of the complex family
COMPLEX_ZERO_VARIANTS = ("+", "-", "0")


def rho(family: GroupFamily) -> Fraction:
    kind, n = family.kind, family.n
    if kind is Kind.REAL:
        return Fraction(n - 1, 2)
    if kind is Kind.COMPLEX:
        return Fraction(n)
    if kind is Kind.QUATERNION:
        return Fraction(2 * n + 1)
    return Fraction(11)


def complementary_range(family: GroupFamily) -> tuple[Fraction, Fraction]:
    """Open interval of ``nu`` carrying a complementary series."""
    kind, n = family.kind, family.n
    if kind is Kind.REAL:
        return Fraction(0), Fraction(n - 1)
    if kind is Kind.COMPLEX:
        return Fraction(0), Fraction(2 * n)
    if kind is Kind.QUATERNION:
        return Fraction(2), Fraction(4 * n)
    return Fraction(6), Fraction(16)


def discrete_component_range(family: GroupFamily) -> tuple[Fraction, Fraction]:
    """Open interval of ``nu`` where the subgroup series is a discrete component."""
    kind, n = family.kind, family.n
    if kind is Kind.REAL:
        return Fraction(0), Fraction(n - 2, 2)
    if kind is Kind.COMPLEX:
        return Fraction(0), Fraction(n - 2)
    if kind is Kind.QUATERNION:
        return Fraction(2), Fraction(2 * n - 1)
    return Fraction(6), Fraction(7)


def subgroup_nu(family: GroupFamily, nu):
    """Parameter of the subgroup series reached by restriction."""
    return nu / 2 if family.kind is Kind.OCTONION else nu


def _as_number(nu):
    if isinstance(nu, NuParameter):
        return nu.value
    if isinstance(nu, (Rational, str)):
        return Fraction(nu)
    return float(nu)


def quotient_nu(family: GroupFamily, k: int) -> Fraction:
    """Reducible point ``nu(k)``: ``-k`` (real) or ``-2k`` (complex, quaternionic)."""
    kind = family.kind
    if kind is Kind.REAL:
        if k < 0:
            raise RegimeError("real quotients need k >= 0")
        return Fraction(-k)
    if kind is Kind.COMPLEX:
        if k < 0:
            raise RegimeError("complex quotients need k >= 0")
        return Fraction(-2 * k)
    if kind is Kind.QUATERNION:
        if k < -1:
            raise RegimeError("quaternionic quotients need k >= -1")
        return Fraction(-2 * k)
    raise RegimeError("no quotient regime is implemented for the octonionic family")


@dataclass(frozen=True)
class NuParameter:
    """A value of ``nu`` together with its regime.

    ``k`` is set for the quotient regime; ``variant`` selects one of the
    three complex ``k = 0`` quotients (``"+"``, ``"-"`` or ``"0"``).
    """

    value: Fraction | float
    regime: str = COMPLEMENTARY
    k: int | None = None
    variant: str | None = None

    @classmethod
    def complementary(cls, family: GroupFamily, nu) -> "NuParameter":
        v = _as_number(nu)
        lo, hi = complementary_range(family)
        if not lo < v < hi:
            raise RegimeError(f"nu = {v} lies outside the complementary range "
                              f"({lo}, {hi}) of {family}")
        return cls(v, COMPLEMENTARY)

    @classmethod
    def quotient(cls, family: GroupFamily, k: int, variant: str | None = None) -> "NuParameter":
        if family.kind is Kind.COMPLEX and k == 0:
            if variant not in COMPLEX_ZERO_VARIANTS:
                raise RegimeError("complex k = 0 needs a variant among '+', '-', '0'")
        elif variant is not None:
            raise RegimeError("variants exist only for the complex family at k = 0")
        return cls(quotient_nu(family, k), QUOTIENT, k, variant)

    @classmethod
    def infer(cls, family: GroupFamily, nu) -> "NuParameter":
        """Complementary if inside the range, else a quotient point if one matches."""
        v = _as_number(nu)
        lo, hi = complementary_range(family)
        if lo < v < hi:
            return cls(v, COMPLEMENTARY)
        if family.kind is not Kind.OCTONION and float(v).is_integer():
            iv = int(v)
            if family.kind is Kind.REAL and iv <= 0:
                return cls.quotient(family, -iv)
            if family.kind is Kind.COMPLEX and iv < 0 and iv % 2 == 0:
                return cls.quotient(family, -iv // 2)
            if family.kind is Kind.QUATERNION and iv <= 2 and iv % 2 == 0:
                return cls.quotient(family, -iv // 2)
        raise RegimeError(f"nu = {v} is in no unitary regime of {family}")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def describe(self) -> str:
        if self.regime == QUOTIENT:
            return f"quotient:{self.k}{self.variant or ''}"
        return self.regime


def _ratio_factors(family: GroupFamily, nu, tau):
    """``[(A, B, m), ...]`` with ``lambda = prod (A)_m / (B)_m``."""
    kind, n = family.kind, family.n
    if kind is Kind.REAL:
        return [(n - 1 - nu, nu, tau[0])]
    p, q = tau
    if kind is Kind.COMPLEX:
        a, b = n - nu / 2, nu / 2
        return [(a, b, p), (a, b, q)]
    if kind is Kind.QUATERNION:
        return [(2 * n - nu / 2, nu / 2 - 1, (p - q) // 2),
                (2 * n + 1 - nu / 2, nu / 2, (p + q) // 2)]
    return [(8 - nu / 2, nu / 2 - 3, (p - q) // 2),
            (11 - nu / 2, nu / 2, (p + q) // 2)]


def _float_pochhammer(a: float, m: int) -> BoundedValue:
    v = 1.0
    for j in range(m):
        v *= a + j
    # m roundings of relative size eps/2 each, plus the rounding of a itself
    return BoundedValue(v, abs(v) * (m + 1) * EPS, HEURISTIC)


def _poch_ratio(factors):
    exact = all(isinstance(x, Fraction) for a, b, _ in factors for x in (a, b))
    if exact:
        out = Fraction(1)
        for a, b, m in factors:
            den = pochhammer(b, m)
            if den == 0:
                raise PoleError(f"({b})_{m} vanishes")
            out *= pochhammer(a, m) / den
        return out
    out = BoundedValue(1.0, 0.0, HEURISTIC)
    for a, b, m in factors:
        den = _float_pochhammer(float(b), m)
        if den.value == 0:
            raise PoleError(f"({b})_{m} vanishes")
        out = out * _float_pochhammer(float(a), m) / den
    return out


def lambda_nu(family: GroupFamily, nu, tau):
    """Complementary-series constant ``lambda_nu(tau)`` as a Pochhammer ratio.

    Exact (``Fraction``) for rational ``nu``, a ``BoundedValue`` for float
    ``nu``.  No range check is made so that values outside the range can be
    inspected; use :class:`NuParameter` to enforce one.
    """
    if isinstance(nu, NuParameter) and nu.regime == QUOTIENT:
        return quotient_lambda(family, nu.k, tau, nu.variant)
    tau = check_ktype(family, tau)
    return _poch_ratio(_ratio_factors(family, _as_number(nu), tau))


def lambda_nu_gamma_form(family: GroupFamily, nu, tau) -> BoundedValue:
    """The same constants written as Gamma quotients, evaluated by log-Gamma."""
    tau = check_ktype(family, tau)
    out = BoundedValue(1.0, 0.0, HEURISTIC)
    for a, b, m in _ratio_factors(family, _as_number(nu), tau):
        out = out * gamma_ratio(a + m, a) / gamma_ratio(b + m, b)
    return out


def in_quotient_kernel(family: GroupFamily, k: int, tau, variant: str | None = None) -> bool:
    """Membership of ``W^tau`` in the kernel ``M_nu`` at the point ``nu(k)``."""
    tau = check_ktype(family, tau)
    kind = family.kind
    if kind is Kind.REAL:
        return tau[0] <= k
    p, q = tau
    if kind is Kind.COMPLEX:
        if k == 0 and variant == "+":
            return q > 0 or p == 0
        if k == 0 and variant == "-":
            return p > 0 or q == 0
        return p <= k or q <= k
    if kind is Kind.QUATERNION:
        if k == -1:
            return tau == (0, 0)
        return p - q <= 2 * k + 2
    raise RegimeError("no quotient regime is implemented for the octonionic family")


def _quotient_factors(family: GroupFamily, k: int, tau):
    """Shifted Pochhammer factors: ``(A + m0)_{m - m0} / (B + m0)_{m - m0}``.

    The real and complex factors start at ``m0 = k + 1``.  The quaternionic
    first factor starts at ``k + 2``, the first index outside the kernel,
    which keeps ``B + m0`` away from zero.
    """
    nu = quotient_nu(family, k)
    factors = _ratio_factors(family, nu, tau)
    if family.kind is Kind.QUATERNION:
        starts = [k + 2, k + 1]
    else:
        starts = [k + 1] * len(factors)
    return [(a + m0, b + m0, m - m0) for (a, b, m), m0 in zip(factors, starts)]


def quotient_lambda(family: GroupFamily, k: int, tau, variant: str | None = None):
    """Constant of the unitarizable quotient at ``nu(k)``, exactly.

    Raises :class:`KernelError` for K-types in the kernel.  The complex
    ``k = 0`` variants use their own tables: ``Gamma(p) / Gamma(n + p)`` for
    ``"+"`` (and ``q`` for ``"-"``) and
    ``Gamma(n + p - 1) Gamma(n + q - 1) / (Gamma(p) Gamma(q))`` for ``"0"``.
    For quaternionic ``k = -1`` the first factor's denominator vanishes once
    ``p > q``, and a :class:`PoleError` is raised.
    """
    tau = check_ktype(family, tau)
    if family.kind is Kind.COMPLEX and k == 0 and variant not in COMPLEX_ZERO_VARIANTS:
        raise RegimeError("complex k = 0 needs a variant among '+', '-', '0'")
    if in_quotient_kernel(family, k, tau, variant):
        raise KernelError(f"{tau} lies in the kernel at k = {k}")
    if family.kind is Kind.COMPLEX and k == 0:
        n = family.n
        p, q = tau
        if variant == "+":
            return Fraction(1) / pochhammer(p, n)
        if variant == "-":
            return Fraction(1) / pochhammer(q, n)
        return pochhammer(p, n - 1) * pochhammer(q, n - 1)
    if family.kind is Kind.QUATERNION and k == -1:
        p, q = tau
        if p > q:
            raise PoleError(f"(0)_{(p - q) // 2} vanishes in the first factor at k = -1")
        return _poch_ratio([f for f in _ratio_factors(family, Fraction(2), tau)[1:]])
    factors = _quotient_factors(family, k, tau)
    if any(m < 0 for _, _, m in factors):
        raise KernelError(f"{tau} lies below the first surviving layer at k = {k}")
    return _poch_ratio(factors)


def lambda_flat(family: GroupFamily, nu: NuParameter, sigma):
    """Constant of the subgroup series on the L-type ``sigma``.

    Complementary: the subgroup constant at the same ``nu`` (``nu / 2`` for
    the octonionic family, whose subgroup is real with ``n = 8``).
    Quotient: the subgroup quotient constant at the same ``k``.
    """
    sigma = check_ltype(family, sigma)
    sub = family.subgroup()
    if nu.regime == QUOTIENT:
        return quotient_lambda(sub, nu.k, sigma, nu.variant)
    return lambda_nu(sub, subgroup_nu(family, nu.value), sigma)


def log_lambda_line(family: GroupFamily, nu: NuParameter, p, q) -> np.ndarray:
    """Vectorized ``log lambda`` on K-types ``(p, q)``; ``nan`` in the kernel.

    Uses log-Gamma in floating point, so it serves the long criterion sums
    rather than exact audits.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    kind, n = family.kind, family.n
    if nu.regime == QUOTIENT and kind is Kind.COMPLEX and nu.k == 0:
        if nu.variant == "+":
            out = gammaln(np.maximum(p, 1)) - gammaln(n + p)
            return np.where((q == 0) & (p > 0), out, np.nan)
        if nu.variant == "-":
            out = gammaln(np.maximum(q, 1)) - gammaln(n + q)
            return np.where((p == 0) & (q > 0), out, np.nan)
        out = (gammaln(n + p - 1) + gammaln(n + q - 1)
               - gammaln(np.maximum(p, 1)) - gammaln(np.maximum(q, 1)))
        return np.where((p > 0) & (q > 0), out, np.nan)
    v = float(nu.value)
    if kind is Kind.REAL:
        ms = [p]
    elif kind is Kind.COMPLEX:
        ms = [p, q]
    else:
        ms = [(p - q) / 2, (p + q) / 2]
    tau0 = (0,) if kind is Kind.REAL else (0, 0)
    facs = _ratio_factors(family, v, tau0)
    if nu.regime == QUOTIENT:
        k = nu.k
        starts = [k + 2, k + 1] if kind is Kind.QUATERNION else [k + 1] * len(ms)
    else:
        starts = [0] * len(ms)
    out = np.zeros_like(p)
    bad = np.zeros(p.shape, dtype=bool)
    for (a, b, _), m, m0 in zip(facs, ms, starts):
        cnt = m - m0
        bad |= cnt < 0
        cnt = np.maximum(cnt, 0)
        a0, b0 = a + m0, b + m0
        out = out + gammaln(a0 + cnt) - gammaln(a0) - gammaln(b0 + cnt) + gammaln(b0)
    if nu.regime == QUOTIENT:
        if kind is Kind.REAL:
            bad |= p <= nu.k
        elif kind is Kind.COMPLEX:
            bad |= (p <= nu.k) | (q <= nu.k)
        else:
            bad |= (p - q) <= 2 * nu.k + 2
    return np.where(bad, np.nan, out)


def positivity_witness(family: GroupFamily, nu, lead_max: int):
    """First K-type with ``lambda_nu <= 0`` up to ``lead_max``, or ``None``."""
    kind = family.kind
    for p in range(lead_max + 1):
        if kind is Kind.REAL:
            taus = [(p,)]
        elif kind is Kind.COMPLEX:
            taus = [(p, q) for q in range(p + 1)] + [(q, p) for q in range(p)]
        else:
            taus = [(p, q) for q in range(p % 2, p + 1, 2)]
        for tau in taus:
            if family.kind is Kind.QUATERNION and family.n == 1 and tau[0] != tau[1]:
                continue
            try:
                lam = lambda_nu(family, nu, tau)
            except PoleError:
                return tau
            if float(lam) <= 0:
                return tau
    return None


def lambda_ratio_limit(family: GroupFamily, k: int, tau, tau0, eps: Fraction) -> Fraction:
    """``lambda_{nu(k) + eps}(tau) / lambda_{nu(k) + eps}(tau0)`` exactly."""
    nu = quotient_nu(family, k) + eps
    return lambda_nu(family, nu, tau) / lambda_nu(family, nu, tau0)


def parse_regime(family: GroupFamily, text: str) -> NuParameter:
    """``complementary`` is resolved later; ``quotient:K`` with an optional
    ``+`` or ``-`` suffix for the complex ``k = 0`` quotients."""
    if not text.startswith("quotient:"):
        raise RegimeError(f"unknown regime {text!r}")
    body = text.split(":", 1)[1]
    variant = None
    if body and body[-1] in "+-" and body[:-1].lstrip("-").isdigit():
        body, variant = body[:-1], body[-1]
    try:
        k = int(body)
    except ValueError:
        raise RegimeError(f"cannot read k from {text!r}") from None
    if family.kind is Kind.COMPLEX and k == 0 and variant is None:
        variant = "0"
    return NuParameter.quotient(family, k, variant)


def resolve_regime(family: GroupFamily, nu, regime: str | None = None,
                   need_subgroup: bool = True) -> NuParameter:
    """Regime of ``nu`` for ``family``, checked on the subgroup as well.

    Raises :class:`RegimeError` when ``nu`` is not unitary for the group or,
    with ``need_subgroup``, when the subgroup parameter is not.
    """
    if regime is None:
        par = NuParameter.infer(family, nu)
    elif regime == COMPLEMENTARY:
        par = NuParameter.complementary(family, nu)
    else:
        par = parse_regime(family, regime)
        if nu is not None and _as_number(nu) != par.value:
            raise RegimeError(f"nu = {nu} does not match the reducible point "
                              f"{par.value} of {regime}")
    if need_subgroup and par.regime == COMPLEMENTARY:
        sub = family.subgroup()
        mu = subgroup_nu(family, par.value)
        lo, hi = complementary_range(sub)
        if not lo < mu < hi:
            raise RegimeError(f"subgroup parameter {mu} lies outside the complementary "
                              f"range ({lo}, {hi}) of {sub}")
    return par
