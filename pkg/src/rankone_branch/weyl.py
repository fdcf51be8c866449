"""Weyl dimension formula for classical root systems.

Weights are stored as twice their e-coordinates so that half-integral
weights keep integer inner products.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .corefn import BoundedValue, pochhammer
from .errors import DominanceError
from .families import GroupFamily, Kind, check_ktype, check_ltype


@dataclass(frozen=True)
class RootSystem:
    type: str
    rank: int

    def __post_init__(self):
        if self.type not in ("A", "B", "C", "D"):
            raise ValueError(f"unsupported root system type {self.type!r}")
        if self.rank < 1:
            raise ValueError("rank must be positive")

    @property
    def ambient_dim(self) -> int:
        # A_r lives in the trace-free part of R^{r+1}
        return self.rank + 1 if self.type == "A" else self.rank


def _unit(i, dim, sign=1):
    v = [0] * dim
    v[i] = sign
    return v


@lru_cache(maxsize=None)
def positive_roots(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    d = rs.ambient_dim
    roots = []
    for i in range(d):
        for j in range(i + 1, d):
            minus = [0] * d
            minus[i], minus[j] = 1, -1
            roots.append(minus)
            if rs.type != "A":
                plus = [0] * d
                plus[i], plus[j] = 1, 1
                roots.append(plus)
    if rs.type == "B":
        roots += [_unit(i, d) for i in range(d)]
    elif rs.type == "C":
        roots += [_unit(i, d, 2) for i in range(d)]
    return tuple(tuple(r) for r in roots)


@lru_cache(maxsize=None)
def simple_roots(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    d = rs.ambient_dim
    roots = []
    for i in range(d - 1):
        v = [0] * d
        v[i], v[i + 1] = 1, -1
        roots.append(v)
    if rs.type == "B":
        roots.append(_unit(d - 1, d))
    elif rs.type == "C":
        roots.append(_unit(d - 1, d, 2))
    elif rs.type == "D":
        if d == 1:
            raise ValueError("D_1 has no roots")
        v = [0] * d
        v[d - 2], v[d - 1] = 1, 1
        roots.append(v)
    return tuple(tuple(r) for r in roots)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


@lru_cache(maxsize=None)
def _twice_rho(rs: RootSystem):
    roots = positive_roots(rs)
    return tuple(sum(col) for col in zip(*roots)) if roots else (0,) * rs.ambient_dim


def _twice(coords):
    out = []
    for c in coords:
        t = Fraction(c) * 2
        if t.denominator != 1:
            raise DominanceError(f"coordinate {c} is not a half-integer")
        out.append(int(t))
    return tuple(out)


def check_dominant(rs: RootSystem, hw) -> tuple[int, ...]:
    """Return twice the weight; raise unless dominant and integral."""
    lam2 = _twice(hw)
    if len(lam2) != rs.ambient_dim:
        raise DominanceError(f"{rs.type}{rs.rank} weights have {rs.ambient_dim} coordinates")
    for alpha in simple_roots(rs):
        num, den = _dot(lam2, alpha), _dot(alpha, alpha)
        # <2 lam, alpha> / <alpha, alpha> = <lam, alpha^vee>
        if num < 0 or num % den:
            raise DominanceError(f"weight {tuple(hw)} fails <lam, alpha^vee> in Z>=0 "
                                 f"for simple root {alpha}")
    return lam2


def weyl_dim(rs: RootSystem, hw) -> int:
    """``prod_{alpha > 0} <lam + rho, alpha> / <rho, alpha>`` exactly."""
    lam2 = check_dominant(rs, hw)
    rho2 = _twice_rho(rs)
    shifted = tuple(a + b for a, b in zip(lam2, rho2))
    num = den = 1
    for alpha in positive_roots(rs):
        num *= _dot(shifted, alpha)
        den *= _dot(rho2, alpha)
    d = Fraction(num, den)
    assert d.denominator == 1 and d > 0
    return int(d)


def harmonic_dim(n: int, p: int) -> int:
    """Spherical harmonics of degree p on R^n."""
    if p < 0:
        return 0
    return comb(n + p - 1, p) - (comb(n + p - 3, p - 2) if p >= 2 else 0)


def so_weight(n: int, weight) -> tuple[RootSystem, tuple]:
    """Root system of SO(n) and the weight padded to its rank."""
    r = n // 2
    rs = RootSystem("B" if n % 2 else "D", r)
    w = tuple(weight) + (0,) * (r - len(weight))
    return rs, w


def _unitary_dim(n: int, p: int, q: int) -> int:
    """U(n) on bidegree (p, q) harmonics; U(1) types are one-dimensional."""
    if n == 1:
        return 1
    weight = (p,) + (0,) * (n - 2) + (-q,)
    return weyl_dim(RootSystem("A", n - 1), weight)


def _symplectic_dim(n: int, p: int, q: int) -> int:
    """Sp(n) x Sp(1) on the type (q lam_1 + (p-q)/2 lam_2, q)."""
    if n == 1:
        return (q + 1) * (q + 1)
    # lam_1 = e_1, lam_2 = e_1 + e_2
    weight = (Fraction(p + q, 2), Fraction(p - q, 2)) + (0,) * (n - 2)
    return weyl_dim(RootSystem("C", n), weight) * (q + 1)


def octonion_weight(p: int, q: int) -> tuple:
    return (Fraction(p, 2), Fraction(q, 2), Fraction(q, 2), Fraction(q, 2))


def ktype_dim(family: GroupFamily, tau) -> int:
    """Dimension of the K-type ``W^tau``."""
    tau = check_ktype(family, tau)
    kind = family.kind
    if kind is Kind.REAL:
        return harmonic_dim(family.n, tau[0])
    p, q = tau
    if kind is Kind.COMPLEX:
        return _unitary_dim(family.n, p, q)
    if kind is Kind.QUATERNION:
        return _symplectic_dim(family.n, p, q)
    return weyl_dim(RootSystem("B", 4), octonion_weight(p, q))


def ltype_dim(family: GroupFamily, sigma) -> int:
    """Dimension of the L-type ``V^sigma`` of the subgroup."""
    sigma = check_ltype(family, sigma)
    if family.kind is Kind.OCTONION:
        # degree-q harmonics on S^7; equal by triality to the D4 weight (q/2)(1,1,1,1)
        return harmonic_dim(8, sigma[0])
    return ktype_dim(family.subgroup(), sigma)


def octonion_ltype_dim_closed(q: int) -> Fraction:
    """``(q+3)(q+1)_5 / 360``, the normalized product formula for dim V^q."""
    return (q + 3) * pochhammer(q + 1, 5) / 360


def _printed_spin9_product(p: int, q: int) -> Fraction:
    out = Fraction(p + 7)
    for j in range(3):
        out *= (p + q + 8 + 2 * j) * (p - q + 2 + 2 * j) * (q + 4 + 2 * j) * (q + 1 + 2 * j)
    return out


def printed_dim_ratio(family: GroupFamily, tau) -> BoundedValue:
    """Printed Spin(9) dimension product (normalized at (0,0)) over the Weyl value."""
    if family.kind is not Kind.OCTONION:
        raise ValueError("the printed product exists only for the octonionic family")
    p, q = check_ktype(family, tau)
    printed = _printed_spin9_product(p, q) / _printed_spin9_product(0, 0)
    return BoundedValue.from_exact(printed / ktype_dim(family, (p, q)))
