"""Invariant suites run by ``rankone-branch verify`` and by the tests.

Each check reports the measured deviation next to its tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special

from .branching import (branch_pairs, restriction_norm_sq_closed,
                        restriction_norm_sq_oracle)
from .corefn import jacobi_norm_sq, jacobi_values, quad_weighted
from .criterion import lemma35_check
from .families import GroupFamily, Kind
from .spherical import fractional_phi_values, phi_norm_sq_oracle, quaternion_radial, real_zonal
from .weyl import (RootSystem, harmonic_dim, ktype_dim, ltype_dim,
                   octonion_ltype_dim_closed, so_weight, weyl_dim)

SUITES = ("schur", "gegenbauer", "jacobi", "ratio", "lemma35", "dims")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    measured: float
    tolerance: float
    passed: bool


def _check(suite, name, measured, tol, passed=None):
    measured = float(measured)
    if passed is None:
        passed = measured <= tol
    return Check(suite, name, measured, float(tol), bool(passed))


def schur_types(family: GroupFamily, bound: int):
    """Valid K-types with both indices at most ``bound``."""
    if family.kind is Kind.REAL:
        return [(p,) for p in range(bound + 1)]
    out = []
    for p in range(bound + 1):
        for q in range(bound + 1):
            try:
                ktype_dim(family, (p, q))
            except ValueError:
                continue
            out.append((p, q))
    return out


SCHUR_GRID = (
    [(GroupFamily(Kind.REAL, n), 15) for n in range(3, 7)]
    + [(GroupFamily(Kind.COMPLEX, n), 8) for n in (2, 3, 4)]
    + [(GroupFamily(Kind.QUATERNION, n), 10) for n in (1, 2, 3)]
    + [(GroupFamily(Kind.OCTONION), 8)]
)


def schur_deviation(family: GroupFamily, bound: int) -> tuple[float, int]:
    """Largest ``| ||phi||^2 dim - 1 |`` over the K-types of the grid."""
    worst, count = 0.0, 0
    for tau in schur_types(family, bound):
        v = phi_norm_sq_oracle(family, tau).value * ktype_dim(family, tau)
        worst = max(worst, abs(v - 1))
        count += 1
    return worst, count


def suite_schur(grid=SCHUR_GRID, tol=1e-9):
    out = []
    for fam, bound in grid:
        dev, count = schur_deviation(fam, bound)
        out.append(_check("schur", f"{fam} indices<={bound} ({count} types)", dev, tol))
    return out


def gegenbauer_deviation(n: int, p_max: int, grid=None) -> float:
    t = np.linspace(-1, 1, 41) if grid is None else grid
    lam = (n - 2) / 2
    worst = 0.0
    for p in range(p_max + 1):
        if lam == 0:
            ref = special.eval_chebyt(p, t)
        else:
            ref = special.eval_gegenbauer(p, lam, t) / special.eval_gegenbauer(p, lam, 1.0)
        worst = max(worst, float(np.max(np.abs(real_zonal(n, p, t)[0] - ref))))
    return worst


def jacobi_identity_deviation(n: int, k_max: int, grid=None) -> float:
    r = np.linspace(0, 1, 41) if grid is None else grid
    worst = 0.0
    for k in range(0, k_max + 1, 2):
        a = quaternion_radial(n, k, 0, r)[0]
        b = fractional_phi_values(n, k, r)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst


def suite_gegenbauer(tol=1e-12):
    out = [_check("gegenbauer", f"real phi vs Gegenbauer n={n} p<=20",
                  gegenbauer_deviation(n, 20), tol) for n in range(2, 9)]
    out += [_check("gegenbauer", f"quaternionic phi_(k,0) vs Jacobi n={n} k<=20",
                   jacobi_identity_deviation(n, 20), tol) for n in range(2, 7)]
    return out


def suite_jacobi(tol=1e-10):
    out = []
    params = [0.0, 1.0, 2.0, 5.0]
    for a in params:
        for b in params:
            worst = 0.0
            for k in range(31):
                v = quad_weighted(a, b, lambda t: jacobi_values(k, a, b, t) ** 2, k + 2)
                worst = max(worst, abs(v.value / jacobi_norm_sq(k, a, b) - 1))
            out.append(_check("jacobi", f"squared norm alpha={a} beta={b} k<=30", worst, tol))
    t = np.linspace(-1, 1, 51)
    worst = 0.0
    for k in range(51):
        worst = max(worst, float(np.max(np.abs(jacobi_values(k, 1.5, 0.5, t)
                                               - special.eval_jacobi(k, 1.5, 0.5, t))
                                        / np.maximum(1, special.binom(k + 1.5, k)))))
    out.append(_check("jacobi", "recurrence vs scipy k<=50", worst, 1e-12))
    worst = 0.0
    for j in range(8):
        for k in range(j):
            v = quad_weighted(1, 2, lambda t: jacobi_values(j, 1, 2, t) * jacobi_values(k, 1, 2, t), 8)
            worst = max(worst, abs(v.value))
    out.append(_check("jacobi", "orthogonality alpha=1 beta=2", worst, 1e-12))
    return out


RATIO_GRID = (
    [GroupFamily(Kind.REAL, n) for n in range(3, 7)]
    + [GroupFamily(Kind.COMPLEX, n) for n in (2, 3, 4)]
    + [GroupFamily(Kind.QUATERNION, n) for n in (2, 3)]
    + [GroupFamily(Kind.OCTONION)]
)


def closed_oracle_ratios(family: GroupFamily, p_max: int) -> np.ndarray:
    ratios = []
    for bp in branch_pairs(family, p_max):
        c = restriction_norm_sq_closed(family, bp.tau, bp.sigma).value
        o = restriction_norm_sq_oracle(family, bp.tau, bp.sigma).value
        ratios.append(c / o)
    return np.array(ratios)


def suite_ratio(grid=RATIO_GRID, p_max=25, tol=1e-7):
    out = []
    for fam in grid:
        r = closed_oracle_ratios(fam, p_max)
        spread = (r.max() - r.min()) / r.min()
        out.append(_check("ratio", f"{fam} closed/oracle constant {r.mean():.12g} "
                          f"({r.size} pairs)", spread, tol))
        if fam.kind is Kind.COMPLEX:
            out.append(_check("ratio", f"{fam} constant equals n-1",
                              np.max(np.abs(r / (fam.n - 1) - 1)), 1e-9))
    return out


SUMMATION_VALID = ((0.5, 1.0), (0.75, 0.75), (0.25, 1.0))
SUMMATION_GAMMAS = (1.5, 2.0, 3.0)


def suite_lemma35(q_max=1000):
    out = []
    for a, b in SUMMATION_VALID:
        for g in SUMMATION_GAMMAS:
            rep = lemma35_check(a, b, g, q_max)
            out.append(_check("lemma35", f"alpha={a} beta={b} gamma={g} sup "
                              f"{rep.first_sup:.6g}, {rep.second_sup:.6g}",
                              0.0 if rep.stabilized else 1.0, 0.0, rep.stabilized))
    rep = lemma35_check(0.5, 0.25, 2.0, q_max)
    out.append(_check("lemma35", "alpha=0.5 beta=0.25 does not stabilize",
                      0.0 if not rep.first_stabilized else 1.0, 0.0, not rep.first_stabilized))
    q = np.arange(q_max + 1)
    for g in SUMMATION_GAMMAS:
        rep = lemma35_check(0.5, 1.0, g, q_max)
        ref = (q + 1) ** (g - 1) * special.zeta(g, q + 1)
        out.append(_check("lemma35", f"second sum vs Hurwitz zeta gamma={g}",
                          np.max(np.abs(rep.second_values / ref - 1)), 1e-8))
    return out


def suite_dims():
    out = []
    worst = 0
    for n in range(3, 11):
        for p in range(31):
            rs, w = so_weight(n, (p,))
            worst = max(worst, abs(weyl_dim(rs, w) - harmonic_dim(n, p)))
    out.append(_check("dims", "harmonic binomial = Weyl for n in 3..10, p<=30", worst, 0))
    d4 = RootSystem("D", 4)
    worst = 0
    for q in range(21):
        half = Fraction(q, 2)
        a = weyl_dim(d4, (q, 0, 0, 0))
        b = weyl_dim(d4, (half,) * 4)
        c = ltype_dim(GroupFamily(Kind.OCTONION), (q,))
        d = octonion_ltype_dim_closed(q)
        worst = max(worst, abs(a - b), abs(a - c), abs(a - d))
    out.append(_check("dims", "triality q e1 ~ (q/2)(1,1,1,1) and closed product, q<=20",
                      worst, 0))
    b4 = weyl_dim(RootSystem("B", 4), (Fraction(1, 2),) * 4)
    out.append(_check("dims", "B4 spin weight has dimension 16", abs(b4 - 16), 0))
    d_e1 = weyl_dim(d4, (1, 0, 0, 0))
    d_half = weyl_dim(d4, (Fraction(1, 2),) * 4)
    out.append(_check("dims", "D4 e1 and half-spin both 8", abs(d_e1 - 8) + abs(d_half - 8), 0))
    return out


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for s in SUITES for c in run_suite(s)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return globals()[f"suite_{name}"]()

