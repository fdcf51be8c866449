"""Acceptance criteria, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
block of the terminal summary: one PASS or FAIL line per criterion.
"""
import math
import time
from fractions import Fraction

import numpy as np

from rankone_branch import cli, verify
from rankone_branch.branching import admissible_taus
from rankone_branch.criterion import (BOUNDED, DIVERGENT, boundedness_sweep, criterion_sum,
                                      criterion_term, partial_sum_growth)
from rankone_branch.errors import DivergenceDetected
from rankone_branch.families import GroupFamily, Kind
from rankone_branch.unitarity import (complementary_range, in_quotient_kernel, lambda_nu,
                                      positivity_witness, resolve_regime)
from rankone_branch.corefn import pochhammer
from rankone_branch.weyl import RootSystem, ltype_dim, octonion_ltype_dim_closed, weyl_dim

R = lambda n: GroupFamily(Kind.REAL, n)  # noqa: E731
C = lambda n: GroupFamily(Kind.COMPLEX, n)  # noqa: E731
H = lambda n: GroupFamily(Kind.QUATERNION, n)  # noqa: E731
F4 = GroupFamily(Kind.OCTONION)

SIGMA_MAX, P_MAX = 200, 10_000


def _sweep(fam, nu=None, regime=None):
    return boundedness_sweep(fam, resolve_regime(fam, nu, regime), SIGMA_MAX, P_MAX)


def test_criterion_01_schur_norms(acceptance):
    t0 = time.perf_counter()
    checks = verify.suite_schur(tol=1e-9)
    elapsed = time.perf_counter() - t0
    worst = max(c.measured for c in checks)
    ok = all(c.passed for c in checks) and elapsed < 60
    acceptance(1, ok, f"Schur norm times dimension, worst |dev| {worst:.2e} <= 1e-9 "
                      f"over {len(checks)} families, {elapsed:.1f}s < 60s")
    assert ok, [c for c in checks if not c.passed]


def test_criterion_02_constant_ratio(acceptance):
    # the rank-one quaternionic group has no subgroup, hence no pairs
    grid = [fam for fam, _ in verify.SCHUR_GRID if fam.has_subgroup]
    spreads, complex_dev, consts = {}, 0.0, {}
    for fam in grid:
        r = verify.closed_oracle_ratios(fam, 25)
        spreads[str(fam)] = (r.max() - r.min()) / r.min()
        consts[str(fam)] = r.mean()
        if fam.kind is Kind.COMPLEX:
            complex_dev = max(complex_dev, float(np.max(np.abs(r / (fam.n - 1) - 1))))
    worst = max(spreads.values())
    ok = worst < 1e-7 and complex_dev < 1e-9
    shown = ", ".join(f"{k}={v:.6g}" for k, v in consts.items())
    acceptance(2, ok, f"closed/oracle spread {worst:.2e} < 1e-7, complex vs n-1 "
                      f"{complex_dev:.2e} < 1e-9; constants {shown}")
    assert ok, spreads


def test_criterion_03_discrete_component_evidence(acceptance):
    t0 = time.perf_counter()
    cases = [(R(4), Fraction(1, 2)), (R(5), Fraction(1)), (C(3), Fraction(1, 2)),
             (H(2), Fraction(5, 2))]
    parts, ok = [], True
    for fam, nu in cases:
        rep = _sweep(fam, nu)
        ok &= rep.verdict == BOUNDED and rep.drift < 0.10
        parts.append(f"{fam} nu={nu}: {rep.verdict} drift {rep.drift:.1e}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    acceptance(3, ok, "; ".join(parts) + f"; {elapsed:.0f}s < 300s")
    assert ok


def test_criterion_04_divergence_exponents(acceptance):
    fit = partial_sum_growth(R(4), Fraction(3, 2), (0,), P_MAX)
    expected = 2 * 1.5 - 4 + 2
    ok_real = abs(fit.exponent - expected) <= 0.1
    decays = []
    for q in (0, 5, 20, 100):
        try:
            criterion_sum(F4, Fraction(15, 2), (q,), P_MAX)
            decays.append(math.nan)
        except DivergenceDetected as exc:
            decays.append(exc.report.decay_exponent)
    ok_oct = all(d <= 1 for d in decays)
    rep = _sweep(F4, Fraction(15, 2))
    ok = ok_real and ok_oct and rep.verdict == DIVERGENT
    acceptance(4, ok, f"R4 nu=3/2 growth exponent {fit.exponent:.4f} vs {expected:.1f} +- 0.1; "
                      f"F4 nu=15/2 fitted decay max {max(decays):.2e} <= 1, sweep {rep.verdict}")
    assert ok


def test_criterion_05_octonionic_discrete_component(acceptance):
    rep = _sweep(F4, Fraction(13, 2))
    term = criterion_term(F4, Fraction(13, 2), (0, 0), (0,))
    ok = rep.verdict == BOUNDED and term.exact == 1
    acceptance(5, ok, f"F4 nu=13/2 sweep {rep.verdict} drift {rep.drift:.1e}; "
                      f"criterion_term((0,0), 0) = {term.exact}")
    assert ok


def _kernel_excluded(fam, rep):
    nu = rep.nu
    for r in rep.reports[:: max(1, len(rep.reports) // 10)]:
        for tau in admissible_taus(fam, r.sigma, r.sigma[0] + 12):
            term = criterion_term(fam, nu, tau, r.sigma).value
            if in_quotient_kernel(fam, nu.k, tau, nu.variant) and term != 0:
                return False
    return True


def test_criterion_06_quotient_discrete_components(acceptance):
    parts, ok = [], True
    # H3 at k = 0 adds a non-vacuous quaternionic case next to the stated H2 one
    for fam, regime in [(R(5), "quotient:1"), (C(3), "quotient:1"), (H(2), "quotient:0"),
                        (H(3), "quotient:0")]:
        rep = _sweep(fam, regime=regime)
        excl = _kernel_excluded(fam, rep)
        ok &= rep.verdict == BOUNDED and excl
        extra = " (vacuous: every L-type lies in the subgroup kernel)" if rep.vacuous else \
            f" drift {rep.drift:.1e}"
        parts.append(f"{fam} {regime}: {rep.verdict}{extra}, kernel excluded {excl}")
    acceptance(6, ok, "; ".join(parts))
    assert ok


def test_criterion_07_dimension_engine(acceptance):
    d4 = RootSystem("D", 4)
    ok = weyl_dim(RootSystem("B", 4), (Fraction(1, 2),) * 4) == 16
    ok &= weyl_dim(d4, (1, 0, 0, 0)) == weyl_dim(d4, (Fraction(1, 2),) * 4) == 8
    checks = verify.suite_dims()
    ok &= all(c.passed for c in checks)
    ok &= all(ltype_dim(F4, (q,)) == (q + 3) * pochhammer(q + 1, 5) / 360
              == octonion_ltype_dim_closed(q) for q in range(21))
    acceptance(7, ok, "B4 spin 16, D4 e1 = half-spin = 8, binomial = Weyl for n<=10 p<=30, "
                      "octonionic L-type product for q<=20, all exact")
    assert ok


def test_criterion_08_special_function_identities(acceptance):
    checks = verify.suite_gegenbauer(tol=1e-12)
    worst = max(c.measured for c in checks)
    ok = all(c.passed for c in checks)
    positive = True
    for fam in [R(4), R(5), C(3), H(2), F4]:
        lo, hi = complementary_range(fam)
        for i in (1, 5, 9):
            positive &= positivity_witness(fam, lo + (hi - lo) * Fraction(i, 10), 100) is None
    witness = positivity_witness(R(4), Fraction(16, 5), 3)
    lam = lambda_nu(R(4), 3.2, (1,)).value
    ok &= positive and witness == (1,) and lam < 0
    acceptance(8, ok, f"Gegenbauer/Jacobi worst {worst:.2e} <= 1e-12; lambda > 0 inside ranges "
                      f"(lead <= 100) {positive}; R4 nu=3.2 witness {witness} with "
                      f"lambda = {lam:.4g}")
    assert ok


def test_criterion_09_summation_estimate(acceptance):
    checks = verify.suite_lemma35()
    ok = all(c.passed for c in checks)
    acceptance(9, ok, f"{sum(c.passed for c in checks)}/{len(checks)} checks: stabilized sups "
                      "for the 9 valid (alpha, beta, gamma), non-stabilization at (1/2, 1/4)")
    assert ok, [c for c in checks if not c.passed]


def test_criterion_10_cli_determinism(acceptance, tmp_path):
    outs = []
    for jobs in ("1", "4"):
        path = tmp_path / f"sweep{jobs}.csv"
        code = cli.main(["sweep", "--family", "C", "--n", "3", "--nu", "1/2", "--sigma-max",
                         str(SIGMA_MAX), "--p-max", str(P_MAX), "--jobs", jobs,
                         "--out", str(path)])
        assert code == 0
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1]
    acceptance(10, ok, f"C3 sweep CSV byte-identical for --jobs 1 and 4 ({len(outs[0])} bytes)")
    assert ok
