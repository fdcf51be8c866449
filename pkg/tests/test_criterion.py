import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from rankone_branch.criterion import (BOUNDED, DIVERGENT, boundedness_sweep, criterion_sum,
                                      criterion_term, exact_criterion_partial, fit_power_law,
                                      lemma35_check, partial_sum_growth)
from rankone_branch.errors import DivergenceDetected
from rankone_branch.families import GroupFamily, Kind
from rankone_branch.unitarity import NuParameter, resolve_regime

R = lambda n: GroupFamily(Kind.REAL, n)  # noqa: E731
C = lambda n: GroupFamily(Kind.COMPLEX, n)  # noqa: E731
H = lambda n: GroupFamily(Kind.QUATERNION, n)  # noqa: E731
F4 = GroupFamily(Kind.OCTONION)
HALF = Fraction(1, 2)


def test_term_examples():
    assert criterion_term(F4, Fraction(13, 2), (0, 0), (0,)).exact == 1
    assert criterion_term(R(4), HALF, (1,), (0,)).value == 0
    t = criterion_term(R(4), HALF, (2,), (2,))
    assert t.value > 0


def test_octonion_single_term_sum():
    rep = criterion_sum(F4, Fraction(13, 2), (0,), 0)
    assert rep.partial_sum.value == 1.0


def test_frozen_partial_sums():
    rep = criterion_sum(R(4), HALF, (0,), 10_000)
    assert rep.partial_sum.value == pytest.approx(2.99990452612915766821, rel=1e-12)
    assert rep.tail_estimate < 1e-2 * rep.partial_sum.value
    assert rep.partial_sum.value + rep.tail_estimate == pytest.approx(3.0, rel=1e-6)
    rep = criterion_sum(R(4), HALF, (5,), 1000)
    assert rep.partial_sum.value == pytest.approx(0.271773292522014703241, rel=1e-12)


def test_vectorized_sum_matches_exact_terms():
    for fam, nu, sigma in [(R(5), Fraction(1), (3,)), (C(3), HALF, (2, 1)),
                           (H(3), Fraction(7, 2), (2, 0)), (F4, Fraction(27, 4), (2,))]:
        exact = exact_criterion_partial(fam, nu, sigma, 30).value
        fast = criterion_sum(fam, nu, sigma, 30, strict=False).partial_sum.value
        assert fast == pytest.approx(exact, rel=1e-11)


def test_quotient_terms_vanish_on_kernel():
    nu = NuParameter.quotient(R(5), 1)
    assert criterion_term(R(5), nu, (1,), (1,)).value == 0
    assert criterion_term(R(5), nu, (3,), (1,)).value > 0


def test_real_divergence_detected():
    with pytest.raises(DivergenceDetected) as info:
        criterion_sum(R(4), Fraction(3, 2), (0,), 10_000)
    rep = info.value.report
    assert not rep.converged and math.isinf(rep.ratio) and math.isinf(rep.tail_estimate)
    rep = criterion_sum(R(4), Fraction(3, 2), (0,), 10_000, strict=False)
    assert rep.decay_exponent == pytest.approx(0.0, abs=0.01)


def test_partial_sum_growth_exponent():
    fit = partial_sum_growth(R(4), Fraction(3, 2), (0,), 10_000)
    assert fit.exponent == pytest.approx(1.0, abs=0.1)
    fit = partial_sum_growth(R(5), Fraction(7, 4), (0,), 10_000)
    assert fit.exponent == pytest.approx(2 * 1.75 - 5 + 2, abs=0.1)


@given(st.sampled_from([(R(4), HALF, (0,)), (R(5), Fraction(1), (2,)), (C(3), HALF, (1, 3)),
                        (H(2), Fraction(5, 2), (2, 2)), (F4, Fraction(13, 2), (3,))]),
       st.integers(5, 400), st.integers(0, 400))
@settings(max_examples=60, deadline=None)
def test_partial_sum_monotone(case, p1, extra):
    fam, nu, sigma = case
    p1 = max(p1, sigma[0])
    a = criterion_sum(fam, nu, sigma, p1, strict=False)
    b = criterion_sum(fam, nu, sigma, p1 + extra, strict=False)
    assert a.partial_sum.value <= b.partial_sum.value * (1 + 1e-13)
    assert a.tail_estimate >= 0


def test_tail_sanity():
    cases = [(R(4), Fraction(nu, 10), (s,)) for nu in (2, 5, 8) for s in (0, 3, 10, 40)]
    cases += [(R(5), Fraction(nu, 10), (s,)) for nu in (5, 10, 14) for s in (0, 7, 30)]
    cases += [(C(3), HALF, (s, t)) for s, t in [(0, 0), (3, 1), (10, 20)]]
    cases += [(H(2), Fraction(5, 2), (t, t)) for t in (0, 4, 12)]
    cases += [(F4, Fraction(13, 2), (q,)) for q in (0, 5, 20)]
    good = 0
    for fam, nu, sigma in cases:
        a = criterion_sum(fam, nu, sigma, 2000)
        b = criterion_sum(fam, nu, sigma, 4000)
        if b.partial_sum.value - a.partial_sum.value <= a.tail_estimate:
            good += 1
    assert good >= 0.95 * len(cases)


def test_fit_power_law():
    x = np.arange(1, 200, dtype=float)
    fit = fit_power_law(x, 3 * x ** -2.5)
    assert fit.exponent == pytest.approx(2.5, abs=1e-12)
    assert math.exp(fit.log_coeff) == pytest.approx(3, rel=1e-12)
    assert fit_power_law(x[:2], x[:2]) is None


def test_sweep_small_real():
    rep = boundedness_sweep(R(4), resolve_regime(R(4), HALF), 40, 2000)
    assert rep.verdict == BOUNDED
    assert [r.sigma for r in rep.reports] == [(s,) for s in range(41)]
    assert rep.sup_ratio == max(r.ratio for r in rep.reports)


def test_sweep_divergent_real():
    rep = boundedness_sweep(R(4), resolve_regime(R(4), Fraction(3, 2)), 20, 2000)
    assert rep.verdict == DIVERGENT


def test_sweep_jobs_independent():
    nu = resolve_regime(C(3), HALF)
    a = boundedness_sweep(C(3), nu, 12, 500, jobs=1)
    b = boundedness_sweep(C(3), nu, 12, 500, jobs=3)
    assert [(r.sigma, r.ratio) for r in a.reports] == [(r.sigma, r.ratio) for r in b.reports]
    assert a.verdict == b.verdict and a.drift == b.drift


def test_vacuous_quotient_sweep():
    rep = boundedness_sweep(H(2), resolve_regime(H(2), None, "quotient:0"), 20, 500)
    assert rep.vacuous and rep.verdict == BOUNDED and not rep.reports


def test_summation_estimate_examples():
    rep = lemma35_check(0.5, 1.0, 2.0, 1000)
    assert rep.stabilized
    assert rep.second_values[1:].max() <= 2
    assert rep.first_values[3] == pytest.approx(2.698170054323789989, rel=1e-9)
    bad = lemma35_check(0.5, 0.25, 2.0, 1000)
    assert not bad.first_stabilized and math.isinf(bad.first_sup)
    with pytest.raises(ValueError):
        lemma35_check(1.5, 1.0, 2.0, 10)


def test_summation_second_sum_hurwitz():
    rep = lemma35_check(0.5, 1.0, 3.0, 200)
    q = np.arange(201)
    assert np.allclose(rep.second_values, (q + 1) ** 2 * special.zeta(3.0, q + 1), rtol=1e-9)
