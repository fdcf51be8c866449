"""Summability criterion for the restriction operator.

For each L-type ``sigma`` the sum ``sum_tau ||R_{tau,sigma}||^2 / lambda(tau)``
runs over the K-types containing ``sigma``.  The restriction extends to a
bounded intertwiner when this sum is at most ``C / lambda_flat(sigma)``
uniformly in ``sigma``.  This module evaluates the sums with power-law tail
estimates and sweeps ``sigma`` for numerical evidence of the bound.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import special, stats

from .branching import (admissible_sigmas, admissible_taus, line_offsets, line_taus,
                        log_restriction_norm_sq, restriction_norm_sq_closed)
from .corefn import EPS, HEURISTIC, BoundedValue
from .errors import DivergenceDetected, KernelError
from .families import GroupFamily, Kind, check_ktype, check_ltype
from .unitarity import (QUOTIENT, NuParameter, in_quotient_kernel, lambda_flat,
                        lambda_nu, log_lambda_line)

BOUNDED = "bounded-evidence"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"

DRIFT_LIMIT = 0.10
EXPONENT_LIMIT = 0.05


def _as_nu(family: GroupFamily, nu) -> NuParameter:
    return nu if isinstance(nu, NuParameter) else NuParameter.infer(family, nu)


def criterion_term(family: GroupFamily, nu, tau, sigma) -> BoundedValue:
    """``||R_{tau,sigma}||^2 / lambda_nu(tau)``; zero if inadmissible or in the kernel."""
    nu = _as_nu(family, nu)
    tau, sigma = check_ktype(family, tau), check_ltype(family, sigma)
    if sigma not in admissible_sigmas(family, tau):
        return BoundedValue.from_exact(0)
    if nu.regime == QUOTIENT and in_quotient_kernel(family, nu.k, tau, nu.variant):
        return BoundedValue.from_exact(0)
    lam = lambda_nu(family, nu, tau)
    return restriction_norm_sq_closed(family, tau, sigma) / lam


def line_terms(family: GroupFamily, nu: NuParameter, sigma, p_max: int):
    """Leading indices and criterion terms along the admissible line of ``sigma``.

    Terms are computed in log space with log-Gamma; kernel K-types give 0.
    """
    j = line_offsets(family, sigma, p_max)
    p, q = line_taus(family, sigma, j)
    log_t = log_restriction_norm_sq(family, sigma, p, q) - log_lambda_line(family, nu, p, q)
    terms = np.where(np.isnan(log_t), 0.0, np.exp(np.nan_to_num(log_t, nan=-np.inf)))
    return p, terms


@dataclass
class PowerFit:
    exponent: float
    log_coeff: float
    stderr: float
    points: int


def fit_power_law(x, y) -> PowerFit | None:
    """Least-squares fit of ``y ~ c x^(-exponent)`` on positive data."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = (y > 0) & np.isfinite(y)
    if keep.sum() < 3:
        return None
    res = stats.linregress(np.log(x[keep]), np.log(y[keep]))
    return PowerFit(-res.slope, res.intercept, res.stderr, int(keep.sum()))


@dataclass
class CriterionReport:
    """One per-``sigma`` criterion sum.

    ``ratio`` is ``partial_sum * lambda_flat(sigma)``; ``ratio_with_tail``
    adds the tail estimate first.  ``decay_exponent`` is the fitted ``gamma``
    of the last decade of terms (``nan`` when too few terms to fit).
    """

    sigma: tuple[int, ...]
    nu: NuParameter
    partial_sum: BoundedValue
    tail_estimate: float
    ratio: float
    truncation: int
    decay_exponent: float = math.nan
    converged: bool = True
    lambda_flat: float = math.nan
    ratio_with_tail: float = math.nan
    terms: int = 0
    note: str = ""


def _lead_step(family: GroupFamily) -> int:
    return 1 if family.kind is Kind.COMPLEX else 2


def criterion_sum(family: GroupFamily, nu, sigma, p_max: int,
                  strict: bool = True) -> CriterionReport:
    """Partial sum over ``admissible_taus(sigma, p_max)`` with a tail estimate.

    The last decade of leading indices is fitted to ``c (p+1)^(-gamma)``.
    For ``gamma > 1`` the tail beyond ``p_max`` is estimated by the integral
    comparison ``c (P + d/2)^(1-gamma) / (d (gamma - 1))`` with ``P`` the last
    ``p + 1`` and ``d`` the step (heuristic).  For ``gamma <= 1`` the sum is
    judged divergent: tail and ratio become infinite and, when ``strict``,
    :class:`DivergenceDetected` carries the report.
    """
    nu = _as_nu(family, nu)
    sigma = check_ltype(family, sigma)
    lam_flat = float(lambda_flat(family, nu, sigma))
    p, terms = line_terms(family, nu, sigma, p_max)
    partial = math.fsum(terms)
    # log-Gamma terms carry a relative error of a few hundred ulp at most
    radius = partial * 256 * EPS * (1 + math.log1p(p_max))
    report = CriterionReport(sigma, nu, BoundedValue(partial, radius, HEURISTIC), 0.0,
                             partial * lam_flat, p_max, lambda_flat=lam_flat,
                             terms=int(np.count_nonzero(terms)))
    nonzero = np.nonzero(terms)[0]
    if nonzero.size == 0 or nonzero[-1] < terms.size - 1:
        report.note = "finite line: every later term lies in the kernel"
        report.ratio_with_tail = report.ratio
        return report
    x = p.astype(float) + 1
    window = x >= x[-1] / 10
    fit = fit_power_law(x[window], terms[window])
    if fit is None:
        fit = fit_power_law(x, terms)
    if fit is None:
        report.note = "too few terms to fit a tail"
        report.ratio_with_tail = report.ratio
        return report
    report.decay_exponent = fit.exponent
    if fit.exponent <= 1:
        report.converged = False
        report.tail_estimate = math.inf
        report.ratio = math.inf
        report.ratio_with_tail = math.inf
        report.note = f"fitted decay exponent {fit.exponent:.3f} <= 1; not summable"
        if strict:
            raise DivergenceDetected(f"criterion sum for sigma={sigma} diverges "
                                     f"(fitted decay {fit.exponent:.3f} <= 1)", report)
        return report
    d = _lead_step(family)
    g = fit.exponent
    report.tail_estimate = float(math.exp(fit.log_coeff) * (x[-1] + d / 2) ** (1 - g)
                                 / (d * (g - 1)))
    report.ratio_with_tail = (partial + report.tail_estimate) * lam_flat
    return report


def partial_sum_growth(family: GroupFamily, nu, sigma, p_max: int) -> PowerFit:
    """Fit ``S(T) ~ T^e`` for the cumulative sums over the last decade of ``T``.

    The returned ``exponent`` field holds ``e`` (the growth rate, not a decay).
    """
    nu = _as_nu(family, nu)
    sigma = check_ltype(family, sigma)
    p, terms = line_terms(family, nu, sigma, p_max)
    cum = np.cumsum(terms)
    x = p.astype(float) + 1
    window = x >= x[-1] / 10
    res = stats.linregress(np.log(x[window]), np.log(cum[window]))
    return PowerFit(res.slope, res.intercept, res.stderr, int(window.sum()))


def sigma_size(family: GroupFamily, sigma) -> int:
    """Scalar size of an L-type used to group the sweep: ``s``, ``max(s, t)`` or ``q``."""
    if family.kind is Kind.COMPLEX:
        return max(sigma)
    return sigma[0]


def sweep_sigmas(family: GroupFamily, nu: NuParameter, sigma_max: int,
                 stride: int | None = None) -> list[tuple[int, ...]]:
    """L-types of the sweep, ascending, excluding the subgroup kernel.

    Two-index grids are thinned to a stride of ``max(1, sigma_max // 40)``.
    """
    kind = family.kind
    sub = family.subgroup()
    if stride is None:
        stride = 1 if kind in (Kind.REAL, Kind.OCTONION) else max(1, sigma_max // 40)
    if kind in (Kind.REAL, Kind.OCTONION):
        cands = [(s,) for s in range(0, sigma_max + 1, stride)]
    elif kind is Kind.COMPLEX:
        axis = range(0, sigma_max + 1, stride)
        cands = [(s, t) for s in axis for t in axis]
    else:
        cands = [(s, t) for s in range(0, sigma_max + 1, stride)
                 for t in range(s, -1, -2 * stride)]
    out = []
    for sig in cands:
        try:
            check_ltype(family, sig)
        except ValueError:
            continue
        if nu.regime == QUOTIENT and kind is not Kind.OCTONION:
            if in_quotient_kernel(sub, nu.k, sig, nu.variant):
                continue
        out.append(sig)
    return sorted(out)


@dataclass
class SweepReport:
    family: GroupFamily
    nu: NuParameter
    sigma_max: int
    p_max: int
    reports: list[CriterionReport] = field(default_factory=list)
    sup_ratio: float = math.nan
    growth_exponent: float = math.nan
    growth_stderr: float = math.nan
    drift: float = math.nan
    verdict: str = INCONCLUSIVE
    vacuous: bool = False
    failures: list[tuple[tuple[int, ...], str]] = field(default_factory=list)
    envelope: list[tuple[int, float]] = field(default_factory=list)


def _envelope(family, reports):
    best: dict[int, float] = {}
    for r in reports:
        m = sigma_size(family, r.sigma)
        best[m] = max(best.get(m, -math.inf), r.ratio)
    return sorted(best.items())


def _one(family, nu, sigma, p_max):
    try:
        return criterion_sum(family, nu, sigma, p_max, strict=False), None
    except (ArithmeticError, ValueError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def boundedness_sweep(family: GroupFamily, nu, sigma_max: int, p_max: int,
                      jobs: int = 1, stride: int | None = None) -> SweepReport:
    """Ratios ``partial_sum(sigma) * lambda_flat(sigma)`` over a grid of ``sigma``.

    The envelope ``E(m)`` is the largest ratio among L-types of size ``m``.
    Drift is the largest ``|E(m) / E(m0) - 1|`` over sizes ``m`` in the upper
    half, ``m0`` the first of them.  The growth exponent is the log-log
    slope of ``E`` over the same half.  Verdict: divergent if any sum
    diverged or the exponent exceeds 0.05 by two standard errors;
    bounded-evidence if every sum converged and the drift is below 10%;
    inconclusive otherwise.  With no L-type outside the subgroup kernel the
    report is marked ``vacuous``.
    """
    nu = _as_nu(family, nu)
    sigmas = sweep_sigmas(family, nu, sigma_max, stride)
    sigmas = [s for s in sigmas if s[0] <= p_max]
    rep = SweepReport(family, nu, sigma_max, p_max)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda s: _one(family, nu, s, p_max), sigmas))
    else:
        results = [_one(family, nu, s, p_max) for s in sigmas]
    for sig, (r, err) in zip(sigmas, results):
        if r is None:
            rep.failures.append((sig, err))
        else:
            rep.reports.append(r)
    if not rep.reports:
        rep.vacuous = not rep.failures
        rep.verdict = BOUNDED if rep.vacuous else INCONCLUSIVE
        return rep
    rep.sup_ratio = max(r.ratio for r in rep.reports)
    env = _envelope(family, rep.reports)
    rep.envelope = env
    top = env[-1][0]
    upper = [(m, e) for m, e in env if m >= top / 2]
    if len(upper) >= 2 and all(math.isfinite(e) for _, e in upper):
        e0 = upper[0][1]
        rep.drift = max(abs(e / e0 - 1) for _, e in upper)
        ms = np.array([m for m, _ in upper], dtype=float)
        es = np.array([e for _, e in upper])
        if np.all(es > 0) and len(upper) >= 3:
            res = stats.linregress(np.log(ms + 1), np.log(es))
            rep.growth_exponent, rep.growth_stderr = res.slope, res.stderr
    all_converged = all(r.converged for r in rep.reports) and not rep.failures
    grows = (math.isfinite(rep.growth_exponent)
             and rep.growth_exponent - 2 * rep.growth_stderr > EXPONENT_LIMIT)
    if not all(r.converged for r in rep.reports) or grows:
        rep.verdict = DIVERGENT
    elif all_converged and math.isfinite(rep.drift) and rep.drift < DRIFT_LIMIT:
        rep.verdict = BOUNDED
    else:
        rep.verdict = INCONCLUSIVE
    return rep


@dataclass
class SummationReport:
    alpha: float
    beta: float
    gamma: float
    q_max: int
    first_sup: float
    second_sup: float
    first_values: np.ndarray
    second_values: np.ndarray
    first_stabilized: bool
    second_stabilized: bool

    @property
    def stabilized(self) -> bool:
        return self.first_stabilized and self.second_stabilized


def _stabilized(vals: np.ndarray) -> bool:
    """Sup over the upper half no larger than over the lower half, or
    increments shrinking by a factor below 0.95 per doubling of ``q``."""
    if not np.all(np.isfinite(vals)):
        return False
    qm = len(vals) - 1
    lower, upper = vals[: qm // 2 + 1], vals[qm // 2:]
    if upper.max() <= lower.max():
        return True
    d1 = vals[qm // 2] - vals[qm // 4]
    d2 = vals[qm] - vals[qm // 2]
    return d1 > 0 and d2 / d1 < 0.95


def _mixed_tail(alpha: float, beta: float, q: int, y0: float) -> float:
    """``int_{y0}^inf y^-alpha (y + q)^-beta dy`` in closed form (``y0 > q``)."""
    e = alpha + beta - 1
    return y0 ** -e / e * special.hyp2f1(beta, e, e + 1, -q / y0)


def lemma35_check(alpha: float, beta: float, gamma: float, q_max: int) -> SummationReport:
    """Scaled sums of the elementary summation estimate for ``q = 0..q_max``.

    ``(q+1)^(a+b-1) sum_j 1 / ((j+1)^a (q+j+1)^b)`` and
    ``(q+1)^(g-1) sum_j (j+q+1)^(-g)``.  Inner sums are truncated and
    closed by the integral from ``J - 1/2``; the summands are convex, so
    this over-estimates the tail.  If ``a + b <= 1`` the first inner sum
    diverges and its values are infinite.
    """
    if not 0 < alpha < 1 or beta <= 0 or gamma <= 1:
        raise ValueError("need 0 < alpha < 1, beta > 0 and gamma > 1")
    first = np.empty(q_max + 1)
    second = np.empty(q_max + 1)
    for q in range(q_max + 1):
        J = 4 * (q + 1) + 2048
        j = np.arange(J, dtype=float)
        if alpha + beta <= 1:
            first[q] = math.inf
        else:
            head = math.fsum((j + 1) ** -alpha * (j + q + 1) ** -beta)
            s = head + _mixed_tail(alpha, beta, q, J + 0.5)
            first[q] = (q + 1) ** (alpha + beta - 1) * s
        head = math.fsum((j + q + 1) ** -gamma)
        s2 = head + (J + q + 0.5) ** (1 - gamma) / (gamma - 1)
        second[q] = (q + 1) ** (gamma - 1) * s2
    return SummationReport(alpha, beta, gamma, q_max, float(first.max()), float(second.max()),
                         first, second, _stabilized(first), _stabilized(second))


def exact_criterion_partial(family: GroupFamily, nu, sigma, p_max: int):
    """Partial sum with exact Pochhammer constants, for small audits."""
    nu = _as_nu(family, nu)
    total = BoundedValue.from_exact(0)
    for tau in admissible_taus(family, sigma, p_max):
        try:
            total = total + criterion_term(family, nu, tau, sigma)
        except KernelError:
            continue
    return total

