"""Throughput and bounds with one dominant co-channel interferer.

The SINR factors as b2(tau) * U * V with
U = |g|^2 / (|f2|^2 + b1) and V = |h|^2 rho1 + |f1|^2 rho_I.
V is a Gamma(Nm, rho1/m) variable plus an Exp(rho_I) variable; its density
has a partial-fraction form whose alternating terms cancel badly near the
double pole rho1/m = rho_I, so every closed-form sum here checks its own
cancellation and falls back to quadrature when too many digits are lost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from . import optimize
from .analytic_noise import LOG2E, ThroughputResult
from .model import InterferenceParams, SystemParams, check_tau, derive_constants
from .optimize import OptResult
from .specfun import (DEFAULT_QUAD, QuadratureSpec, digamma, expint_ei_scaled,
                      integrate, integrate_semi_infinite, ln_gamma)

# Give up on an alternating sum once the largest term exceeds the result by
# this factor (six significant digits lost).
CANCELLATION_LIMIT = 1e6
DEGENERACY_RTOL = 1e-9


class DegenerateDistributionError(ValueError):
    """rho1/m equals rho_I, where the partial-fraction density is singular."""


@dataclass(frozen=True)
class VDistribution:
    """Law of V = |h|^2 rho1 + |f1|^2 rho_I with |h|^2 ~ Gamma(Nm, 1/m)."""

    n_antennas: int
    m: int
    rho1: float
    rho_i: float

    def __post_init__(self):
        if self.n_antennas < 1 or self.m < 1:
            raise ValueError("N and m must be positive integers")
        if not (self.rho1 > 0 and self.rho_i > 0):
            raise ValueError("rho1 and rho_I must be positive")

    @classmethod
    def from_params(cls, params: SystemParams, interf: InterferenceParams) -> "VDistribution":
        k = derive_constants(params, interf)
        return cls(params.n_antennas, params.nakagami_m, k.rho1, k.rho_i)

    @property
    def nm(self) -> int:
        return self.n_antennas * self.m

    @property
    def alpha(self) -> float:
        """Rate of the Gamma part, m/rho1."""
        return self.m / self.rho1

    @property
    def beta(self) -> float:
        """Rate of the exponential part, 1/rho_I."""
        return 1.0 / self.rho_i

    @property
    def mean(self) -> float:
        return self.n_antennas * self.rho1 + self.rho_i

    @property
    def degenerate(self) -> bool:
        a, b = self.rho1 / self.m, self.rho_i
        return abs(a - b) < DEGENERACY_RTOL * max(a, b)

    @cached_property
    def _pf_terms(self):
        # (log|coef|, sign, power of x, decay rate) for each partial fraction
        n, a, b = self.nm, self.alpha, self.beta
        log_c = n * math.log(a) + math.log(b)
        log_gap = math.log(abs(b - a))
        sgn_gap = 1.0 if b > a else -1.0
        terms = []
        for t in range(1, n + 1):
            sign = (-1.0) ** (t - 1) * sgn_gap ** t
            terms.append((log_c - ln_gamma(n - t + 1) - t * log_gap, sign, n - t, a))
        terms.append((log_c - n * log_gap, (-sgn_gap) ** n, 0, b))
        return terms


def _checked_sum(terms):
    """fsum of terms, or None when cancellation exceeds CANCELLATION_LIMIT."""
    if not terms:
        return 0.0
    total = math.fsum(terms)
    biggest = max(abs(t) for t in terms)
    if not math.isfinite(total) or biggest > CANCELLATION_LIMIT * abs(total):
        return None
    return total


def _require_nondegenerate(dist):
    if dist.degenerate:
        raise DegenerateDistributionError(
            "rho1/m = %.6g is too close to rho_I = %.6g for the partial-fraction form"
            % (dist.rho1 / dist.m, dist.rho_i))


def pdf_v_partial_fractions(x: float, dist: VDistribution) -> Optional[float]:
    """Partial-fraction density, or None if the sum is ill-conditioned at x."""
    _require_nondegenerate(dist)
    if x <= 0.0:
        return 0.0
    lx = math.log(x)
    terms = []
    for log_c, sign, power, rate in dist._pf_terms:
        e = log_c + power * lx - rate * x
        if e > 709.0:
            return None
        terms.append(sign * math.exp(e))
    return _checked_sum(terms)


def pdf_v_convolution(x: float, dist: VDistribution) -> float:
    """Density of V from the convolution integral; valid for any rho1, rho_I.

    f(x) = a^n b x^n / Gamma(n) * int_0^1 t^{n-1} exp(-x(b(1-t) + a t)) dt,
    evaluated with the smaller exponent factored out.
    """
    if x <= 0.0:
        return 0.0
    n, a, b = dist.nm, dist.alpha, dist.beta
    low = min(a, b)
    da, db = a - low, b - low
    log_pref = n * math.log(a) + math.log(b) + n * math.log(x) - ln_gamma(n) - x * low
    if log_pref < -745.0:
        return 0.0

    def inner(t):
        return t ** (n - 1) * math.exp(-x * (db * (1.0 - t) + da * t))

    return math.exp(log_pref) * integrate(inner, 0.0, 1.0, QuadratureSpec(rtol=1e-12))


def pdf_v(x: float, dist: VDistribution) -> float:
    """Density of V at x >= 0.

    Uses the partial-fraction mixture; where its alternating terms lose more
    than six digits the convolution integral is used instead. Raises
    DegenerateDistributionError when rho1/m == rho_I.
    """
    if x < 0.0:
        raise ValueError("pdf_v needs x >= 0")
    val = pdf_v_partial_fractions(x, dist)
    if val is None:
        return pdf_v_convolution(x, dist)
    return val


def _density(dist: VDistribution):
    # pdf_v without the degeneracy error: the degenerate law is still valid
    if dist.degenerate:
        return lambda x: pdf_v_convolution(x, dist)
    return lambda x: pdf_v(x, dist)


def expect_v(func, dist: VDistribution, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """E[func(V)] by quadrature against the density of V."""
    f = _density(dist)
    return integrate_semi_infinite(lambda v: func(v) * f(v), quad, pivot=dist.mean)


# ---------------------------------------------------------------------------
# delay-intolerant mode

def _outage_scale(tau, params, interf):
    k = derive_constants(params, interf)
    return k.gamma_th / k.b2(tau), k.b1


def _outage_expanded(c: float, b1: float, dist: VDistribution,
                     quad: QuadratureSpec) -> float:
    # success probability as the Nm+1 separate integrals of the closed form
    _require_nondegenerate(dist)
    n, a, b = dist.nm, dist.alpha, dist.beta
    terms = []
    for log_c, sign, power, rate in dist._pf_terms:
        def integrand(x, power=power, rate=rate):
            e = (power + 1) * math.log(x) - rate * x - b1 * c / x
            if e < -745.0:
                return 0.0
            return math.exp(e) / (x + c)
        scale = 1.0 / rate
        terms.append(sign * math.exp(log_c) * integrate_semi_infinite(integrand, quad, pivot=scale * max(power, 1)))
    total = math.fsum(terms)
    return 1.0 - total


def outage_interference(tau: float, params: SystemParams, interf: InterferenceParams,
                        quad: QuadratureSpec = DEFAULT_QUAD, expanded: bool = False) -> float:
    """P(SINR < gamma_th) = E[F_U(gamma_th / (b2 V))], F_U(z) = 1 - e^{-b1 z}/(1+z).

    ``expanded=True`` evaluates the term-by-term integral form instead of the
    single expectation; it is meant for cross-checks at small Nm only.
    """
    check_tau(tau)
    c, b1 = _outage_scale(tau, params, interf)
    dist = VDistribution.from_params(params, interf)
    if expanded:
        return _outage_expanded(c, b1, dist, quad)

    def f_u(v):
        z = c / v
        return (z - math.expm1(-b1 * z)) / (1.0 + z)

    return min(1.0, max(0.0, expect_v(f_u, dist, quad)))


def success_interference(tau: float, params: SystemParams, interf: InterferenceParams,
                         quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """1 - outage, integrated directly so that tiny success rates keep their digits."""
    check_tau(tau)
    c, b1 = _outage_scale(tau, params, interf)
    dist = VDistribution.from_params(params, interf)

    def s_u(v):
        z = c / v
        return math.exp(-b1 * z) / (1.0 + z)

    return min(1.0, max(0.0, expect_v(s_u, dist, quad)))


def throughput_dc_interference(tau: float, params: SystemParams, interf: InterferenceParams,
                               quad: QuadratureSpec = DEFAULT_QUAD) -> ThroughputResult:
    value = params.rate * (1.0 - tau) * success_interference(tau, params, interf, quad)
    return ThroughputResult(tau, value, "dc", "exact")


def _outage_lower_closed(c: float, dist: VDistribution) -> Optional[float]:
    # c * E[1/(V + c)] from the Ei closed form; None when ill-conditioned
    n, a, b = dist.nm, dist.alpha, dist.beta
    log_c = math.log(c)
    terms = []
    try:
        ea = expint_ei_scaled(-c * a)
        eb = expint_ei_scaled(-c * b)
        for log_coef, sign, power, rate in dist._pf_terms[:-1]:
            q = power
            coef = sign * math.exp(log_coef + log_c)
            # int_0^inf x^q e^{-a x}/(x + c) dx
            terms.append(coef * (-1.0) ** (q - 1) * math.exp(q * log_c) * ea)
            for kk in range(1, q + 1):
                mag = ln_gamma(kk) + (q - kk) * log_c - kk * math.log(a)
                terms.append(coef * (-1.0) ** (q - kk) * math.exp(mag))
        log_coef, sign, _, _ = dist._pf_terms[-1]
        terms.append(-sign * math.exp(log_coef + log_c) * eb)
    except OverflowError:
        return None
    return _checked_sum(terms)


def outage_lower_bound(tau: float, params: SystemParams, interf: InterferenceParams,
                       quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Outage of the interference-limited SIR b2 |g|^2/|f2|^2 V, a lower bound on outage."""
    check_tau(tau)
    c, _ = _outage_scale(tau, params, interf)
    dist = VDistribution.from_params(params, interf)
    val = None if dist.degenerate else _outage_lower_closed(c, dist)
    if val is None:
        val = expect_v(lambda v: c / (v + c), dist, quad)
    return min(1.0, max(0.0, val))


def throughput_dc_upper(tau: float, params: SystemParams, interf: InterferenceParams,
                        quad: QuadratureSpec = DEFAULT_QUAD) -> ThroughputResult:
    p_low = outage_lower_bound(tau, params, interf, quad)
    return ThroughputResult(tau, params.rate * (1.0 - tau) * (1.0 - p_low), "dc", "upper-bound")


# ---------------------------------------------------------------------------
# delay-tolerant mode

def ln_moment_u(b1: float) -> float:
    """E[ln U] for U = |g|^2/(|f2|^2 + b1) = psi(1) - ln b1 + e^{b1} Ei(-b1)."""
    if not b1 > 0.0:
        raise ValueError("b1 must be positive")
    return digamma(1.0) - math.log(b1) + expint_ei_scaled(-b1)


def _ln_moment_v_closed(dist: VDistribution) -> Optional[float]:
    n, a, b = dist.nm, dist.alpha, dist.beta
    ln_a = math.log(a)
    r = a / (b - a)
    log_r = math.log(abs(r))
    sgn_r = 1.0 if r > 0 else -1.0
    terms = []
    try:
        for t in range(1, n + 1):
            mag = math.log(b / a) + t * log_r
            terms.append((-1.0) ** (t - 1) * sgn_r ** t * math.exp(mag)
                         * (digamma(n - t + 1.0) - ln_a))
        terms.append((-sgn_r) ** n * math.exp(n * math.log(abs(a / (a - b))))
                     * (digamma(1.0) - math.log(b)))
    except OverflowError:
        return None
    return _checked_sum(terms)


def ln_moment_v(dist: VDistribution, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """E[ln V]; closed form when well conditioned, quadrature otherwise."""
    val = None if dist.degenerate else _ln_moment_v_closed(dist)
    if val is None:
        val = expect_v(math.log, dist, quad)
    return val


def ln_moment_v_literal(dist: VDistribution) -> float:
    """E[ln V] summed term by term exactly as the printed closed form reads.

    Kept only to cross-check the simplified sum in :func:`ln_moment_v`; it
    overflows for large Nm.
    """
    _require_nondegenerate(dist)
    n, m, r1, ri = dist.nm, dist.m, dist.rho1, dist.rho_i
    pref = m ** n / (r1 ** n * ri)
    terms = []
    for t in range(1, n + 1):
        q = n - t + 1
        terms.append((-1.0) ** (t - 1) / math.factorial(n - t) * (1.0 / ri - m / r1) ** (-t)
                     * (r1 / m) ** q * math.gamma(q) * (digamma(q) + math.log(r1 / m)))
    terms.append((m / r1 - 1.0 / ri) ** (-n) * ri * (digamma(1.0) + math.log(ri)))
    return pref * math.fsum(terms)


def dt_interference_coefficient(params: SystemParams, interf: InterferenceParams,
                                quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Coefficient a with E[ln SINR] = ln(tau/(1-tau)) + ln a."""
    k = derive_constants(params, interf)
    dist = VDistribution.from_params(params, interf)
    log_a = math.log(k.eta * k.b1 / k.d2_alpha) + ln_moment_u(k.b1) + ln_moment_v(dist, quad)
    return math.exp(log_a)


def dt_interference_coefficient_printed(params: SystemParams, interf: InterferenceParams,
                                        quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """exp(psi(1) + e^{b1} Ei(-b1) + ln(eta/d2^a) + E[ln V]), the other arrangement."""
    k = derive_constants(params, interf)
    dist = VDistribution.from_params(params, interf)
    return math.exp(digamma(1.0) + expint_ei_scaled(-k.b1) + math.log(k.eta / k.d2_alpha)
                    + ln_moment_v(dist, quad))


def throughput_dt_lower_interference(tau: float, params: SystemParams,
                                     interf: InterferenceParams,
                                     quad: QuadratureSpec = DEFAULT_QUAD) -> ThroughputResult:
    check_tau(tau)
    a = dt_interference_coefficient(params, interf, quad)
    value = (1.0 - tau) * LOG2E * math.log1p(a * tau / (1.0 - tau))
    return ThroughputResult(tau, value, "dt", "lower-bound")


def tau_star_dt_interference(params: SystemParams, interf: InterferenceParams,
                             quad: QuadratureSpec = DEFAULT_QUAD) -> OptResult:
    a = dt_interference_coefficient(params, interf, quad)
    tau = optimize.lemma3(a)
    value = (1.0 - tau) * LOG2E * math.log1p(a * tau / (1.0 - tau))
    return OptResult(tau, value, "lemma3")


def tau_star_dc_interference(params: SystemParams, interf: InterferenceParams,
                             points: int = 256) -> OptResult:
    """Numerical optimum of the exact delay-intolerant throughput."""
    quad = QuadratureSpec(rtol=1e-9)
    return optimize.grid_search(
        lambda t: throughput_dc_interference(t, params, interf, quad).value,
        resolution=1e-7, points=points)
