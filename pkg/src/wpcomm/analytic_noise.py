"""Throughput of the noise-limited link: exact values, bounds, approximations.

Delay-intolerant ("dc") mode sends at the fixed rate R_c and loses blocks in
outage; delay-tolerant ("dt") mode achieves the ergodic capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import optimize
from .model import SystemParams, check_tau, derive_constants
from .optimize import OptResult
from .specfun import (DEFAULT_QUAD, QuadratureSpec, digamma,
                      integrate_semi_infinite, ln_gamma, log_bessel_k)

LOG2E = 1.0 / math.log(2.0)

MODES = ("dc", "dt")
KINDS = ("exact", "lower-bound", "upper-bound", "high-power-approx",
         "large-N-approx", "high-snr-approx")

# Below this value of m*x the product CDF is summed from the small-argument
# series of K_n; above it the Bessel form has no cancellation problem.
_SERIES_SWITCH = 1.0


@dataclass(frozen=True)
class ThroughputResult:
    tau: float
    value: float
    mode: str
    kind: str

    def __post_init__(self):
        if self.mode not in MODES or self.kind not in KINDS:
            raise ValueError("bad mode/kind %r/%r" % (self.mode, self.kind))

    def __float__(self):
        return self.value


def _product_cdf_series(y: float, n: int) -> float:
    # 1 - (2 y^{n/2}/Gamma(n)) K_n(2 sqrt(y)) from the ascending series of K_n
    # (integer order), with the leading 1 cancelled analytically.
    poly = []
    coef = 1.0 / (n - 1) if n > 1 else 0.0
    power = -y
    for k in range(1, n):
        poly.append(-coef * power)
        coef /= (n - k - 1) * (k + 1) if n - k - 1 > 0 else 1.0
        power *= -y
    ln_y = math.log(y)
    # y^n / ((n-1)! n!) times the two ascending sums
    lead = n * ln_y - ln_gamma(n) - ln_gamma(n + 1)
    s1 = s2 = 0.0
    if lead > -745.0:
        term = math.exp(lead)
        psi_a = digamma(1.0)
        psi_b = digamma(n + 1.0)
        j = 0
        while True:
            s1 += term
            s2 += (psi_a + psi_b) * term
            j += 1
            term *= y / (j * (n + j))
            psi_a += 1.0 / j
            psi_b += 1.0 / (n + j)
            if term <= 1e-18 * abs(s1):
                break
    sign = -1.0 if n % 2 == 0 else 1.0
    poly.append(sign * (s2 - ln_y * s1))
    return math.fsum(poly)


def _product_cdf_bessel(y: float, n: int) -> float:
    log_tail = math.log(2.0) + 0.5 * n * math.log(y) - ln_gamma(n) \
        + log_bessel_k(n, 2.0 * math.sqrt(y))
    return -math.expm1(log_tail) if log_tail > -1.0 else 1.0 - math.exp(log_tail)


def product_cdf(x: float, n_antennas: int, m: int) -> float:
    """CDF of |h|^2 |g|^2, |h|^2 ~ Gamma(N m, 1/m) and |g|^2 ~ Exp(1)."""
    if x < 0.0:
        raise ValueError("product_cdf needs x >= 0")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    n = n_antennas * m
    y = m * x
    if y <= _SERIES_SWITCH:
        return _product_cdf_series(y, n)
    return _product_cdf_bessel(y, n)


def outage_threshold(tau: float, params: SystemParams) -> float:
    """Value of |h|^2 |g|^2 below which the block is in outage."""
    k = derive_constants(params)
    return (1.0 - tau) * k.c1 * k.gamma_th / tau


def outage_noise(tau: float, params: SystemParams) -> float:
    check_tau(tau)
    return product_cdf(outage_threshold(tau, params), params.n_antennas, params.nakagami_m)


def throughput_dc(tau: float, params: SystemParams) -> ThroughputResult:
    check_tau(tau)
    value = params.rate * (1.0 - tau) * (1.0 - outage_noise(tau, params))
    return ThroughputResult(tau, value, "dc", "exact")


def _require_nm2(params):
    if params.nm < 2:
        raise ValueError("high-power approximation needs N*m >= 2 (coefficient m/(Nm-1))")


def throughput_dc_highP(tau: float, params: SystemParams) -> ThroughputResult:
    """High-power approximation: outage ~ m/(Nm-1) * threshold, clamped at 0."""
    check_tau(tau)
    _require_nm2(params)
    m = params.nakagami_m
    p_out = m / (params.nm - 1.0) * outage_threshold(tau, params)
    value = params.rate * (1.0 - tau) * max(0.0, 1.0 - p_out)
    return ThroughputResult(tau, value, "dc", "high-power-approx")


def tau_star_highP(params: SystemParams) -> OptResult:
    _require_nm2(params)
    k = derive_constants(params)
    b = params.nakagami_m * k.c1 * k.gamma_th / (params.nm - 1.0)
    tau = optimize.lemma1(b)
    return OptResult(tau, throughput_dc_highP(tau, params).value, "lemma1")


def throughput_dc_largeN(tau: float, params: SystemParams) -> ThroughputResult:
    """Large-array approximation |h|^2 ~ N."""
    check_tau(tau)
    k = derive_constants(params)
    b = k.c1 * k.gamma_th / params.n_antennas
    value = params.rate * (1.0 - tau) * math.exp(-b * (1.0 - tau) / tau)
    return ThroughputResult(tau, value, "dc", "large-N-approx")


def tau_star_largeN(params: SystemParams) -> OptResult:
    k = derive_constants(params)
    tau = optimize.lemma2(k.c1 * k.gamma_th / params.n_antennas)
    return OptResult(tau, throughput_dc_largeN(tau, params).value, "lemma2")


def ergodic_capacity(tau: float, params: SystemParams,
                     quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """E[log2(1 + SNR)] in bits/s/Hz by quadrature over the product density."""
    check_tau(tau)
    k = derive_constants(params)
    n = params.nm
    scale = tau / ((1.0 - tau) * params.nakagami_m * k.c1)
    log_norm = math.log(2.0) - ln_gamma(n)

    def integrand(x):
        # ln(1 + scale*x) * 2 x^{(n-1)/2} K_{n-1}(2 sqrt x) / Gamma(n)
        log_w = log_norm + 0.5 * (n - 1) * math.log(x) + log_bessel_k(n - 1, 2.0 * math.sqrt(x))
        if log_w < -745.0:
            return 0.0
        return math.log1p(scale * x) * math.exp(log_w)

    return LOG2E * integrate_semi_infinite(integrand, quad, pivot=float(n))


def throughput_dt(tau: float, params: SystemParams,
                  quad: QuadratureSpec = DEFAULT_QUAD) -> ThroughputResult:
    return ThroughputResult(tau, (1.0 - tau) * ergodic_capacity(tau, params, quad), "dt", "exact")


def mean_log_gain(params: SystemParams) -> float:
    """E[ln |h|^2 + ln |g|^2] = psi(Nm) - ln m + psi(1)."""
    return digamma(params.nm) - math.log(params.nakagami_m) + digamma(1.0)


def dt_lower_coefficient(params: SystemParams) -> float:
    return math.exp(mean_log_gain(params)) / derive_constants(params).c1


def throughput_dt_lower(tau: float, params: SystemParams) -> ThroughputResult:
    """Jensen lower bound (1-tau) log2(1 + a tau/(1-tau))."""
    check_tau(tau)
    a = dt_lower_coefficient(params)
    value = (1.0 - tau) * LOG2E * math.log1p(a * tau / (1.0 - tau))
    return ThroughputResult(tau, value, "dt", "lower-bound")


def tau_star_dt_lower(params: SystemParams) -> OptResult:
    tau = optimize.lemma3(dt_lower_coefficient(params))
    return OptResult(tau, throughput_dt_lower(tau, params).value, "lemma3")


def dt_highsnr_offset(params: SystemParams) -> float:
    """ln(eta P/(d1^a d2^a N0)) + psi(Nm) - ln m + psi(1)."""
    return -math.log(derive_constants(params).c1) + mean_log_gain(params)


def dt_highsnr_raw(tau: float, params: SystemParams) -> float:
    """Unclamped high-SNR approximation (1-tau)/ln2 * (ln(tau/(1-tau)) + a)."""
    check_tau(tau)
    return (1.0 - tau) * LOG2E * (math.log(tau / (1.0 - tau)) + dt_highsnr_offset(params))


def throughput_dt_highsnr(tau: float, params: SystemParams) -> ThroughputResult:
    return ThroughputResult(tau, max(0.0, dt_highsnr_raw(tau, params)), "dt", "high-snr-approx")


def tau_star_dt_highsnr(params: SystemParams) -> OptResult:
    tau = optimize.lemma4(dt_highsnr_offset(params))
    return OptResult(tau, dt_highsnr_raw(tau, params), "lemma4")


def tau_star_dc_exact(params: SystemParams) -> OptResult:
    """Numerical optimum of the exact delay-intolerant throughput."""
    return optimize.grid_search(lambda t: throughput_dc(t, params).value)


def tau_star_dt_exact(params: SystemParams, points: int = 256) -> OptResult:
    """Numerical optimum of the exact delay-tolerant throughput (quadrature per point)."""
    quad = QuadratureSpec(rtol=1e-9)
    return optimize.grid_search(lambda t: throughput_dt(t, params, quad).value,
                                resolution=1e-7, points=points)
