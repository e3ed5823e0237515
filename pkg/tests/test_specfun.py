"""Special functions against high-precision references, plus identities."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpcomm import _pyspecfun, specfun


def rel(a, b):
    return abs(a - b) / abs(b)


# --- ln_gamma / digamma -------------------------------------------------------

@pytest.mark.parametrize("x, expected", [
    (1.0, 0.0),
    (5.0, math.log(24.0)),
    (0.5, 0.5 * math.log(math.pi)),
])
def test_ln_gamma_known_values(kernels, x, expected):
    assert kernels.ln_gamma(x) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("x", [1e-3, 0.1, 0.7, 1.5, 3.3, 14.9, 15.1, 40.0, 171.5, 1e5])
def test_ln_gamma_vs_mpmath(kernels, x):
    assert kernels.ln_gamma(x) == pytest.approx(float(mpmath.loggamma(x)), rel=1e-13, abs=1e-14)


def test_digamma_known_values(kernels):
    assert kernels.digamma(1.0) == pytest.approx(-0.5772156649015329, abs=1e-14)
    assert kernels.digamma(2.0) == pytest.approx(1.0 - 0.5772156649015329, abs=1e-14)


def _digamma_oracle(x):
    # asymptotic expansion at x + 20, then recurrence back down, in 40 digits
    y = mpmath.mpf(x) + 20
    s = mpmath.log(y) - 1 / (2 * y)
    for k in range(1, 12):
        s -= mpmath.bernoulli(2 * k) / (2 * k * y ** (2 * k))
    for j in range(20):
        s -= 1 / (mpmath.mpf(x) + j)
    return float(s)


@pytest.mark.parametrize("x", [8.0, 0.05, 0.9, 3.7, 9.99, 10.01, 250.0])
def test_digamma_vs_series_oracle(kernels, x):
    assert kernels.digamma(x) == pytest.approx(_digamma_oracle(x), rel=1e-13, abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 100.0))
def test_digamma_recurrence(x):
    assert abs(specfun.digamma(x + 1.0) - specfun.digamma(x) - 1.0 / x) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 1e4))
def test_ln_gamma_recurrence(x):
    lhs = specfun.ln_gamma(x + 1.0)
    rhs = specfun.ln_gamma(x) + math.log(x)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_ln_gamma_domain(kernels):
    with pytest.raises(ValueError):
        kernels.ln_gamma(0.0)
    with pytest.raises(ValueError):
        kernels.digamma(-1.0)


# --- Bessel K -----------------------------------------------------------------

def _bessel_oracle(n, x):
    # power series for K0 and K1 in 40-digit arithmetic, then forward recurrence
    x = mpmath.mpf(x)
    q = x * x / 4
    lnh = mpmath.log(x / 2)
    i0 = s0 = i1 = s1 = mpmath.mpf(0)
    term0 = term1 = mpmath.mpf(1)
    harm = mpmath.mpf(0)
    for k in range(400):
        hk1 = harm + mpmath.mpf(1) / (k + 1)
        i0 += term0
        s0 += harm * term0
        i1 += term1
        s1 += (harm + hk1 - 2 * mpmath.euler) * term1
        term0 *= q / ((k + 1) ** 2)
        term1 *= q / ((k + 1) * (k + 2))
        harm = hk1
    k0 = -(lnh + mpmath.euler) * i0 + s0
    k1 = 1 / x + lnh * x / 2 * i1 - x / 4 * s1
    if n == 0:
        return k0
    for j in range(1, n):
        k0, k1 = k1, k0 + 2 * j / x * k1
    return k1


@pytest.mark.parametrize("n, x", [(0, 1.0), (2, 0.1), (1, 0.5), (5, 2.0), (12, 3.5), (3, 7.0)])
def test_bessel_k_vs_series_oracle(n, x):
    with mpmath.workdps(60):
        expected = float(_bessel_oracle(n, x))
    assert specfun.bessel_k(n, x) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("n", [0, 1, 4, 16, 40, 80])
@pytest.mark.parametrize("x", [1e-3, 0.02, 0.7, 1.99, 2.01, 9.0, 60.0, 700.0])
def test_log_bessel_k_scaled_vs_mpmath(kernels, n, x):
    expected = float(mpmath.log(mpmath.besselk(n, x)) + x)
    got = kernels.log_bessel_k_scaled(n, x)
    assert got == pytest.approx(expected, rel=1e-13, abs=1e-13)


@pytest.mark.parametrize("n", [0, 1, 3, 10])
def test_bessel_k_large_argument_asymptote(n):
    x = 1e6
    ratio = specfun.bessel_k_scaled(n, x) / math.sqrt(math.pi / (2 * x))
    assert ratio == pytest.approx(1.0, abs=1e-4)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 40), st.floats(0.01, 50.0))
def test_bessel_k_recurrence(n, x):
    # K_{n+1} = K_{n-1} + (2n/x) K_n, checked on the scaled functions
    lo = specfun.bessel_k_scaled(n - 1, x)
    mid = specfun.bessel_k_scaled(n, x)
    hi = specfun.bessel_k_scaled(n + 1, x)
    if math.isinf(hi):
        ln_hi = specfun.log_bessel_k_scaled(n + 1, x)
        ln_rhs = specfun.log_bessel_k_scaled(n, x) + math.log(2 * n / x + math.exp(
            specfun.log_bessel_k_scaled(n - 1, x) - specfun.log_bessel_k_scaled(n, x)))
        assert ln_hi == pytest.approx(ln_rhs, rel=1e-8)
    else:
        assert hi == pytest.approx(lo + 2.0 * n / x * mid, rel=1e-8)


def test_bessel_k_domain(kernels):
    with pytest.raises(ValueError):
        kernels.log_bessel_k_scaled(0, 0.0)
    with pytest.raises(ValueError):
        kernels.log_bessel_k_scaled(-1, 1.0)


# --- exponential integral ----------------------------------------------------

def test_expint_ei_minus_one():
    # independent oracle: quadrature of e^t/t over (-inf, -1]
    oracle = float(mpmath.quad(lambda t: mpmath.exp(t) / t, [-mpmath.inf, -1]))
    assert specfun.expint_ei(-1.0) == pytest.approx(oracle, rel=1e-13)
    assert specfun.expint_ei(-1.0) == pytest.approx(-0.2193839344, abs=1e-10)


def test_expint_ei_log_singularity():
    vals = [specfun.expint_ei(-10.0 ** -k) - math.log(10.0 ** -k) for k in range(3, 12)]
    assert all(abs(v - 0.5772156649015329) < 1e-2 for v in vals)


def test_expint_ei_asymptotic():
    x = -20.0
    assert specfun.expint_ei(x) / (math.exp(x) / x) == pytest.approx(1.0, abs=0.1)


@pytest.mark.parametrize("y", [1e-8, 0.3, 0.999, 1.001, 5.0, 50.0, 800.0])
def test_exp_e1_vs_mpmath(kernels, y):
    expected = float(mpmath.exp(y) * mpmath.e1(y))
    assert kernels.exp_e1(y) == pytest.approx(expected, rel=1e-13)


def test_expint_domain():
    with pytest.raises(ValueError):
        specfun.expint_ei(0.5)


# --- Lambert W ----------------------------------------------------------------

def _w_bisect(x):
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_lambert_w_known_values(kernels):
    assert kernels.lambert_w0(0.0) == 0.0
    assert kernels.lambert_w0(math.e) == pytest.approx(1.0, abs=1e-15)
    assert kernels.lambert_w0(1.0) == pytest.approx(_w_bisect(1.0), abs=1e-15)
    assert kernels.lambert_w0(1.0) == pytest.approx(0.5671432904, abs=1e-10)
    assert kernels.lambert_w0(-1.0 / math.e) == pytest.approx(-1.0, abs=1e-7)


@pytest.mark.parametrize("x", [-0.3678794, -0.3, -0.1, 1e-12, 0.5, 3.0, 100.0, 1e8, 1e300])
def test_lambert_w_vs_mpmath(kernels, x):
    assert kernels.lambert_w0(x) == pytest.approx(float(mpmath.lambertw(x)), rel=1e-13, abs=1e-15)


@settings(max_examples=500, deadline=None)
@given(st.floats(-1.0 / math.e + 1e-6, 1e6))
def test_lambert_w_round_trip(x):
    w = specfun.lambert_w0(x)
    assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, abs(x))


@pytest.mark.parametrize("y", [-700.0, -5.0, 0.0, 1.0, 19.9, 20.1, 300.0, 1e5])
def test_lambert_w0_exp(kernels, y):
    expected = float(mpmath.lambertw(mpmath.exp(y)))
    assert kernels.lambert_w0_exp(y) == pytest.approx(expected, rel=1e-14, abs=1e-300)


def test_lambert_w_domain(kernels):
    with pytest.raises(ValueError):
        kernels.lambert_w0(-0.5)


# --- backends agree -----------------------------------------------------------

@pytest.mark.skipif(specfun.BACKEND != "cython", reason="compiled backend not built")
def test_backends_bit_identical():
    from wpcomm import _cspecfun
    xs = [1e-3 * 1.37 ** k for k in range(60)]
    for x in xs:
        assert _cspecfun.ln_gamma(x) == _pyspecfun.ln_gamma(x)
        assert _cspecfun.digamma(x) == _pyspecfun.digamma(x)
        assert _cspecfun.exp_e1(x) == _pyspecfun.exp_e1(x)
        assert _cspecfun.lambert_w0(x) == _pyspecfun.lambert_w0(x)
        for n in (0, 1, 7, 33):
            assert _cspecfun.log_bessel_k_scaled(n, x) == _pyspecfun.log_bessel_k_scaled(n, x)


# --- quadrature ---------------------------------------------------------------

def test_semi_infinite_exponential():
    assert specfun.integrate_semi_infinite(lambda x: math.exp(-x)) == pytest.approx(1.0, rel=1e-12)
    assert specfun.integrate_semi_infinite(lambda x: x * math.exp(-x)) == pytest.approx(1.0, rel=1e-12)


def test_semi_infinite_bessel_identity():
    # integral of x^{1/2} K_1(2 sqrt x) over (0, inf) is Gamma(2) Gamma(1) / 2
    f = lambda x: math.sqrt(x) * specfun.bessel_k(1, 2.0 * math.sqrt(x)) if x > 0 else 0.0
    assert specfun.integrate_semi_infinite(f) == pytest.approx(0.5, rel=1e-10)
    brute = float(mpmath.quad(lambda x: mpmath.sqrt(x) * mpmath.besselk(1, 2 * mpmath.sqrt(x)),
                              [0, 1, 10, mpmath.inf]))
    assert brute == pytest.approx(0.5, rel=1e-12)


def test_finite_interval_polynomial():
    assert specfun.integrate(lambda x: x ** 5, 0.0, 2.0) == pytest.approx(64.0 / 6.0, rel=1e-14)


@pytest.mark.parametrize("f", [
    lambda x: math.exp(-x) * math.cos(3 * x),
    lambda x: 1.0 / (1.0 + x * x),
    lambda x: math.log1p(x) * math.exp(-0.1 * x),
])
def test_quadrature_tolerance_halving(f):
    coarse = specfun.QuadratureSpec(rtol=1e-8)
    fine = specfun.QuadratureSpec(rtol=5e-9)
    a = specfun.integrate_semi_infinite(f, coarse)
    b = specfun.integrate_semi_infinite(f, fine)
    assert abs(a - b) <= 1e-8 * abs(b)


def test_quadrature_budget_exhaustion():
    spec = specfun.QuadratureSpec(rtol=1e-15, max_subdivisions=3)
    with pytest.raises(specfun.QuadratureError):
        specfun.integrate(lambda x: math.sin(1.0 / x) if x else 0.0, 0.0, 1.0, spec)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        specfun.QuadratureSpec(rtol=0.0)
