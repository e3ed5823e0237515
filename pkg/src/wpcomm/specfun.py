"""Special functions and adaptive quadrature.

The scalar kernels come from the compiled ``_cspecfun`` extension when it is
built, otherwise from the pure-Python ``_pyspecfun`` module. Setting the
environment variable ``WPCOMM_PURE_PYTHON=1`` forces the fallback.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass
from typing import Callable

from . import _pyspecfun

if os.environ.get("WPCOMM_PURE_PYTHON", "") not in ("", "0"):
    _kernels = _pyspecfun
else:
    try:
        from . import _cspecfun as _kernels
    except ImportError:  # extension not built
        _kernels = _pyspecfun

BACKEND = "cython" if _kernels is not _pyspecfun else "python"

EULER_GAMMA = _pyspecfun.EULER_GAMMA

ln_gamma = _kernels.ln_gamma
digamma = _kernels.digamma
log_bessel_k_scaled = _kernels.log_bessel_k_scaled
lambert_w0 = _kernels.lambert_w0
lambert_w0_exp = _kernels.lambert_w0_exp


def bessel_k(order: int, x: float) -> float:
    """Modified Bessel function of the second kind K_n(x), integer n >= 0."""
    return math.exp(log_bessel_k_scaled(order, x) - x)


def bessel_k_scaled(order: int, x: float) -> float:
    """e^x K_n(x); stays finite where K_n(x) itself underflows."""
    return math.exp(log_bessel_k_scaled(order, x))


def log_bessel_k(order: int, x: float) -> float:
    """ln K_n(x), usable where K_n overflows (large order, small x)."""
    return log_bessel_k_scaled(order, x) - x


def expint_ei(x: float) -> float:
    """Exponential integral Ei(x) for x < 0."""
    if not x < 0.0:
        raise ValueError("expint_ei is only defined here for x < 0, got %r" % (x,))
    return -_kernels.exp_e1(-x) * math.exp(x)


def expint_ei_scaled(x: float) -> float:
    """e^{-x} Ei(x) for x < 0, i.e. e^{b} Ei(-b) with b = -x."""
    if not x < 0.0:
        raise ValueError("expint_ei_scaled requires x < 0, got %r" % (x,))
    return -_kernels.exp_e1(-x)


# ---------------------------------------------------------------------------
# quadrature

class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    rtol: float = 1e-10
    atol: float = 1e-300
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not (self.rtol > 0 and self.atol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUAD = QuadratureSpec()

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
_XGK = (0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0)
_WGK = (0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714)
_WG = (0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
       0.381830050505118944950369775488975, 0.417959183673469387755102040816327)


def _gk15(f, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        fsum = f(center - dx) + f(center + dx)
        resk += _WGK[j] * fsum
        if j % 2 == 1:
            resg += _WG[j // 2] * fsum
    resk *= half
    resg *= half
    err = abs(resk - resg)
    if not math.isfinite(resk):
        raise QuadratureError("integrand is not finite on [%g, %g]" % (a, b))
    return resk, err


def integrate(f: Callable[[float], float], a: float, b: float,
              spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Globally adaptive Gauss-Kronrod quadrature of f over finite [a, b].

    Raises QuadratureError when the tolerance is not met within
    ``spec.max_subdivisions`` interval splits.
    """
    if a == b:
        return 0.0
    est, err = _gk15(f, a, b)
    heap = [(-err, a, b, est)]
    total_est = est
    total_err = err
    splits = 0
    while total_err > max(spec.atol, spec.rtol * abs(total_est)):
        if splits >= spec.max_subdivisions:
            raise QuadratureError(
                "no convergence after %d subdivisions (estimate %.6g, error %.3g)"
                % (splits, total_est, total_err))
        neg_err, lo, hi, old = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise QuadratureError("interval collapsed near x=%g" % mid)
        e1, r1 = _gk15(f, lo, mid)
        e2, r2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-r1, lo, mid, e1))
        heapq.heappush(heap, (-r2, mid, hi, e2))
        total_est += e1 + e2 - old
        total_err += r1 + r2 + neg_err
        splits += 1
    # Re-sum to drop drift from the running updates.
    return math.fsum(item[3] for item in heap)


def integrate_semi_infinite(f: Callable[[float], float],
                            spec: QuadratureSpec = DEFAULT_QUAD,
                            pivot: float = 1.0) -> float:
    """Integrate f over (0, inf).

    [0, pivot] is mapped by x = pivot*u^2, which flattens integrable
    singularities at the origin; [pivot, inf) is mapped by x = pivot/t. Both
    pieces share one adaptive error budget. ``pivot`` should sit near the
    bulk of the integrand (e.g. the mean of a density factor).
    """
    if not pivot > 0:
        raise ValueError("pivot must be positive")

    def mapped(u):
        if u <= 1.0:
            x = pivot * u * u
            if x == 0.0:
                return 0.0
            return f(x) * 2.0 * pivot * u
        t = 2.0 - u
        x = pivot / t
        if math.isinf(x):
            return 0.0
        val = f(x)
        if val == 0.0:
            return 0.0
        return val * pivot / (t * t)

    return integrate(mapped, 0.0, 2.0, spec)
