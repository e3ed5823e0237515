"""Closed-form time-split solvers and a 1-D maximiser used to check them.

Each ``lemmaN`` returns the maximiser on (0, 1) of a fixed scalar family:

========  ============================================
lemma1    (1-x) * (1 - b*(1-x)/x)
lemma2    (1-x) * exp(-b/x)
lemma3    (1-x) * ln(1 + b*x/(1-x))
lemma4    (1-x) * (ln(x/(1-x)) + a)
========  ============================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .specfun import lambert_w0, lambert_w0_exp

TAU_EPS = 1e-6
COARSE_POINTS = 2048
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

METHODS = ("lemma1", "lemma2", "lemma3", "lemma4", "grid", "golden")


@dataclass(frozen=True)
class OptResult:
    tau_star: float
    objective_value: float
    method: str
    flat: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError("unknown method tag %r" % (self.method,))
        if not 0.0 < self.tau_star < 1.0:
            raise ValueError("tau_star must lie in (0, 1), got %r" % (self.tau_star,))


def _check_b(b):
    if not b > 0.0:
        raise ValueError("b must be positive, got %r" % (b,))


def lemma1(b: float) -> float:
    _check_b(b)
    return math.sqrt(b / (b + 1.0))


def lemma2(b: float) -> float:
    _check_b(b)
    # (sqrt(b^2+4b) - b)/2, rationalised to avoid cancellation at large b
    return 2.0 * b / (math.sqrt(b * b + 4.0 * b) + b)


def lemma3(b: float) -> float:
    _check_b(b)
    w = lambert_w0((b - 1.0) / math.e)
    ym1 = math.expm1(w + 1.0)
    return ym1 / (b + ym1)


def lemma4(a: float) -> float:
    # W + ln W = a - 1 for W = W(e^{a-1}), so the logit W + 1 - a is -ln W and
    # x* = 1/(1+W) without the cancellation of the direct form at large a
    return 1.0 / (1.0 + lambert_w0_exp(a - 1.0))


def lemma1_objective(b: float) -> Callable[[float], float]:
    return lambda x: (1.0 - x) * (1.0 - b * (1.0 - x) / x)


def lemma2_objective(b: float) -> Callable[[float], float]:
    return lambda x: (1.0 - x) * math.exp(-b / x)


def lemma3_objective(b: float) -> Callable[[float], float]:
    return lambda x: (1.0 - x) * math.log1p(b * x / (1.0 - x))


def lemma4_objective(a: float) -> Callable[[float], float]:
    return lambda x: (1.0 - x) * (math.log(x / (1.0 - x)) + a)


def lemma_derivative(which: int, p: float) -> Callable[[float], float]:
    """Analytic first derivative of the lemma objective (stationarity checks)."""
    if which == 1:
        return lambda x: -1.0 - p + p / (x * x)
    if which == 2:
        return lambda x: math.exp(-p / x) * (-1.0 + p * (1.0 - x) / (x * x))
    if which == 3:
        def d3(x):
            y = 1.0 + p * x / (1.0 - x)
            return (p + p * x / (1.0 - x)) / y - math.log(y)
        return d3
    if which == 4:
        return lambda x: -p + 1.0 / x - math.log(x / (1.0 - x))
    raise ValueError("lemma index must be 1..4")


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       xtol: float = 1e-10, max_iter: int = 200) -> tuple[float, float]:
    """Maximise a unimodal f on [lo, hi]; returns (x, f(x))."""
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
    x = 0.5 * (lo + hi)
    fx = f(x)
    best = max((fx, x), (f1, x1), (f2, x2))
    return best[1], best[0]


def grid_search(objective: Callable[[float], float], resolution: float = 1e-9,
                refine: bool = True, points: int = COARSE_POINTS,
                lo: float = TAU_EPS, hi: float = 1.0 - TAU_EPS) -> OptResult:
    """Maximise ``objective`` over [lo, hi].

    A uniform coarse grid locates the best cell; golden-section search then
    narrows it to ``resolution``. Unimodality is only assumed inside the
    bracketing cell pair, so a multimodal objective cannot trap the search in
    a minor peak that the coarse grid already out-scored.
    """
    if points < 3:
        raise ValueError("need at least 3 grid points")
    step = (hi - lo) / (points - 1)
    xs = [lo + i * step for i in range(points)]
    ys = [objective(x) for x in xs]
    i_best = max(range(points), key=lambda i: ys[i])
    y_best = ys[i_best]
    y_min = min(ys)
    # relative to the objective's own scale, so tiny but peaked objectives still refine
    flat = (y_best - y_min) <= 1e-14 * max(abs(y_best), abs(y_min))
    if flat or not refine:
        return OptResult(xs[i_best], y_best, "grid", flat=flat)
    a = xs[max(i_best - 1, 0)]
    b = xs[min(i_best + 1, points - 1)]
    x, fx = golden_section_max(objective, a, b, xtol=resolution)
    if fx < y_best:
        x, fx = xs[i_best], y_best
    return OptResult(x, fx, "golden")
