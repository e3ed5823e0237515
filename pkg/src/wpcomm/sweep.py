"""One-dimensional parameter sweeps written as CSV curves."""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np

from . import analytic_interf as ai
from . import analytic_noise as an
from . import montecarlo as mc
from . import optimize
from .model import InterferenceParams, SystemParams, fig11_d3
from .specfun import QuadratureError

log = logging.getLogger(__name__)

VARIABLES = ("tau", "P_dB", "PI_dB", "d1", "d3", "alpha", "N", "m")
ESTIMATORS = ("analytic", "mc", "bound-lower", "bound-upper", "tau-approx", "tau-exact")
SCENARIOS = ("noise", "interf")
CSV_HEADER = ("variable", "value", "estimator", "throughput", "std_error")

# quadrature-backed objectives are optimised on a coarser grid
_QUAD_GRID_POINTS = 256


class SweepError(ValueError):
    """The sweep specification is invalid."""


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    lo: float
    hi: float
    steps: int
    params: SystemParams = field(default_factory=SystemParams)
    interf: Optional[InterferenceParams] = None
    mode: str = "dc"
    scenario: str = "noise"
    estimator: str = "analytic"
    tau: Union[float, str] = 0.5
    trials: int = 10**5
    seed: int = 0
    # d2 = d12_total - d1 when sweeping d1 with the source on the PB-D line
    d12_total: Optional[float] = None
    # d4 = d34_total - d3 when sweeping d3
    d34_total: Optional[float] = None
    # if set, d3 follows from d2, d4 and this angle by the law of cosines
    theta: Optional[float] = None

    def validate(self) -> "SweepSpec":
        if self.variable not in VARIABLES:
            raise SweepError("unknown sweep variable %r (choose from %s)"
                             % (self.variable, ", ".join(VARIABLES)))
        if not self.lo < self.hi:
            raise SweepError("range needs lo < hi")
        if self.steps < 2:
            raise SweepError("range needs at least 2 steps")
        if self.mode not in ("dc", "dt"):
            raise SweepError("mode must be dc or dt")
        if self.scenario not in SCENARIOS:
            raise SweepError("scenario must be noise or interf")
        if self.estimator not in ESTIMATORS:
            raise SweepError("unknown estimator %r" % (self.estimator,))
        if self.scenario == "interf" and self.interf is None:
            raise SweepError("interference scenario needs interferer parameters (PI_dB, d3, d4)")
        if self.variable in ("PI_dB", "d3") and self.scenario != "interf":
            raise SweepError("%s only exists in the interference scenario" % self.variable)
        if self.tau == "opt":
            if self.variable == "tau":
                raise SweepError("cannot sweep tau with tau=opt")
        elif not (isinstance(self.tau, (int, float)) and 0.0 < self.tau < 1.0):
            raise SweepError("tau must be in (0, 1) or 'opt'")
        if self.estimator == "mc" and self.trials < mc.MIN_TRIALS:
            raise SweepError("mc estimator needs trials >= %d" % mc.MIN_TRIALS)
        for v in self.values():
            self.point(v)  # raises on invalid combinations
        return self

    def values(self) -> np.ndarray:
        vals = np.linspace(self.lo, self.hi, self.steps)
        if self.variable in ("N", "m"):
            if not np.allclose(vals, np.round(vals)):
                raise SweepError("%s must take integer values; adjust the range" % self.variable)
            vals = np.round(vals)
        return vals

    def point(self, value: float):
        """(params, interf, tau) at one sweep value."""
        p, it, tau = self.params, self.interf, self.tau
        v = float(value)
        try:
            if self.variable == "tau":
                tau = v
            elif self.variable == "P_dB":
                p = replace(p, p_db=v)
            elif self.variable == "PI_dB":
                it = replace(it, pi_db=v)
            elif self.variable == "d1":
                p = replace(p, d1=v)
                if self.d12_total is not None:
                    p = replace(p, d2=self.d12_total - v)
            elif self.variable == "d3":
                it = replace(it, d3=v)
                if self.d34_total is not None:
                    it = replace(it, d4=self.d34_total - v)
            elif self.variable == "alpha":
                p = replace(p, alpha=v)
            elif self.variable == "N":
                p = replace(p, n_antennas=int(v))
            elif self.variable == "m":
                p = replace(p, nakagami_m=int(v))
            if self.theta is not None and it is not None:
                it = replace(it, d3=fig11_d3(p.d2, it.d4, self.theta))
        except ValueError as exc:
            raise SweepError("invalid parameters at %s=%g: %s" % (self.variable, v, exc)) from None
        if self.scenario == "noise":
            it = None
        return p, it, tau


@dataclass
class ThroughputCurve:
    variable: str
    rows: list = field(default_factory=list)  # (value, estimator, throughput, std_error)
    spec: Optional[SweepSpec] = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for value, est, thr, se in self.rows:
            writer.writerow((self.variable, _fmt(value), est, _fmt(thr), _fmt(se)))
        return buf.getvalue()

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if math.isnan(x):
        return "nan"
    return "%.12g" % x


def _unavailable(spec):
    return SweepError("estimator %r is not available for mode=%s scenario=%s"
                      % (spec.estimator, spec.mode, spec.scenario))


def _optimal_tau(spec, p, it):
    """tau* of the quantity the estimator reports (exact where one exists)."""
    noise = spec.scenario == "noise"
    if spec.mode == "dc":
        if noise:
            return an.tau_star_dc_exact(p).tau_star
        if spec.estimator == "bound-upper":
            return optimize.grid_search(lambda t: ai.throughput_dc_upper(t, p, it).value,
                                        resolution=1e-7, points=_QUAD_GRID_POINTS).tau_star
        return ai.tau_star_dc_interference(p, it, points=_QUAD_GRID_POINTS).tau_star
    if noise:
        if spec.estimator == "bound-lower":
            return an.tau_star_dt_lower(p).tau_star
        return an.tau_star_dt_exact(p, points=_QUAD_GRID_POINTS).tau_star
    # no exact delay-tolerant interference expression: use the bound's optimum
    return ai.tau_star_dt_interference(p, it).tau_star


def _evaluate(spec: SweepSpec, p, it, tau, seed):
    est, mode, noise = spec.estimator, spec.mode, spec.scenario == "noise"
    if est == "tau-approx":
        if noise and mode == "dc":
            out = [("tau-approx-largeN", an.tau_star_largeN(p).tau_star, 0.0)]
            if p.nm >= 2:
                out.insert(0, ("tau-approx-highP", an.tau_star_highP(p).tau_star, 0.0))
            return out
        if noise and mode == "dt":
            return [("tau-approx-lower", an.tau_star_dt_lower(p).tau_star, 0.0),
                    ("tau-approx-highsnr", an.tau_star_dt_highsnr(p).tau_star, 0.0)]
        if not noise and mode == "dt":
            return [("tau-approx-lower", ai.tau_star_dt_interference(p, it).tau_star, 0.0)]
        raise _unavailable(spec)
    if est == "tau-exact":
        if mode == "dt" and not noise:
            raise _unavailable(spec)
        return [("tau-exact", _optimal_tau(replace(spec, estimator="analytic"), p, it), 0.0)]

    if tau == "opt":
        tau = _optimal_tau(spec, p, it)

    if est == "mc":
        e = mc.estimate_throughput(tau, p, mode, it, spec.trials, seed)
        return [("mc", e.mean, e.std_error)]
    if est == "analytic":
        if noise:
            r = an.throughput_dc(tau, p) if mode == "dc" else an.throughput_dt(tau, p)
        elif mode == "dc":
            r = ai.throughput_dc_interference(tau, p, it)
        else:
            raise _unavailable(spec)
        return [("analytic", r.value, 0.0)]
    if est == "bound-lower" and mode == "dt":
        r = an.throughput_dt_lower(tau, p) if noise else ai.throughput_dt_lower_interference(tau, p, it)
        return [("bound-lower", r.value, 0.0)]
    if est == "bound-upper" and mode == "dc" and not noise:
        return [("bound-upper", ai.throughput_dc_upper(tau, p, it).value, 0.0)]
    raise _unavailable(spec)


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(1)[0])


def run_sweep(spec: SweepSpec, threads: Optional[int] = None) -> ThroughputCurve:
    spec.validate()
    values = spec.values()

    def one(i):
        p, it, tau = spec.point(values[i])
        try:
            return _evaluate(spec, p, it, tau, _point_seed(spec.seed, i))
        except SweepError:
            raise
        except (ValueError, ArithmeticError, QuadratureError) as exc:
            log.warning("%s=%g: %s", spec.variable, values[i], exc)
            return [(spec.estimator, math.nan, math.nan)]

    threads = threads or mc.worker_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(len(values))))
    else:
        results = [one(i) for i in range(len(values))]

    curve = ThroughputCurve(spec.variable, spec=spec)
    for value, rows in zip(values, results):
        for label, thr, se in rows:
            curve.rows.append((float(value), label, thr, se))
    return curve
