"""Analytic-versus-Monte-Carlo agreement over a standard parameter grid."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from . import analytic_interf as ai
from . import analytic_noise as an
from . import montecarlo as mc
from .model import InterferenceParams, SystemParams, derive_constants

Z_LIMIT = 3.0
STANDARD_TAU = 0.5
STANDARD_INTERF = InterferenceParams(pi_db=20.0, d3=10.0, d4=10.0)

# 12 points covering N in {1,2,4,8}, m in {1,4} and P/N0 in {20,40,60} dB:
# every N and every m appears at every power level.
_NM_PAIRS = ((1, 1), (2, 4), (4, 1), (8, 4))
_POWERS = (20.0, 40.0, 60.0)


def standard_grid() -> list[SystemParams]:
    return [SystemParams(n_antennas=n, nakagami_m=m, p_db=p)
            for p in _POWERS for n, m in _NM_PAIRS]


@dataclass(frozen=True)
class Comparison:
    label: str
    quantity: str
    analytic: float
    estimate: float
    std_error: float

    @property
    def z(self) -> float:
        diff = abs(self.analytic - self.estimate)
        if diff == 0.0:
            return 0.0
        return diff / self.std_error if self.std_error > 0 else math.inf

    @property
    def passed(self) -> bool:
        return self.z <= Z_LIMIT


def _proportion_se(p: float, est: mc.McEstimate) -> float:
    # Under the null the indicator has variance p(1-p); this keeps the test
    # meaningful when no (or every) trial lands in outage.
    p = min(max(p, 0.0), 1.0)
    return max(est.std_error, math.sqrt(p * (1.0 - p) / est.trials))


def _seed(seed: int, point: int, quantity: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(point, quantity)).generate_state(1)[0])


def compare_point(params: SystemParams, index: int, trials: int, seed: int,
                  tau: float = STANDARD_TAU,
                  interf: InterferenceParams = STANDARD_INTERF) -> list[Comparison]:
    label = "N=%d m=%d P=%gdB" % (params.n_antennas, params.nakagami_m, params.p_db)
    out = []

    p = an.outage_noise(tau, params)
    est = mc.estimate_outage_noise(tau, params, trials, _seed(seed, index, 0))
    out.append(Comparison(label, "outage-noise", p, est.mean, _proportion_se(p, est)))

    c = an.ergodic_capacity(tau, params)
    est = mc.estimate_capacity_noise(tau, params, trials, _seed(seed, index, 1))
    out.append(Comparison(label, "capacity-noise", c, est.mean, est.std_error))

    p = ai.outage_interference(tau, params, interf)
    est = mc.estimate_outage_interf(tau, params, interf, trials, _seed(seed, index, 2))
    out.append(Comparison(label, "outage-interf", p, est.mean, _proportion_se(p, est)))

    dist = ai.VDistribution.from_params(params, interf)
    v = ai.ln_moment_v(dist)
    est = mc.estimate_ln_v(params.n_antennas, params.nakagami_m, dist.rho1, dist.rho_i,
                           trials, _seed(seed, index, 3))
    out.append(Comparison(label, "ln-moment-v", v, est.mean, est.std_error))

    b1 = derive_constants(params, interf).b1
    u = ai.ln_moment_u(b1)
    est = mc.estimate_ln_u(b1, trials, _seed(seed, index, 4))
    out.append(Comparison(label, "ln-moment-u", u, est.mean, est.std_error))
    return out


def run_grid(points: Optional[Iterable[SystemParams]] = None, trials: int = 10**6,
             seed: int = 2024, progress: Optional[Callable[[str], None]] = None) -> list[Comparison]:
    points = standard_grid() if points is None else list(points)
    rows = []
    for i, params in enumerate(points):
        rows.extend(compare_point(params, i, trials, seed))
        if progress:
            progress("point %d/%d done" % (i + 1, len(points)))
    return rows


def format_report(rows: list[Comparison]) -> str:
    lines = ["%-22s %-15s %15s %15s %11s %7s %s"
             % ("point", "quantity", "analytic", "monte-carlo", "std-err", "z", "result")]
    for r in rows:
        lines.append("%-22s %-15s %15.9g %15.9g %11.3e %7.3f %s"
                     % (r.label, r.quantity, r.analytic, r.estimate, r.std_error, r.z,
                        "PASS" if r.passed else "FAIL"))
    n_fail = sum(not r.passed for r in rows)
    lines.append("%d comparisons, %d failed (limit %.1f standard errors)"
                 % (len(rows), n_fail, Z_LIMIT))
    return "\n".join(lines) + "\n"
