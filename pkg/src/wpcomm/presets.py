"""Sweep presets for the published figures.

Common settings: R_c = 1 (gamma_th = 1), eta = 0.4, alpha = 2.5, m = 4,
d1 = 8 m, d2 = 15 m. Wherever a figure leaves a setting open (antenna
counts, axis ranges, interference levels, transmit power), the choice made
here is written next to the preset as an ASSUMPTION comment.
"""

from __future__ import annotations

import math
from dataclasses import replace

from .model import InterferenceParams, SystemParams
from .sweep import SweepSpec

BASE = SystemParams(n_antennas=4, nakagami_m=4, eta=0.4, alpha=2.5, d1=8.0, d2=15.0,
                    p_db=40.0, rate=1.0)

# ASSUMPTION: power axes are swept over 20..80 dB in 2 dB steps; the curves
# go from full outage to the R_c(1-tau) ceiling inside that window.
P_LO, P_HI, P_STEPS = 20.0, 80.0, 31


def _curves(prefix, base_spec, antennas, estimators, **extra):
    out = []
    for n in antennas:
        for est in estimators:
            spec = replace(base_spec, params=replace(base_spec.params, n_antennas=n),
                           estimator=est, **extra)
            out.append(("%s_N%d_%s" % (prefix, n, est), spec))
    return out


def fig2a():
    # Delay-intolerant, noise only, tau = 0.5.
    # ASSUMPTION: N in {1, 4, 8}.
    spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=BASE, mode="dc", scenario="noise", tau=0.5)
    return _curves("fig2a", spec, (1, 4, 8), ("analytic", "mc"))


def fig2b():
    # Delay-intolerant with interference, tau = 0.4, d3 = d4 = 10 m.
    # ASSUMPTION: N in {1, 4}; P_I/N0 = 20 dB (weak) and 40 dB (strong).
    out = []
    for pi_db in (20.0, 40.0):
        spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=BASE,
                         interf=InterferenceParams(pi_db=pi_db, d3=10.0, d4=10.0),
                         mode="dc", scenario="interf", tau=0.4)
        out += _curves("fig2b_PI%g" % pi_db, spec, (1, 4), ("analytic", "bound-upper", "mc"))
    return out


def fig3a():
    # Delay-tolerant, noise only, tau in {0.2, 0.5}.
    # ASSUMPTION: N in {1, 4}.
    out = []
    for tau in (0.2, 0.5):
        spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=BASE, mode="dt",
                         scenario="noise", tau=tau)
        out += _curves("fig3a_tau%g" % tau, spec, (1, 4), ("analytic", "bound-lower", "mc"))
    return out


def fig3b():
    # Delay-tolerant with interference, tau = 0.5, P_I/N0 = 10 dB, d3 = 10 m, d4 = 20 m.
    # ASSUMPTION: N in {1, 4}. No exact expression exists here, only the bound and MC.
    spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=BASE,
                     interf=InterferenceParams(pi_db=10.0, d3=10.0, d4=20.0),
                     mode="dt", scenario="interf", tau=0.5)
    return _curves("fig3b", spec, (1, 4), ("bound-lower", "mc"))


def fig4a():
    # Optimal tau: high-power closed form against the exact optimum.
    # ASSUMPTION: N in {2, 4, 8}.
    spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=BASE, mode="dc", scenario="noise")
    return _curves("fig4a", spec, (2, 4, 8), ("tau-approx", "tau-exact"))


def fig4b():
    # Optimal tau: large-N closed form against the exact optimum.
    # ASSUMPTION: N in {2, 8}; same power axis as fig4a.
    spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=BASE, mode="dc", scenario="noise")
    return _curves("fig4b", spec, (2, 8), ("tau-approx", "tau-exact"))


def fig5():
    # Delay-tolerant, optimised tau, N = 2, d3 = 5 m, d4 = 15 m.
    # ASSUMPTION: P_I/N0 in {10, 20, 30} dB plus the noise-only reference.
    # With interference the optimum is taken from the lower bound (closed form).
    base = replace(BASE, n_antennas=2)
    out = []
    spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=base, mode="dt", scenario="noise", tau="opt")
    out.append(("fig5_noise_bound-lower", replace(spec, estimator="bound-lower")))
    out.append(("fig5_noise_mc", replace(spec, estimator="mc")))
    for pi_db in (10.0, 20.0, 30.0):
        spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=base,
                         interf=InterferenceParams(pi_db=pi_db, d3=5.0, d4=15.0),
                         mode="dt", scenario="interf", tau="opt")
        out.append(("fig5_PI%g_bound-lower" % pi_db, replace(spec, estimator="bound-lower")))
        out.append(("fig5_PI%g_mc" % pi_db, replace(spec, estimator="mc")))
    return out


def fig6():
    # Delay-tolerant, optimised tau, N = 2, P/N0 = P_I/N0 = 30 dB, d3 + d4 = 20 m.
    # ASSUMPTION: alpha in {2, 2.5, 3}; d3 swept over 1..19 m. The noise-only
    # reference does not depend on d3 and is left to a separate sweep.
    out = []
    for alpha in (2.0, 2.5, 3.0):
        base = replace(BASE, n_antennas=2, p_db=30.0, alpha=alpha)
        spec = SweepSpec("d3", 1.0, 19.0, 19, params=base,
                         interf=InterferenceParams(pi_db=30.0, d3=10.0, d4=10.0),
                         mode="dt", scenario="interf", tau="opt", d34_total=20.0)
        out.append(("fig6_alpha%g_bound-lower" % alpha, replace(spec, estimator="bound-lower")))
        out.append(("fig6_alpha%g_mc" % alpha, replace(spec, estimator="mc")))
    return out


def fig7():
    # Delay-tolerant, optimised tau, N = 2, d3 = 8 m, d4 = 15 m, P/N0 = 40 dB.
    # ASSUMPTION: alpha in {2, 2.5, 3}; P_I/N0 swept over 0..60 dB.
    out = []
    for alpha in (2.0, 2.5, 3.0):
        base = replace(BASE, n_antennas=2, p_db=40.0, alpha=alpha)
        spec = SweepSpec("PI_dB", 0.0, 60.0, 31, params=base,
                         interf=InterferenceParams(pi_db=0.0, d3=8.0, d4=15.0),
                         mode="dt", scenario="interf", tau="opt")
        out.append(("fig7_alpha%g_bound-lower" % alpha, replace(spec, estimator="bound-lower")))
        out.append(("fig7_alpha%g_mc" % alpha, replace(spec, estimator="mc")))
    return out


def fig8():
    # Impact of m on delay-intolerant throughput, tau = 0.4.
    # ASSUMPTION: the horizontal axis is P/N0; m in {1, 4, 10} for N in {1, 10}.
    out = []
    for m in (1, 4, 10):
        spec = SweepSpec("P_dB", P_LO, P_HI, P_STEPS, params=replace(BASE, nakagami_m=m),
                         mode="dc", scenario="noise", tau=0.4)
        out += _curves("fig8_m%d" % m, spec, (1, 10), ("analytic",))
    return out


def fig11():
    # Source position: PB, S, D collinear with d1 + d2 = 30 m, N = 6, m = 4,
    # optimised tau. Interferer at d4 = 15 m from D with angle pi/6, so
    # d3 = sqrt(d2^2 + d4^2 - 2 d2 d4 cos(pi/6)).
    # ASSUMPTION: delay-intolerant mode, P/N0 = 50 dB, P_I/N0 = 20 dB, d1 in 1..29 m.
    base = replace(BASE, n_antennas=6, p_db=50.0)
    noise = SweepSpec("d1", 1.0, 29.0, 29, params=base, mode="dc", scenario="noise",
                      tau="opt", d12_total=30.0)
    interf = SweepSpec("d1", 1.0, 29.0, 29, params=base,
                       interf=InterferenceParams(pi_db=20.0, d3=10.0, d4=15.0),
                       mode="dc", scenario="interf", tau="opt", d12_total=30.0,
                       theta=math.pi / 6)
    return [("fig11_noise_analytic", noise), ("fig11_interf_analytic", interf)]


FIGURES = {
    "2a": fig2a, "2b": fig2b, "3a": fig3a, "3b": fig3b, "4a": fig4a, "4b": fig4b,
    "5": fig5, "6": fig6, "7": fig7, "8": fig8, "11": fig11,
}
