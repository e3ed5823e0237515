import math

import numpy as np
import pytest

from wpcomm import analytic_noise as an
from wpcomm import montecarlo as mc
from wpcomm.model import InterferenceParams, SystemParams


def regularized_lower_gamma(n, x):
    # P(n, x) = 1 - e^{-x} sum_{k<n} x^k/k! for integer n
    term, total = 1.0, 0.0
    for k in range(n):
        total += term
        term *= x / (k + 1)
    return 1.0 - math.exp(-x) * total


def test_sample_h2_moments():
    rng = mc.chunk_rng(1, 0)
    draws = mc.sample_h2(4, 4, rng, 10**6)
    se = math.sqrt(4 / 4 / 10**6)
    assert abs(draws.mean() - 4.0) <= 3 * se
    assert draws.var() == pytest.approx(1.0, rel=0.01)


def test_sample_h2_ks():
    draws = np.sort(mc.sample_h2(2, 3, mc.chunk_rng(2, 0), 10**6))
    xs = np.quantile(draws, np.linspace(0.001, 0.999, 300))
    emp = np.searchsorted(draws, xs, side="right") / draws.size
    # ||h||^2 ~ Gamma(Nm, 1/m): CDF is P(Nm, m x)
    ref = np.array([regularized_lower_gamma(6, 3 * x) for x in xs])
    assert np.max(np.abs(emp - ref)) < 0.002


def test_sample_h2_scalar_and_validation():
    assert isinstance(mc.sample_h2(2, 2, mc.chunk_rng(0, 0)), float)
    with pytest.raises(ValueError):
        mc.sample_h2(0, 2, mc.chunk_rng(0, 0), 10)


def test_outage_vanishes_at_high_power():
    est = mc.estimate_outage_noise(0.5, SystemParams(p_db=150), 10**4, seed=1)
    assert est.mean == 0.0


def test_product_cdf_special_case():
    p = SystemParams(n_antennas=2, nakagami_m=1, p_db=45.0)
    est = mc.estimate_outage_noise(0.5, p, 10**6, seed=9)
    exact = an.outage_noise(0.5, p)
    se = max(est.std_error, math.sqrt(exact * (1 - exact) / est.trials))
    assert abs(est.mean - exact) <= 3 * se


def test_same_seed_bit_identical():
    p, it = SystemParams(p_db=60), InterferenceParams()
    a = mc.estimate_capacity_interf(0.3, p, it, 200000, seed=77)
    b = mc.estimate_capacity_interf(0.3, p, it, 200000, seed=77)
    assert a == b
    c = mc.estimate_capacity_interf(0.3, p, it, 200000, seed=78)
    assert c.mean != a.mean


@pytest.mark.parametrize("threads", [1, 2, 5])
def test_thread_count_independent(threads, monkeypatch):
    p = SystemParams(p_db=55)
    reference = mc.run(lambda rng, n: mc.sample_h2(4, 4, rng, n) * rng.standard_exponential(n),
                       300001, seed=5, threads=1)
    got = mc.run(lambda rng, n: mc.sample_h2(4, 4, rng, n) * rng.standard_exponential(n),
                 300001, seed=5, threads=threads)
    assert got == reference
    monkeypatch.setenv("WPC_THREADS", str(threads))
    assert mc.worker_count() == threads
    a = mc.estimate_throughput(0.4, p, "dt", None, 200000, seed=3)
    monkeypatch.setenv("WPC_THREADS", "1")
    b = mc.estimate_throughput(0.4, p, "dt", None, 200000, seed=3)
    assert a == b


def test_run_statistics_exact():
    # constant kernel: mean exact, zero spread
    est = mc.run(lambda rng, n: np.full(n, 2.5), 100000, seed=0)
    assert est.mean == 2.5 and est.std_error == 0.0
    # deterministic ramp across chunks: merged variance equals numpy's
    vals = np.arange(200000, dtype=float)
    est = mc.run(lambda rng, n: vals[:n] if n == mc.CHUNK else vals[-n:], 2 * mc.CHUNK, seed=0)
    data = np.concatenate([vals[:mc.CHUNK], vals[:mc.CHUNK]])
    assert est.mean == pytest.approx(data.mean(), rel=1e-15)
    assert est.std_error == pytest.approx(data.std(ddof=1) / math.sqrt(data.size), rel=1e-12)


def test_minimum_trials():
    with pytest.raises(ValueError):
        mc.estimate_outage_noise(0.5, SystemParams(), 999)
    with pytest.raises(ValueError):
        mc.estimate_throughput(0.5, SystemParams(), "xx", None, 10**4)


def test_estimate_scaling():
    e = mc.McEstimate(0.5, 0.01, 100, 1)
    assert e.scaled(-2.0) == mc.McEstimate(-1.0, 0.02, 100, 1)
    with pytest.raises(ValueError):
        mc.McEstimate(0.5, -1.0, 100, 1)
