"""Brute-force channel simulation used as the independent oracle.

Trials are split into fixed-size chunks. Chunk ``i`` draws from its own
PCG64 stream seeded by ``SeedSequence(seed, spawn_key=(i,))``, so the result
depends only on (seed, trials, parameters) and never on how many worker
threads ran the chunks. Chunk statistics are merged in chunk order with
exactly rounded sums.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .model import (InterferenceParams, SystemParams, check_tau, derive_constants,
                    sinr_interference, snr_noise)

CHUNK = 1 << 16
MIN_TRIALS = 1000


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1 or self.std_error < 0:
            raise ValueError("invalid Monte Carlo estimate")

    def scaled(self, factor: float) -> "McEstimate":
        return McEstimate(self.mean * factor, self.std_error * abs(factor), self.trials, self.seed)


def worker_count() -> int:
    env = os.environ.get("WPC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def sample_h2(n_antennas: int, m: int, rng: np.random.Generator, size=None):
    """Draw ||h||^2 ~ Gamma(Nm, scale 1/m) as a sum of Nm unit exponentials."""
    if n_antennas < 1 or m < 1:
        raise ValueError("N and m must be positive integers")
    nm = n_antennas * m
    if size is None:
        return float(rng.standard_exponential(nm).sum() / m)
    return rng.standard_exponential((size, nm)).sum(axis=1) / m


def sample_exp(rng: np.random.Generator, size=None):
    """|x|^2 of a unit-variance circular complex Gaussian coefficient."""
    return rng.standard_exponential(size)


def run(kernel: Callable[[np.random.Generator, int], np.ndarray], trials: int,
        seed: int, threads: Optional[int] = None) -> McEstimate:
    """Average ``kernel(rng, size)`` over ``trials`` draws."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n_chunks = -(-trials // CHUNK)

    def one(i):
        size = min(CHUNK, trials - i * CHUNK)
        vals = np.asarray(kernel(chunk_rng(seed, i), size), dtype=float)
        mean = float(vals.mean())
        return size, mean, float(np.sum((vals - mean) ** 2))

    threads = threads or worker_count()
    if threads > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=min(threads, n_chunks)) as pool:
            parts = list(pool.map(one, range(n_chunks)))
    else:
        parts = [one(i) for i in range(n_chunks)]

    mean = math.fsum(size * mu for size, mu, _ in parts) / trials
    m2 = math.fsum([m2 for _, _, m2 in parts] + [size * (mu - mean) ** 2 for size, mu, _ in parts])
    var = m2 / (trials - 1) if trials > 1 else 0.0
    return McEstimate(mean, math.sqrt(var / trials), trials, seed)


def _check_trials(trials):
    if trials < MIN_TRIALS:
        raise ValueError("need at least %d trials, got %d" % (MIN_TRIALS, trials))


def _noise_snr_kernel(tau, params):
    k = derive_constants(params)

    def draw(rng, size):
        h2 = sample_h2(params.n_antennas, params.nakagami_m, rng, size)
        g2 = sample_exp(rng, size)
        return snr_noise(tau, h2, g2, k)
    return draw, k


def _interf_sinr_kernel(tau, params, interf):
    k = derive_constants(params, interf)

    def draw(rng, size):
        h2 = sample_h2(params.n_antennas, params.nakagami_m, rng, size)
        g2 = sample_exp(rng, size)
        # one interferer fading draw per block, for both phases
        f1 = sample_exp(rng, size)
        f2 = sample_exp(rng, size)
        return sinr_interference(tau, h2, g2, f1, f2, k)
    return draw, k


def estimate_outage_noise(tau: float, params: SystemParams, trials: int = 10**6,
                          seed: int = 0) -> McEstimate:
    check_tau(tau)
    _check_trials(trials)
    draw, k = _noise_snr_kernel(tau, params)
    return run(lambda rng, size: draw(rng, size) < k.gamma_th, trials, seed)


def estimate_capacity_noise(tau: float, params: SystemParams, trials: int = 10**6,
                            seed: int = 0) -> McEstimate:
    check_tau(tau)
    _check_trials(trials)
    draw, _ = _noise_snr_kernel(tau, params)
    return run(lambda rng, size: np.log2(1.0 + draw(rng, size)), trials, seed)


def estimate_outage_interf(tau: float, params: SystemParams, interf: InterferenceParams,
                           trials: int = 10**6, seed: int = 0) -> McEstimate:
    check_tau(tau)
    _check_trials(trials)
    draw, k = _interf_sinr_kernel(tau, params, interf)
    return run(lambda rng, size: draw(rng, size) < k.gamma_th, trials, seed)


def estimate_capacity_interf(tau: float, params: SystemParams, interf: InterferenceParams,
                             trials: int = 10**6, seed: int = 0) -> McEstimate:
    check_tau(tau)
    _check_trials(trials)
    draw, _ = _interf_sinr_kernel(tau, params, interf)
    return run(lambda rng, size: np.log2(1.0 + draw(rng, size)), trials, seed)


def estimate_throughput(tau: float, params: SystemParams, mode: str = "dc",
                        interf: Optional[InterferenceParams] = None,
                        trials: int = 10**6, seed: int = 0) -> McEstimate:
    """Delay-intolerant (1-P_out) R_c (1-tau) or delay-tolerant (1-tau) C_e."""
    if mode == "dc":
        if interf is None:
            est = estimate_outage_noise(tau, params, trials, seed)
        else:
            est = estimate_outage_interf(tau, params, interf, trials, seed)
        factor = params.rate * (1.0 - tau)
        return McEstimate(factor * (1.0 - est.mean), factor * est.std_error, trials, seed)
    if mode == "dt":
        if interf is None:
            est = estimate_capacity_noise(tau, params, trials, seed)
        else:
            est = estimate_capacity_interf(tau, params, interf, trials, seed)
        return est.scaled(1.0 - tau)
    raise ValueError("mode must be 'dc' or 'dt'")


def estimate_product_cdf(x: float, n_antennas: int, m: int, trials: int = 10**6,
                         seed: int = 0) -> McEstimate:
    """Empirical P(||h||^2 |g|^2 <= x)."""
    def draw(rng, size):
        return sample_h2(n_antennas, m, rng, size) * sample_exp(rng, size) <= x
    return run(draw, trials, seed)


def estimate_ln_v(n_antennas: int, m: int, rho1: float, rho_i: float,
                  trials: int = 10**6, seed: int = 0) -> McEstimate:
    def draw(rng, size):
        return np.log(sample_h2(n_antennas, m, rng, size) * rho1 + sample_exp(rng, size) * rho_i)
    return run(draw, trials, seed)


def estimate_ln_u(b1: float, trials: int = 10**6, seed: int = 0) -> McEstimate:
    def draw(rng, size):
        g2 = sample_exp(rng, size)
        f2 = sample_exp(rng, size)
        return np.log(g2 / (f2 + b1))
    return run(draw, trials, seed)


def sample_v(n_antennas: int, m: int, rho1: float, rho_i: float, trials: int,
             seed: int = 0) -> np.ndarray:
    """Raw draws of V (for distribution tests), chunked like every estimator."""
    parts = []
    for i in range(-(-trials // CHUNK)):
        size = min(CHUNK, trials - i * CHUNK)
        rng = chunk_rng(seed, i)
        parts.append(sample_h2(n_antennas, m, rng, size) * rho1 + sample_exp(rng, size) * rho_i)
    return np.concatenate(parts)
