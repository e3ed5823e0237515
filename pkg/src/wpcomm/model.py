"""System parameters, composite constants and instantaneous SNR/SINR.

Powers enter as dB ratios to the noise power N0 and are converted to linear
once, in :func:`derive_constants`. The block length is normalised to 1 and
the Nakagami spread is fixed at Omega = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def check_tau(tau: float) -> float:
    if not 0.0 < tau < 1.0:
        raise ValueError("time split tau must lie in (0, 1), got %r" % (tau,))
    return tau


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs of the power-beacon -> source -> destination link."""

    n_antennas: int = 4
    nakagami_m: int = 4
    eta: float = 0.4
    alpha: float = 2.5
    d1: float = 8.0
    d2: float = 15.0
    p_db: float = 40.0
    rate: float = 1.0

    def __post_init__(self):
        if int(self.n_antennas) != self.n_antennas or self.n_antennas < 1:
            raise ValueError("n_antennas must be a positive integer")
        if int(self.nakagami_m) != self.nakagami_m or self.nakagami_m < 1:
            raise ValueError("nakagami_m must be a positive integer")
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie in (0, 1)")
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")
        if not (self.d1 > 0.0 and self.d2 > 0.0):
            raise ValueError("distances must be positive")
        if not self.rate > 0.0:
            raise ValueError("rate must be positive")
        object.__setattr__(self, "n_antennas", int(self.n_antennas))
        object.__setattr__(self, "nakagami_m", int(self.nakagami_m))

    @property
    def nm(self) -> int:
        return self.n_antennas * self.nakagami_m

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class InterferenceParams:
    """Single dominant co-channel interferer."""

    pi_db: float = 20.0
    d3: float = 10.0
    d4: float = 10.0

    def __post_init__(self):
        if not (self.d3 > 0.0 and self.d4 > 0.0):
            raise ValueError("interferer distances must be positive")

    def with_(self, **changes) -> "InterferenceParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class DerivedConstants:
    """Composite constants shared by every throughput expression.

    ``rho_i`` and ``b1`` are None in the noise-limited case.
    """

    c1: float
    gamma_th: float
    rho1: float
    eta: float
    d2_alpha: float
    rho_i: Optional[float] = None
    b1: Optional[float] = None

    def b2(self, tau: float) -> float:
        """tau*eta*N0*d4^a / ((1-tau)*d2^a*P_I); increasing in tau."""
        if self.b1 is None:
            raise ValueError("b2 needs interference parameters")
        return tau * self.eta * self.b1 / ((1.0 - tau) * self.d2_alpha)


def derive_constants(params: SystemParams,
                     interf: Optional[InterferenceParams] = None) -> DerivedConstants:
    p_lin = db_to_linear(params.p_db)
    d1a = params.d1 ** params.alpha
    d2a = params.d2 ** params.alpha
    c1 = d1a * d2a / (params.eta * p_lin)
    gamma_th = 2.0 ** params.rate - 1.0
    rho1 = p_lin / d1a
    rho_i = b1 = None
    if interf is not None:
        pi_lin = db_to_linear(interf.pi_db)
        rho_i = pi_lin / interf.d3 ** params.alpha
        b1 = interf.d4 ** params.alpha / pi_lin
    return DerivedConstants(c1=c1, gamma_th=gamma_th, rho1=rho1, eta=params.eta,
                            d2_alpha=d2a, rho_i=rho_i, b1=b1)


def snr_noise(tau, h2, g2, k: DerivedConstants):
    """End-to-end SNR tau*|h|^2*|g|^2 / ((1-tau)*c1); numpy-broadcastable."""
    return tau * np.multiply(h2, g2) / ((1.0 - tau) * k.c1)


def sinr_interference(tau, h2, g2, f1sq, f2sq, k: DerivedConstants):
    """End-to-end SINR with one interferer, in its direct form."""
    if k.rho_i is None:
        raise ValueError("sinr_interference needs interference parameters")
    gain = tau * k.eta * np.asarray(g2) / ((1.0 - tau) * k.d2_alpha)
    harvested = np.asarray(h2) * k.rho1 + np.asarray(f1sq) * k.rho_i
    return gain * harvested / (1.0 + np.asarray(f2sq) / k.b1)


def sinr_factored(tau, h2, g2, f1sq, f2sq, k: DerivedConstants):
    """The same SINR written as b2(tau) * U * V."""
    u = np.asarray(g2) / (np.asarray(f2sq) + k.b1)
    v = np.asarray(h2) * k.rho1 + np.asarray(f1sq) * k.rho_i
    return k.b2(tau) * u * v


# ---------------------------------------------------------------------------
# key=value configuration files

_CONFIG_KEYS = {
    "N": ("system", "n_antennas", int),
    "m": ("system", "nakagami_m", int),
    "eta": ("system", "eta", float),
    "alpha": ("system", "alpha", float),
    "d1": ("system", "d1", float),
    "d2": ("system", "d2", float),
    "P_dB": ("system", "p_db", float),
    "Rc": ("system", "rate", float),
    "d3": ("interf", "d3", float),
    "d4": ("interf", "d4", float),
    "PI_dB": ("interf", "pi_db", float),
}


def parse_config(text: str) -> tuple[SystemParams, Optional[InterferenceParams]]:
    """Parse ``key=value`` lines; ``#`` starts a comment.

    Unset keys keep the library defaults. Interference parameters are only
    returned when ``PI_dB`` is present.
    """
    sys_kw: dict = {}
    int_kw: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError("line %d: expected key=value, got %r" % (lineno, raw))
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError("line %d: unknown key %r (allowed: %s)"
                             % (lineno, key, ", ".join(_CONFIG_KEYS)))
        group, name, conv = _CONFIG_KEYS[key]
        try:
            if conv is int:
                fval = float(value)
                if fval != int(fval):
                    raise ValueError
                converted = int(fval)
            else:
                converted = conv(value)
        except ValueError:
            raise ValueError("line %d: bad value for %s: %r" % (lineno, key, value)) from None
        (sys_kw if group == "system" else int_kw)[name] = converted
    params = SystemParams(**sys_kw)
    interf = None
    if "pi_db" in int_kw:
        interf = InterferenceParams(**int_kw)
    elif int_kw:
        raise ValueError("d3/d4 given without PI_dB")
    return params, interf


def load_config(path) -> tuple[SystemParams, Optional[InterferenceParams]]:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def format_config(params: SystemParams, interf: Optional[InterferenceParams] = None) -> str:
    inverse = {(g, n): k for k, (g, n, _) in _CONFIG_KEYS.items()}
    lines = ["%s=%r" % (inverse[("system", f.name)], getattr(params, f.name))
             for f in fields(params)]
    if interf is not None:
        lines += ["%s=%r" % (inverse[("interf", f.name)], getattr(interf, f.name))
                  for f in fields(interf)]
    return "\n".join(lines) + "\n"


def fig11_d3(d2: float, d4: float, theta: float = math.pi / 6) -> float:
    """Interferer-source distance from the law of cosines (source on the PB-D line)."""
    return math.sqrt(d2 * d2 + d4 * d4 - 2.0 * d2 * d4 * math.cos(theta))
