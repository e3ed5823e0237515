"""Compare the compiled and pure-Python special-function backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]

Kernel timings call both backend modules directly on the same inputs and
check that they return identical values. ``--end-to-end`` also times one
ergodic-capacity quadrature per backend in a subprocess, since the backend
is fixed at import time.
"""

import argparse
import os
import subprocess
import sys
import timeit

from wpcomm import _pyspecfun

try:
    from wpcomm import _cspecfun
except ImportError:
    _cspecfun = None

CASES = [
    ("ln_gamma", lambda k: [k.ln_gamma(0.1 + 0.37 * i) for i in range(200)]),
    ("digamma", lambda k: [k.digamma(0.1 + 0.37 * i) for i in range(200)]),
    ("log_bessel_k_scaled n=16", lambda k: [k.log_bessel_k_scaled(16, 0.05 + 0.2 * i) for i in range(200)]),
    ("log_bessel_k_scaled n=80", lambda k: [k.log_bessel_k_scaled(80, 0.05 + 0.2 * i) for i in range(200)]),
    ("exp_e1", lambda k: [k.exp_e1(0.01 + 0.25 * i) for i in range(200)]),
    ("lambert_w0", lambda k: [k.lambert_w0(-0.36 + 0.5 * i) for i in range(200)]),
    ("lambert_w0_exp", lambda k: [k.lambert_w0_exp(-5.0 + 0.3 * i) for i in range(200)]),
]

END_TO_END = (
    "import timeit; from wpcomm import analytic_noise as an, specfun; "
    "from wpcomm.model import SystemParams; p = SystemParams(n_antennas=8, p_db=50); "
    "t = min(timeit.repeat(lambda: an.ergodic_capacity(0.4, p), number=5, repeat=3)) / 5; "
    "print(specfun.BACKEND, t)"
)


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=20, repeat=repeat)) / 20


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)

    if _cspecfun is None:
        print("compiled backend not built; only the pure-Python timings are shown")
    print("%-26s %12s %12s %8s" % ("kernel (200 calls)", "python [us]", "cython [us]", "speedup"))
    for name, case in CASES:
        t_py = bench(lambda: case(_pyspecfun), args.repeat)
        if _cspecfun is None:
            print("%-26s %12.1f %12s %8s" % (name, t_py * 1e6, "-", "-"))
            continue
        if case(_pyspecfun) != case(_cspecfun):
            print("warning: backends disagree on %s" % name)
        t_c = bench(lambda: case(_cspecfun), args.repeat)
        print("%-26s %12.1f %12.1f %7.1fx" % (name, t_py * 1e6, t_c * 1e6, t_py / t_c))

    if args.end_to_end:
        print("\nergodic capacity, N=8 m=4 (one quadrature):")
        for pure in ("1", "0"):
            env = dict(os.environ, WPCOMM_PURE_PYTHON=pure)
            out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                                 capture_output=True, text=True, check=True).stdout.split()
            print("  %-7s %8.2f ms" % (out[0], float(out[1]) * 1e3))


if __name__ == "__main__":
    main()
