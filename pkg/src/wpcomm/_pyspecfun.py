"""Pure-Python scalar special-function kernels.

Reference implementation of the kernels in ``_cspecfun.pyx``; the two must
stay algorithmically identical. ``wpcomm.specfun`` picks whichever imports.
"""

import math

EULER_GAMMA = 0.57721566490153286061
_HALF_LN_2PI = 0.91893853320467274178
_INV_E = 0.36787944117144232160
_EPS = 2.220446049250313e-16
_RESCALE = 1e250
_LN_RESCALE = math.log(_RESCALE)


def ln_gamma(x):
    if not x > 0.0:
        raise ValueError("ln_gamma requires x > 0, got %r" % (x,))
    shift = 0.0
    if x < 15.0:
        prod = 1.0
        while x < 15.0:
            prod *= x
            x += 1.0
        shift = math.log(prod)
    inv = 1.0 / x
    inv2 = inv * inv
    series = inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0
             + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0
             + inv2 * (-691.0 / 360360.0 + inv2 * (1.0 / 156.0)))))))
    return (x - 0.5) * math.log(x) - x + _HALF_LN_2PI + series - shift


def digamma(x):
    if not x > 0.0:
        raise ValueError("digamma requires x > 0, got %r" % (x,))
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
           - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0
           - inv2 * (691.0 / 32760.0 - inv2 * (1.0 / 12.0)))))))
    return acc + math.log(x) - 0.5 / x - tail


def _k01_series(x):
    # Power series for K0, K1 (unscaled); accurate for 0 < x <= 2.
    q = 0.25 * x * x
    lnh = math.log(0.5 * x)
    term = 1.0
    i0 = 0.0
    s0 = 0.0
    harm = 0.0
    k = 0
    while True:
        i0 += term
        s0 += harm * term
        k += 1
        harm += 1.0 / k
        term *= q / (k * k)
        if term < _EPS * i0 * 1e-2:
            break
    k0 = -(lnh + EULER_GAMMA) * i0 + s0

    term = 1.0
    i1s = 0.0
    s1 = 0.0
    h_k = 0.0
    h_k1 = 1.0
    k = 0
    while True:
        i1s += term
        s1 += (h_k + h_k1 - 2.0 * EULER_GAMMA) * term
        k += 1
        h_k = h_k1
        h_k1 += 1.0 / (k + 1)
        term *= q / (k * (k + 1))
        if term < _EPS * i1s * 1e-2:
            break
    k1 = 1.0 / x + lnh * (0.5 * x * i1s) - 0.25 * x * s1
    return k0, k1


def _k01_scaled_cf(x):
    # Temme/Steed continued fraction for e^x K0, e^x K1; used for x > 2.
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 100000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def log_bessel_k_scaled(n, x):
    """ln(e^x K_n(x)) for integer n >= 0 and x > 0."""
    if not x > 0.0:
        raise ValueError("bessel_k requires x > 0, got %r" % (x,))
    if n < 0:
        raise ValueError("bessel_k requires order >= 0, got %r" % (n,))
    if x <= 2.0:
        k0, k1 = _k01_series(x)
        ex = math.exp(x)
        k0 *= ex
        k1 *= ex
    else:
        k0, k1 = _k01_scaled_cf(x)
    if n == 0:
        return math.log(k0)
    offset = 0.0
    two_over_x = 2.0 / x
    for j in range(1, n):
        k0, k1 = k1, k0 + j * two_over_x * k1
        if k1 > _RESCALE:
            k0 /= _RESCALE
            k1 /= _RESCALE
            offset += _LN_RESCALE
    return math.log(k1) + offset


def exp_e1(y):
    """e^y E1(y) for y > 0."""
    if not y > 0.0:
        raise ValueError("exp_e1 requires y > 0, got %r" % (y,))
    if y <= 1.0:
        total = 0.0
        term = 1.0
        k = 1
        while True:
            term *= -y / k
            contrib = term / k
            total += contrib
            if abs(contrib) < _EPS * 1e-2:
                break
            k += 1
        return math.exp(y) * (-EULER_GAMMA - math.log(y) - total)
    tiny = 1e-300
    b = y + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 100000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def lambert_w0(x):
    if x < -_INV_E:
        if x > -_INV_E - 1e-15:
            return -1.0
        raise ValueError("lambert_w0 requires x >= -1/e, got %r" % (x,))
    if x == 0.0:
        return 0.0
    if x < -0.32:
        p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
        if p == 0.0:
            return -1.0
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    else:
        l1 = math.log1p(x)
        w = l1 * (1.0 - math.log1p(l1) / (2.0 + l1))
    for _ in range(64):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 4.0 * _EPS * (1.0 + abs(w)):
            break
    return w


def lambert_w0_exp(y):
    """W(e^y) without forming e^y for large y."""
    if y < 20.0:
        return lambert_w0(math.exp(y))
    w = y - math.log(y)
    for _ in range(64):
        f = w + math.log(w) - y
        dw = f / (1.0 + 1.0 / w)
        w -= dw
        if abs(dw) <= 4.0 * _EPS * w:
            break
    return w
