# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar special-function kernels.

Mirrors ``_pyspecfun`` line for line; any change here must be made there too.
"""

from libc.math cimport exp, log, log1p, sqrt, fabs, M_PI, M_E

cdef double EULER_GAMMA = 0.57721566490153286061
cdef double _HALF_LN_2PI = 0.91893853320467274178
cdef double _INV_E = 0.36787944117144232160
cdef double _EPS = 2.220446049250313e-16
cdef double _RESCALE = 1e250
cdef double _LN_RESCALE = log(1e250)


cpdef double ln_gamma(double x) except? -1.0:
    cdef double shift = 0.0, prod, inv, inv2, series
    if not x > 0.0:
        raise ValueError("ln_gamma requires x > 0, got %r" % (x,))
    if x < 15.0:
        prod = 1.0
        while x < 15.0:
            prod *= x
            x += 1.0
        shift = log(prod)
    inv = 1.0 / x
    inv2 = inv * inv
    series = inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0
             + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0
             + inv2 * (-691.0 / 360360.0 + inv2 * (1.0 / 156.0)))))))
    return (x - 0.5) * log(x) - x + _HALF_LN_2PI + series - shift


cpdef double digamma(double x) except? -1.0:
    cdef double acc = 0.0, inv2, tail
    if not x > 0.0:
        raise ValueError("digamma requires x > 0, got %r" % (x,))
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
           - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0
           - inv2 * (691.0 / 32760.0 - inv2 * (1.0 / 12.0)))))))
    return acc + log(x) - 0.5 / x - tail


cdef void _k01_series(double x, double* k0, double* k1) noexcept nogil:
    cdef double q = 0.25 * x * x
    cdef double lnh = log(0.5 * x)
    cdef double term = 1.0, i0 = 0.0, s0 = 0.0, harm = 0.0
    cdef double i1s = 0.0, s1 = 0.0, h_k = 0.0, h_k1 = 1.0
    cdef int k = 0
    while True:
        i0 += term
        s0 += harm * term
        k += 1
        harm += 1.0 / k
        term *= q / (<double>k * k)
        if term < _EPS * i0 * 1e-2:
            break
    k0[0] = -(lnh + EULER_GAMMA) * i0 + s0

    term = 1.0
    k = 0
    while True:
        i1s += term
        s1 += (h_k + h_k1 - 2.0 * EULER_GAMMA) * term
        k += 1
        h_k = h_k1
        h_k1 += 1.0 / (k + 1)
        term *= q / (<double>k * (k + 1))
        if term < _EPS * i1s * 1e-2:
            break
    k1[0] = 1.0 / x + lnh * (0.5 * x * i1s) - 0.25 * x * s1


cdef void _k01_scaled_cf(double x, double* k0, double* k1) noexcept nogil:
    cdef double b = 2.0 * (1.0 + x)
    cdef double d = 1.0 / b
    cdef double h = d, delh = d
    cdef double q1 = 0.0, q2 = 1.0, a1 = 0.25
    cdef double q = a1, c = a1, a = -a1
    cdef double s = 1.0 + q * delh
    cdef double qnew, dels
    cdef int i
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
        if fabs(dels / s) < _EPS:
            break
    h = a1 * h
    k0[0] = sqrt(M_PI / (2.0 * x)) / s
    k1[0] = k0[0] * (x + 0.5 - h) / x


cpdef double log_bessel_k_scaled(long n, double x) except? -1.0:
    """ln(e^x K_n(x)) for integer n >= 0 and x > 0."""
    cdef double k0, k1, tmp, ex, offset = 0.0, two_over_x
    cdef long j
    if not x > 0.0:
        raise ValueError("bessel_k requires x > 0, got %r" % (x,))
    if n < 0:
        raise ValueError("bessel_k requires order >= 0, got %r" % (n,))
    if x <= 2.0:
        _k01_series(x, &k0, &k1)
        ex = exp(x)
        k0 *= ex
        k1 *= ex
    else:
        _k01_scaled_cf(x, &k0, &k1)
    if n == 0:
        return log(k0)
    two_over_x = 2.0 / x
    for j in range(1, n):
        tmp = k0 + j * two_over_x * k1
        k0 = k1
        k1 = tmp
        if k1 > _RESCALE:
            k0 /= _RESCALE
            k1 /= _RESCALE
            offset += _LN_RESCALE
    return log(k1) + offset


cpdef double exp_e1(double y) except? -1.0:
    """e^y E1(y) for y > 0."""
    cdef double total, term, contrib, b, c, d, h, an, delta
    cdef double tiny = 1e-300
    cdef long k, i
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
            if fabs(contrib) < _EPS * 1e-2:
                break
            k += 1
        return exp(y) * (-EULER_GAMMA - log(y) - total)
    b = y + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 100000):
        an = -(<double>i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if fabs(delta - 1.0) < _EPS:
            break
    return h


cpdef double lambert_w0(double x) except? -2.0:
    cdef double p, w, l1, ew, f, wp1, dw
    cdef int it
    if x < -_INV_E:
        if x > -_INV_E - 1e-15:
            return -1.0
        raise ValueError("lambert_w0 requires x >= -1/e, got %r" % (x,))
    if x == 0.0:
        return 0.0
    if x < -0.32:
        p = 2.0 * (M_E * x + 1.0)
        p = sqrt(p) if p > 0.0 else 0.0
        if p == 0.0:
            return -1.0
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    else:
        l1 = log1p(x)
        w = l1 * (1.0 - log1p(l1) / (2.0 + l1))
    for it in range(64):
        ew = exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if fabs(dw) <= 4.0 * _EPS * (1.0 + fabs(w)):
            break
    return w


cpdef double lambert_w0_exp(double y) except? -2.0:
    """W(e^y) without forming e^y for large y."""
    cdef double w, f, dw
    cdef int it
    if y < 20.0:
        return lambert_w0(exp(y))
    w = y - log(y)
    for it in range(64):
        f = w + log(w) - y
        dw = f / (1.0 + 1.0 / w)
        w -= dw
        if fabs(dw) <= 4.0 * _EPS * w:
            break
    return w
