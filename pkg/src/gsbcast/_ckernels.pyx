# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled region kernels; see ``_pykernels`` for the reference semantics."""

from libc.math cimport pow, exp, log, INFINITY

cdef int KIND_SCALED_C = 0
cdef int KIND_PARAMETRIC_C = 1

KIND_SCALED = 0
KIND_PARAMETRIC = 1
KIND_P2P = 2


cdef inline double _ratio(double x, double y, double t) nogil:
    cdef double den
    if t == INFINITY:
        return 1.0
    den = y + t
    if den == 0.0:
        return INFINITY
    return (x + t) / den


cdef double _scaled(const double[::1] coef, const double[::1] d, const double[::1] scale,
                    double inv_b) nogil:
    cdef Py_ssize_t k
    cdef double total = 0.0
    for k in range(d.shape[0]):
        if coef[k] != 0.0:
            total += coef[k] * pow(scale[k] * d[k], -inv_b)
    return total


cdef double _parametric(const double[::1] coef, const double[::1] d, const double[::1] tau,
                        double inv_b) nogil:
    cdef Py_ssize_t k, K = d.shape[0]
    cdef double total = 0.0, prefix = 1.0
    for k in range(K):
        if coef[k] != 0.0:
            total += coef[k] * pow(prefix * _ratio(1.0, d[k], tau[k]), inv_b)
        if k + 1 < K:
            prefix *= _ratio(d[k + 1], d[k], tau[k])
    return total


cdef double _p2p(const double[::1] noise, const double[::1] d, double inv_b) nogil:
    cdef Py_ssize_t k
    cdef double worst = -INFINITY, v
    for k in range(d.shape[0]):
        v = noise[0] + noise[k] * (pow(d[k], -inv_b) - 1.0)
        if v > worst:
            worst = v
    return worst


cdef double _evaluate(int kind, const double[::1] coef, const double[::1] d, const double[::1] tau,
                      const double[::1] scale, double inv_b) nogil:
    if kind == KIND_SCALED_C:
        return _scaled(coef, d, scale, inv_b)
    if kind == KIND_PARAMETRIC_C:
        return _parametric(coef, d, tau, inv_b)
    return _p2p(coef, d, inv_b)


def scaled_sum(const double[::1] coef, const double[::1] d, const double[::1] scale, double inv_b):
    return _scaled(coef, d, scale, inv_b)


def parametric_sum(const double[::1] coef, const double[::1] d, const double[::1] tau, double inv_b):
    return _parametric(coef, d, tau, inv_b)


def brackets(const double[::1] d, const double[::1] tau):
    cdef Py_ssize_t k, K = d.shape[0]
    cdef double prefix = 1.0
    out = []
    for k in range(K):
        out.append(prefix * _ratio(1.0, d[k], tau[k]))
        if k + 1 < K:
            prefix *= _ratio(d[k + 1], d[k], tau[k])
    return out


def p2p_max(const double[::1] noise, const double[::1] d, double inv_b):
    return _p2p(noise, d, inv_b)


def evaluate(int kind, const double[::1] coef, const double[::1] d, const double[::1] tau,
             const double[::1] scale, double inv_b):
    return _evaluate(kind, coef, d, tau, scale, inv_b)


def bisect(int kind, const double[::1] coef, double[::1] d, const double[::1] tau,
           const double[::1] scale, double inv_b, Py_ssize_t idx, double lo, double hi,
           double budget, double tol, double abs_tol, double rel_tol, int max_iter):
    cdef double limit = budget + tol, width, mid
    cdef int it = 0
    with nogil:
        while it < max_iter:
            width = hi - lo
            if width <= abs_tol and width <= rel_tol * hi:
                break
            mid = exp(0.5 * (log(lo) + log(hi)))
            if not (lo < mid < hi):
                mid = lo + 0.5 * width
                if not (lo < mid < hi):
                    break
            d[idx] = mid
            if _evaluate(kind, coef, d, tau, scale, inv_b) <= limit:
                hi = mid
            else:
                lo = mid
            it += 1
    return hi, it
