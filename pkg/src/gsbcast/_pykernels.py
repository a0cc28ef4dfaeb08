"""Pure-Python region kernels.

Reference implementation of the hot loops; ``_ckernels.pyx`` mirrors it line
for line. Keep the two in sync: the test suite runs both and compares them.

Kinds
-----
KIND_SCALED
    sum_k coef[k] * (scale[k] * d[k]) ** (-inv_b)
KIND_PARAMETRIC
    sum_k coef[k] * bracket_k ** inv_b with
    bracket_k = (1 + t_k)/(d_k + t_k) * prod_{j<k} (d_{j+1} + t_j)/(d_j + t_j),
    t_K = 0 and an infinite t_j giving a factor of exactly 1.
KIND_P2P
    max_k [coef[0] + coef[k] * (d[k] ** (-inv_b) - 1)], ``coef`` holding N_k.
"""

import math

KIND_SCALED = 0
KIND_PARAMETRIC = 1
KIND_P2P = 2


def _pow(x, e):
    try:
        return x ** e
    except OverflowError:
        return math.inf


def _seq(x):
    return x.tolist() if hasattr(x, "tolist") else x


def _ratio(x, y, t):
    if t == math.inf:
        return 1.0
    den = y + t
    if den == 0.0:
        return math.inf
    return (x + t) / den


def scaled_sum(coef, d, scale, inv_b):
    coef, d, scale = _seq(coef), _seq(d), _seq(scale)
    total = 0.0
    for c, x, s in zip(coef, d, scale):
        if c != 0.0:
            total += c * _pow(s * x, -inv_b)
    return total


def brackets(d, tau):
    """Per-user brackets (before the 1/b power); ``tau`` has length K with tau[K-1] = 0."""
    d, tau = _seq(d), _seq(tau)
    out = []
    prefix = 1.0
    K = len(d)
    for k in range(K):
        out.append(prefix * _ratio(1.0, d[k], tau[k]))
        if k + 1 < K:
            prefix *= _ratio(d[k + 1], d[k], tau[k])
    return out


def parametric_sum(coef, d, tau, inv_b):
    coef, d, tau = _seq(coef), _seq(d), _seq(tau)
    total = 0.0
    prefix = 1.0
    K = len(d)
    for k in range(K):
        c = coef[k]
        if c != 0.0:
            total += c * _pow(prefix * _ratio(1.0, d[k], tau[k]), inv_b)
        if k + 1 < K:
            prefix *= _ratio(d[k + 1], d[k], tau[k])
    return total


def p2p_max(noise, d, inv_b):
    noise, d = _seq(noise), _seq(d)
    worst = -math.inf
    n1 = noise[0]
    for n, x in zip(noise, d):
        v = n1 + n * (_pow(x, -inv_b) - 1.0)
        if v > worst:
            worst = v
    return worst


def evaluate(kind, coef, d, tau, scale, inv_b):
    if kind == KIND_SCALED:
        return scaled_sum(coef, d, scale, inv_b)
    if kind == KIND_PARAMETRIC:
        return parametric_sum(coef, d, tau, inv_b)
    return p2p_max(coef, d, inv_b)


def bisect(kind, coef, d, tau, scale, inv_b, idx, lo, hi, budget, tol, abs_tol, rel_tol, max_iter):
    """Shrink [lo, hi] on coordinate ``idx`` until it brackets the boundary.

    Assumes ``lo`` is infeasible and ``hi`` feasible (lhs <= budget + tol).
    Midpoints are geometric so the relative width shrinks even when ``lo`` is
    near zero. Returns ``(hi, iterations)``.
    """
    coef, tau, scale = _seq(coef), _seq(tau), _seq(scale)
    d = list(_seq(d))
    inv_b = float(inv_b)
    limit = budget + tol
    it = 0
    while it < max_iter:
        width = hi - lo
        if width <= abs_tol and width <= rel_tol * hi:
            break
        mid = math.exp(0.5 * (math.log(lo) + math.log(hi)))
        if not lo < mid < hi:
            mid = lo + 0.5 * width
            if not lo < mid < hi:
                break
        d[idx] = mid
        if evaluate(kind, coef, d, tau, scale, inv_b) <= limit:
            hi = mid
        else:
            lo = mid
        it += 1
    return hi, it
