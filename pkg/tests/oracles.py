"""Independent reference computations used to produce the frozen test values.

These follow the textbook forms directly (product of ratios, explicit
root-finding) rather than the library's regrouped kernels, at high precision
through mpmath where it matters.
"""

import math

import mpmath
from scipy.optimize import brentq

mp = mpmath.mp
mp.dps = 50


def delta(noise):
    n = [mpmath.mpf(x) for x in noise] + [mpmath.mpf(0)]
    return [n[k] - n[k + 1] for k in range(len(noise))]


def inner_sum(noise, b, d, scale=None):
    K = len(d)
    scale = scale or [1] * K
    return sum(dn * (mpmath.mpf(s) * mpmath.mpf(x)) ** (-mpmath.mpf(1) / b)
               for dn, s, x in zip(delta(noise), scale, d))


def bracket(d, tau, k):
    """(1 + t_k) prod_{j=2..k} (d_j + t_{j-1}) / prod_{j=1..k} (d_j + t_j), 1-based, t_K = 0."""
    d = [mpmath.mpf(x) for x in d]
    t = [mpmath.mpf(x) for x in tau] + [mpmath.mpf(0)]
    num = 1 + t[k - 1]
    for j in range(2, k + 1):
        num *= d[j - 1] + t[j - 2]
    den = mpmath.mpf(1)
    for j in range(1, k + 1):
        den *= d[j - 1] + t[j - 1]
    return num / den


def parametric_sum(noise, b, d, tau):
    return sum(dn * bracket(d, tau, k) ** (mpmath.mpf(1) / b)
               for k, dn in enumerate(delta(noise), start=1))


def boundary_d1(lhs, budget, d2):
    """Root of lhs([d1, d2]) = budget in d1 on [d2, 1] by Brent's method in log space."""
    f = lambda u: float(lhs([mpmath.e ** u, d2]) - budget)
    if f(math.log(d2)) <= 0:
        return d2
    return math.exp(brentq(f, math.log(d2), 0.0, xtol=1e-16, rtol=1e-15))
