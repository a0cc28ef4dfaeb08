"""Mutual-information bounds for a source observed through extra Gaussian noise.

For a unit-variance Gaussian source S, a description W that reconstructs S
with mean squared error D, and U = S + V, U' = U + V' with Var V = tau and
Var(V + V') = tau', any such W satisfies (per source sample, nats)

    I(W; U')              >= 1/2 ln((1 + tau') / (D + tau'))
    I(W; U) - I(W; U')    >= 1/2 ln((1 + tau)(D + tau') / ((1 + tau')(D + tau)))

The linear Gaussian description W = (1 - D) S + noise of variance D(1 - D)
meets both with equality; :func:`gaussian_oracle_mi` evaluates its mutual
informations directly from the joint covariance at high precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import InsufficientSamples, OutOfRange

MIN_MC_SAMPLES = 10_000


@dataclass(frozen=True)
class AuxNoiseParams:
    tau: float
    tau_prime: float
    D: float

    def __post_init__(self) -> None:
        for name in ("tau", "tau_prime", "D"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (0.0 <= self.tau <= self.tau_prime < math.inf):
            raise OutOfRange(f"need 0 <= tau <= tau' < inf, got tau={self.tau}, tau'={self.tau_prime}")
        if not 0.0 < self.D <= 1.0:
            raise OutOfRange(f"D must lie in (0, 1], got {self.D}")


def mi_lower_bound(p: AuxNoiseParams) -> float:
    return 0.5 * math.log1p((1.0 - p.D) / (p.D + p.tau_prime))


def mi_difference_lower_bound(p: AuxNoiseParams) -> float:
    # log1p of (ratio - 1) keeps full relative accuracy when tau' is close to tau
    x = (1.0 - p.D) * (p.tau_prime - p.tau) / ((1.0 + p.tau_prime) * (p.D + p.tau))
    return 0.5 * math.log1p(x)


def _test_channel_rows(p: AuxNoiseParams):
    """Rows of the mixing matrix over independent unit normals (S, E, V0, V1).

    W = (1-D) S + sqrt(D(1-D)) E,  U = S + sqrt(tau) V0,  U' = U + sqrt(tau' - tau) V1.
    """
    mpf = mpmath.mpf
    D, tau, taup = mpf(p.D), mpf(p.tau), mpf(p.tau_prime)
    w = (1 - D, mpmath.sqrt(D * (1 - D)), mpf(0), mpf(0))
    u = (mpf(1), mpf(0), mpmath.sqrt(tau), mpf(0))
    up = (mpf(1), mpf(0), mpmath.sqrt(tau), mpmath.sqrt(taup - tau))
    return w, u, up


def _dot(a, b):
    return mpmath.fsum(x * y for x, y in zip(a, b))


def gaussian_oracle_mi(p: AuxNoiseParams, dps: int = 40) -> tuple[float, float]:
    """(I(W; U'), I(W; U) - I(W; U')) for the linear Gaussian test channel, in nats.

    Computed from conditional variances of the joint covariance with ``dps``
    decimal digits, independently of the closed-form bounds.
    """
    if not p.D < 1.0:
        raise OutOfRange("the Gaussian test channel needs D < 1")
    with mpmath.workdps(dps):
        w, u, up = _test_channel_rows(p)
        ww, uu, pp = _dot(w, w), _dot(u, u), _dot(up, up)
        wu, wp, up_ = _dot(w, u), _dot(w, up), _dot(u, up)
        var_w_given_p = ww - wp * wp / pp
        mi_p = mpmath.log(ww / var_w_given_p) / 2
        # I(W; U) - I(W; U') = I(W; U | U') because U' is U plus independent noise
        var_u_given_p = uu - up_ * up_ / pp
        if var_u_given_p == 0:
            diff = mpmath.mpf(0)
        else:
            cov_wu_given_p = wu - wp * up_ / pp
            var_w_given_both = var_w_given_p - cov_wu_given_p ** 2 / var_u_given_p
            diff = mpmath.log(var_w_given_p / var_w_given_both) / 2
        return float(mi_p), float(diff)


def _bivariate_log_ratio(x, y, vx, vy, cxy):
    det = vx * vy - cxy * cxy
    quad = (vy * x * x - 2 * cxy * x * y + vx * y * y) / det
    joint = -0.5 * quad - 0.5 * np.log(det)
    marg = -0.5 * x * x / vx - 0.5 * np.log(vx) - 0.5 * y * y / vy - 0.5 * np.log(vy)
    return joint - marg


def monte_carlo_mi_estimate(p: AuxNoiseParams, samples: int, seed: int) -> tuple[float, float]:
    """Monte Carlo estimate of I(W; U') for the Gaussian test channel.

    Averages the exact bivariate Gaussian log density ratio over draws from a
    ``numpy`` generator seeded with ``seed``. Returns (estimate, standard error).
    """
    if samples < MIN_MC_SAMPLES:
        raise InsufficientSamples(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    if not p.D < 1.0:
        raise OutOfRange("the Gaussian test channel needs D < 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((3, samples))
    D = p.D
    w = (1.0 - D) * z[0] + math.sqrt(D * (1.0 - D)) * z[1]
    u_prime = z[0] + math.sqrt(p.tau_prime) * z[2]
    ratio = _bivariate_log_ratio(w, u_prime, 1.0 - D, 1.0 + p.tau_prime, 1.0 - D)
    return float(ratio.mean()), float(ratio.std(ddof=1) / math.sqrt(samples))
