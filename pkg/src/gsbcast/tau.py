"""Constructive tau sequences for the parametric outer bound.

Three choices of the auxiliary variances turn the parametric bound into the
closed-form outer regions:

* ``tau_for_pow2``: tau_k = d_k, which dominates the 2^k-scaled sum;
* ``tau_for_Kfactor``: the alpha recursion, which makes every bracket equal to
  1/(K d_k) and so dominates the K-scaled sum;
* ``tau_for_relaxed``: tau_k = d_k on labelled users and carried forward
  otherwise, paired with the relaxed distortion vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import kernels
from .errors import DegenerateDenominator, DimensionMismatch, InconsistentLabels
from .model import BroadcastChannel, DistortionVector, TauVector, check_dims, validate_distortions

#: Below this, 1 - F d is treated as zero and the infinite sentinel is used.
SINGULAR_EPS = 1e-12


def _json_float(x: float):
    if x == math.inf:
        return "inf"
    return x


def tau_for_pow2(d: Sequence[float] | DistortionVector) -> TauVector:
    vec = validate_distortions(d)
    return TauVector(vec.d[:-1])


@dataclass(frozen=True)
class KfactorCertificate:
    """tau for the K-factor outer bound together with its check values.

    ``residuals[k]`` is bracket_k - 1/(K d_k); ``split_index`` is the number
    of leading users with d_k > 1/K, whose tau are infinite.
    """

    tau: TauVector
    alpha: tuple[float, ...]
    residuals: tuple[float, ...]
    split_index: int
    d: tuple[float, ...]

    @property
    def K(self) -> int:
        return len(self.d)

    def relative_residuals(self) -> list[float]:
        K = self.K
        return [r * K * x for r, x in zip(self.residuals, self.d)]

    def to_dict(self) -> dict:
        return {
            "tau": [_json_float(t) for t in self.tau],
            "alpha": list(self.alpha),
            "residuals": list(self.residuals),
            "split_index": self.split_index,
        }


def _next_tau(d: float, d_next: float, tau: float) -> float:
    # Solves bracket_{k+1} = 1/(F d_{k+1}) given bracket_k = 1/(F d_k); this is
    # d'(1 - alpha)/(alpha - d') with both sides multiplied by (d' + tau).
    if tau == math.inf:
        gap = d - d_next
        if gap <= 0.0:
            return math.inf
        return d_next * (1.0 - d) / gap
    num = d_next * (tau * (1.0 - d) - (d - d_next))
    den = d - d_next * d_next + tau * (d - d_next)
    if den <= 0.0:
        raise DegenerateDenominator(f"alpha - d_next <= 0 at d={d}, d_next={d_next}, tau={tau}")
    # the root lies in [0, tau]; clamp away rounding when d_next == d
    return min(max(num / den, 0.0), tau)


def kfactor_brackets(d: Sequence[float], tau: Sequence[float]) -> list[float]:
    full = list(tau) + [0.0]
    return [float(x) for x in kernels.brackets(kernels.as_array(d), kernels.as_array(full))]


def verify_Kfactor(K: int, d: Sequence[float] | DistortionVector, tau: Sequence[float] | TauVector) -> list[float]:
    """bracket_k - 1/(K d_k) for k = 1..K; non-negative entries certify the K-factor bound."""
    vec = validate_distortions(d)
    tau = tau if isinstance(tau, TauVector) else TauVector(tuple(tau))
    if len(vec) != K or len(tau) != K - 1:
        raise DimensionMismatch(f"need {K} distortions and {K - 1} tau values, got {len(vec)} and {len(tau)}")
    return [b - 1.0 / (K * x) for b, x in zip(kfactor_brackets(vec.d, tau.tau), vec.d)]


def tau_for_Kfactor(K: int, d: Sequence[float] | DistortionVector, subproblem_factor: bool = False) -> KfactorCertificate:
    """Build tau so that bracket_k = 1/(K d_k) for the users after the split.

    Users with d_k > 1/K get tau_k = inf. On the remaining users the first tau
    is (F-1) d/(1 - F d) and the rest follow the alpha recursion. By default
    F = K, which makes the intermediate residuals vanish at factor K. With
    ``subproblem_factor=True``, F = K - r (the (K - r)-user subproblem), whose
    residuals at factor K are only non-negative.
    """
    vec = validate_distortions(d, K)
    x = vec.d
    r = sum(1 for v in x if v > 1.0 / K)
    # d is ordered, so the users above 1/K form a prefix
    tau = [math.inf] * min(r, K - 1)
    F = K - r if subproblem_factor else K
    if r < K - 1:
        first = x[r]
        den = 1.0 - F * first
        tau.append(math.inf if den < SINGULAR_EPS else (F - 1) * first / den)
        for k in range(r, K - 2):
            tau.append(_next_tau(x[k], x[k + 1], tau[k]))
    alpha = tuple(
        x[k] if tau[k] == math.inf else x[k] * (1.0 + tau[k]) / (x[k + 1] + tau[k])
        for k in range(K - 1)
    )
    tau_vec = TauVector(tuple(tau))
    residuals = tuple(verify_Kfactor(K, vec, tau_vec))
    return KfactorCertificate(tau_vec, alpha, residuals, r, x)


class RelaxedVector(NamedTuple):
    d_star: tuple[float, ...]
    labels: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"d_star": list(self.d_star), "labels": list(self.labels)}


def relaxed_vector(d: Sequence[float] | DistortionVector) -> RelaxedVector:
    """Relaxed distortion vector and its binary labels.

    Starting from d*_0 = 1, user k keeps d*_{k-1} (label 0) when
    2^(1 + labels so far) d_k >= d*_{k-1}, and otherwise takes that scaled
    value (label 1).
    """
    vec = validate_distortions(d)
    prev = 1.0
    count = 0
    d_star, labels = [], []
    for x in vec.d:
        scaled = 2.0 ** (1 + count) * x
        if scaled >= prev:
            labels.append(0)
        else:
            prev = scaled
            count += 1
            labels.append(1)
        d_star.append(prev)
    return RelaxedVector(tuple(d_star), tuple(labels))


def label_budget(labels: Sequence[int], d: Sequence[float] | DistortionVector) -> tuple[int, float]:
    """Number of labels and the log2(d_1/d_K) + 1 cap it must respect."""
    vec = validate_distortions(d)
    if len(labels) != len(vec):
        raise DimensionMismatch(f"{len(labels)} labels for {len(vec)} distortions")
    total = int(sum(labels))
    bound = math.log2(vec.d[0]) - math.log2(vec.d[-1]) + 1.0
    if total > bound + 1e-12:
        raise InconsistentLabels(f"{total} labels exceed the cap {bound}")
    return total, bound


def tau_for_relaxed(d: Sequence[float] | DistortionVector, labels: Sequence[int], tau0: float = 1.0) -> TauVector:
    """tau_k = d_k where the label is set, otherwise tau_{k-1}; tau_0 = ``tau0``.

    With ``tau0=math.inf`` the users before the first label get brackets of
    exactly 1, and the parametric sum is bounded below by the inner sum at the
    relaxed vector. The default ``tau0=1`` does not have that property when
    d_1 < 1 and the first label comes late.
    """
    vec = validate_distortions(d)
    labels = tuple(int(b) for b in labels)
    if labels != relaxed_vector(vec).labels:
        raise InconsistentLabels(f"labels {list(labels)} do not match the relaxed vector of {list(vec.d)}")
    tau = []
    prev = tau0
    for x, b in zip(vec.d[:-1], labels[:-1]):
        if b:
            prev = x
        tau.append(prev)
    return TauVector(tuple(tau))


def collapsed_relaxed_sum(channel: BroadcastChannel, d: Sequence[float] | DistortionVector) -> float:
    """N_1 - N_{k_1} + sum_i (N_{k_i} - N_{k_{i+1}}) (2^i d_{k_i})^(-1/b) over labelled users k_i.

    Equal to the inner-bound sum evaluated at the relaxed vector.
    """
    vec = check_dims(channel, d)
    labels = relaxed_vector(vec).labels
    ks = [k for k, b in enumerate(labels) if b]
    noise = list(channel.noise) + [0.0]
    inv_b = 1.0 / channel.bandwidth
    total = noise[0] - (noise[ks[0]] if ks else 0.0)
    for i, k in enumerate(ks, start=1):
        nxt = ks[i] if i < len(ks) else channel.K
        total += (noise[k] - noise[nxt]) * (2.0 ** i * vec.d[k]) ** (-inv_b)
    return total
