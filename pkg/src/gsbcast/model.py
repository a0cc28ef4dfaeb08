"""Domain types and validation shared by every other module.

Users are indexed 1..K throughout the public API, matching the usual
convention that user 1 is the weakest receiver (largest noise variance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidTau,
    LengthMismatch,
    NonPositiveBandwidth,
    NonPositivePower,
    NonPositiveVariance,
    NotMonotone,
    OutOfRange,
    UnsortedNoise,
)

#: Default relative comparison tolerance.
DEFAULT_RTOL = 1e-9


def _as_floats(values: Iterable[Any], what: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise LengthMismatch(f"{what} must be a sequence of numbers") from exc


@dataclass(frozen=True)
class BroadcastChannel:
    """Degraded Gaussian broadcast channel.

    ``noise`` holds the variances N_1 >= ... >= N_K > 0, ``power`` the input
    power P and ``bandwidth`` the mismatch factor b (channel uses per source
    sample).
    """

    noise: tuple[float, ...]
    power: float
    bandwidth: float
    delta: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        noise = _as_floats(self.noise, "noise")
        object.__setattr__(self, "noise", noise)
        object.__setattr__(self, "power", float(self.power))
        object.__setattr__(self, "bandwidth", float(self.bandwidth))
        if not noise:
            raise LengthMismatch("channel needs at least one user")
        for n in noise:
            if not (n > 0 and math.isfinite(n)):
                raise NonPositiveVariance(f"noise variance must be positive and finite, got {n}")
        if not (self.power > 0 and math.isfinite(self.power)):
            raise NonPositivePower(f"power must be positive and finite, got {self.power}")
        if not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise NonPositiveBandwidth(f"bandwidth must be positive and finite, got {self.bandwidth}")
        for a, b in zip(noise, noise[1:]):
            if b > a:
                raise UnsortedNoise(f"noise variances must be non-increasing, got {list(noise)}")
        delta = tuple(n - m for n, m in zip(noise, noise[1:] + (0.0,)))
        object.__setattr__(self, "delta", delta)

    @property
    def K(self) -> int:
        return len(self.noise)

    @property
    def budget(self) -> float:
        """Right-hand side P + N_1 shared by every region inequality."""
        return self.power + self.noise[0]

    def to_dict(self) -> dict:
        return {"noise": list(self.noise), "power": self.power, "bandwidth": self.bandwidth}


def _raw_fields(raw: Mapping[str, Any] | BroadcastChannel) -> tuple[tuple[float, ...], Any, Any]:
    if isinstance(raw, BroadcastChannel):
        return raw.noise, raw.power, raw.bandwidth
    try:
        noise, power, bandwidth = raw["noise"], raw["power"], raw["bandwidth"]
    except (KeyError, TypeError) as exc:
        raise LengthMismatch("channel needs 'noise', 'power' and 'bandwidth' fields") from exc
    if isinstance(noise, (int, float)):
        noise = [noise]
    return _as_floats(noise, "noise"), power, bandwidth


def canonical_order(raw: Mapping[str, Any] | BroadcastChannel) -> tuple[BroadcastChannel, tuple[int, ...]]:
    """Sort users by non-increasing noise.

    Returns the channel and ``perm`` such that canonical user ``i`` (0-based)
    is input user ``perm[i]``. The sort is stable, so ties keep input order.
    """
    noise, power, bandwidth = _raw_fields(raw)
    perm = tuple(sorted(range(len(noise)), key=lambda i: -noise[i]))
    channel = BroadcastChannel(tuple(noise[i] for i in perm), power, bandwidth)
    return channel, perm


def validate_channel(raw: Mapping[str, Any] | BroadcastChannel, strict: bool = True) -> BroadcastChannel:
    """Build a :class:`BroadcastChannel` from a mapping with ``noise``, ``power`` and ``bandwidth``.

    With ``strict=False`` unsorted noise is reordered instead of rejected; use
    :func:`canonical_order` when the permutation matters.
    """
    if not strict:
        return canonical_order(raw)[0]
    noise, power, bandwidth = _raw_fields(raw)
    return BroadcastChannel(noise, power, bandwidth)


def delta_noise(channel: BroadcastChannel, k: int) -> float:
    """N_k - N_{k+1} for user ``k`` in 1..K, with N_{K+1} = 0."""
    if not 1 <= k <= channel.K:
        raise IndexOutOfRange(f"user index {k} outside 1..{channel.K}")
    return channel.delta[k - 1]


@dataclass(frozen=True)
class DistortionVector:
    """Ordered distortions 1 >= d_1 >= ... >= d_K > 0."""

    d: tuple[float, ...]

    def __post_init__(self) -> None:
        d = _as_floats(self.d, "distortion vector")
        object.__setattr__(self, "d", d)
        if not d:
            raise LengthMismatch("distortion vector is empty")
        for x in d:
            if not (0 < x <= 1):
                raise OutOfRange(f"distortions must lie in (0, 1], got {x}")
        for a, b in zip(d, d[1:]):
            if b > a:
                raise NotMonotone(f"distortions must be non-increasing, got {list(d)}")

    def __len__(self) -> int:
        return len(self.d)

    def __iter__(self):
        return iter(self.d)

    def __getitem__(self, i):
        return self.d[i]


def validate_distortions(d: Sequence[float] | DistortionVector, K: int | None = None) -> DistortionVector:
    if isinstance(d, DistortionVector):
        vec = d
    else:
        vec = DistortionVector(tuple(d))
    if K is not None and len(vec) != K:
        raise LengthMismatch(f"expected {K} distortions, got {len(vec)}")
    return vec


@dataclass(frozen=True)
class TauVector:
    """Auxiliary noise variances tau_1 >= ... >= tau_{K-1} >= 0.

    ``math.inf`` is a legal entry and stands for the tau -> infinity limit;
    evaluators take the analytic limit instead of substituting a large number.
    The trailing tau_K = 0 is implicit and not stored.
    """

    tau: tuple[float, ...]

    def __post_init__(self) -> None:
        try:
            tau = tuple(float(t) for t in self.tau)
        except (TypeError, ValueError) as exc:
            raise InvalidTau("tau must be a sequence of numbers") from exc
        object.__setattr__(self, "tau", tau)
        for t in tau:
            if math.isnan(t) or t < 0:
                raise InvalidTau(f"tau entries must be non-negative, got {t}")
        for a, b in zip(tau, tau[1:]):
            if b > a:
                raise InvalidTau(f"tau must be non-increasing, got {list(tau)}")

    def __len__(self) -> int:
        return len(self.tau)

    def __iter__(self):
        return iter(self.tau)

    def __getitem__(self, i):
        return self.tau[i]

    def full(self) -> tuple[float, ...]:
        """tau_1..tau_K with the implicit tau_K = 0 appended."""
        return self.tau + (0.0,)


def validate_tau(tau: Sequence[float] | TauVector, K: int) -> TauVector:
    vec = tau if isinstance(tau, TauVector) else TauVector(tuple(tau))
    if len(vec) != K - 1:
        raise DimensionMismatch(f"need {K - 1} tau values for K={K}, got {len(vec)}")
    return vec


def check_dims(channel: BroadcastChannel, d: Sequence[float] | DistortionVector) -> DistortionVector:
    """Validate ``d`` and make sure it has one entry per user of ``channel``."""
    vec = validate_distortions(d)
    if len(vec) != channel.K:
        raise DimensionMismatch(f"channel has {channel.K} users but {len(vec)} distortions were given")
    return vec


#: The two-user channel used for the illustration of the parametric outer bounds.
EXAMPLE_CHANNEL = BroadcastChannel((10.0, 1.0), 50.0, 2.0)
