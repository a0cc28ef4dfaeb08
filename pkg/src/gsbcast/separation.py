"""Separation-based achievability: broadcast capacity arithmetic and gap certificates.

Rates are in nats per channel use unless a name says otherwise. The Gaussian
broadcast capacity region is used in the form

    R_k >= 0,  sum_k dN_k exp(2 sum_{j<=k} R_j) <= P + N_1

and a successive-refinement source code turns cumulative rates into
distortions via d_k = exp(-2 b sum_{j<=k} R_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, ModePreconditionFailed, NegativeRate
from .model import BroadcastChannel, DistortionVector, check_dims, validate_distortions
from .regions import (
    INNER,
    OUTER_K,
    OUTER_POW2,
    MEMBERSHIP_TOL,
    MembershipResult,
    Region,
    membership,
)
from .tau import relaxed_vector, tau_for_Kfactor, tau_for_relaxed

LN2 = math.log(2.0)


@dataclass(frozen=True)
class RateVector:
    """Per-user incremental message rates in nats per channel use."""

    r: tuple[float, ...]

    def __post_init__(self) -> None:
        r = tuple(float(x) for x in self.r)
        object.__setattr__(self, "r", r)
        for x in r:
            if not x >= 0:
                raise NegativeRate(f"rates must be non-negative, got {x}")

    def __len__(self) -> int:
        return len(self.r)

    def __iter__(self):
        return iter(self.r)

    @property
    def bits(self) -> tuple[float, ...]:
        return tuple(x / LN2 for x in self.r)

    @classmethod
    def from_bits(cls, bits: Sequence[float]) -> "RateVector":
        return cls(tuple(float(x) * LN2 for x in bits))

    def to_dict(self) -> dict:
        return {"nats": list(self.r), "bits": list(self.bits)}


def _rates(rates) -> RateVector:
    return rates if isinstance(rates, RateVector) else RateVector(tuple(rates))


def capacity_lhs(channel: BroadcastChannel, rates: Sequence[float] | RateVector) -> float:
    rv = _rates(rates)
    if len(rv) != channel.K:
        raise DimensionMismatch(f"channel has {channel.K} users but {len(rv)} rates were given")
    total = 0.0
    cum = 0.0
    for dn, r in zip(channel.delta, rv.r):
        cum += r
        total += dn * math.exp(2.0 * cum)
    return total


def capacity_membership(channel: BroadcastChannel, rates, tol: float = MEMBERSHIP_TOL) -> MembershipResult:
    lhs = capacity_lhs(channel, rates)
    budget = channel.budget
    return MembershipResult(lhs, budget, lhs <= budget + tol, budget - lhs)


def rates_from_distortions(b: float, d: Sequence[float] | DistortionVector) -> RateVector:
    """R_k = (ln d_{k-1} - ln d_k)/(2b) with d_0 = 1."""
    vec = validate_distortions(d)
    prev = 0.0
    out = []
    for x in vec.d:
        cur = math.log(x)
        out.append(max(prev - cur, 0.0) / (2.0 * b))
        prev = cur
    return RateVector(tuple(out))


def distortions_from_rates(b: float, rates: Sequence[float] | RateVector) -> DistortionVector:
    rv = _rates(rates)
    cum = 0.0
    out = []
    for r in rv.r:
        cum += r
        out.append(math.exp(-2.0 * b * cum))
    return DistortionVector(tuple(out))


def inner_membership_via_rates(channel: BroadcastChannel, d, tol: float = MEMBERSHIP_TOL) -> MembershipResult:
    """Inner-bound membership decided through the broadcast capacity region."""
    vec = check_dims(channel, d)
    return capacity_membership(channel, rates_from_distortions(channel.bandwidth, vec), tol)


def genie_rates(channel: BroadcastChannel) -> RateVector:
    """Half-bit-per-channel-use genie allocation.

    R_k = max(C_k - C_{k-1} - 1/2, 0) bits with C_k = log2(1 + P/N_k)/2 and
    C_0 = 0 (N_0 taken as infinite). Returned in nats; use ``.bits``.
    """
    bits = []
    prev = 0.0
    for n in channel.noise:
        c = 0.5 * math.log2(1.0 + channel.power / n)
        bits.append(max(c - prev - 0.5, 0.0))
        prev = c
    return RateVector.from_bits(bits)


@dataclass(frozen=True)
class GenieReport:
    rates: RateVector
    residuals_bits: tuple[float, ...]
    capacity: MembershipResult

    @property
    def p2p_ok(self) -> tuple[bool, ...]:
        return tuple(r >= -1e-12 for r in self.residuals_bits)

    def to_dict(self) -> dict:
        return {
            "rates_bits": list(self.rates.bits),
            "rates_nats": list(self.rates.r),
            "p2p_residuals_bits": list(self.residuals_bits),
            "p2p_ok": list(self.p2p_ok),
            "capacity": self.capacity.to_dict(),
        }


def genie_p2p_check(channel: BroadcastChannel, b: float | None = None) -> tuple[float, ...]:
    """Per-user sum_{i<=k} R_i + k/2 - log2(1 + P/N_k)/2 in bits; non-negative means the genie suffices.

    ``b`` is accepted for interface symmetry; the genie works per channel use.
    """
    bits = genie_rates(channel).bits
    out = []
    cum = 0.0
    for k, (r, n) in enumerate(zip(bits, channel.noise), start=1):
        cum += r
        out.append(cum + 0.5 * k - 0.5 * math.log2(1.0 + channel.power / n))
    return tuple(out)


def genie_report(channel: BroadcastChannel, tol: float = MEMBERSHIP_TOL) -> GenieReport:
    rates = genie_rates(channel)
    return GenieReport(rates, genie_p2p_check(channel), capacity_membership(channel, rates, tol))


GAP_MODES = ("pow2", "Kfactor", "relaxed")


@dataclass(frozen=True)
class GapCertificate:
    mode: str
    input: tuple[float, ...]
    scaled: tuple[float, ...]
    factors: tuple[float, ...]
    inner: MembershipResult | None
    valid: bool
    requires_relaxed: bool = False

    @property
    def inner_slack(self) -> float | None:
        return None if self.inner is None else self.inner.slack

    def to_dict(self) -> dict:
        return {
            "input": list(self.input),
            "scaled": list(self.scaled),
            "factors": list(self.factors),
            "inner_slack": self.inner_slack,
            "mode": self.mode,
            "inner_member": None if self.inner is None else self.inner.member,
            "requires_relaxed": self.requires_relaxed,
        }


def gap_certificate(channel: BroadcastChannel, d, mode: str, tol: float = MEMBERSHIP_TOL) -> GapCertificate:
    """Constant-factor certificate for a distortion vector assumed achievable.

    pow2
        scales d_k by 2^k; needs d in the 2^k outer region and a scaled vector
        that is still a distortion vector, otherwise ``requires_relaxed`` is set.
    Kfactor
        scales by K and clips at 1; needs d in the K outer region, or, when
        clipping happens, in the parametric region with the K-factor tau.
    relaxed
        uses the relaxed vector; needs d in the parametric region with the
        relaxed tau, started from tau_0 = inf so that the parametric sum
        dominates the inner sum at the relaxed vector.

    Raises :class:`ModePreconditionFailed` when ``d`` fails the outer test.
    """
    vec = check_dims(channel, d)
    x = vec.d
    K = channel.K
    if mode == "pow2":
        if not membership(OUTER_POW2, channel, vec, tol).member:
            raise ModePreconditionFailed("d is outside the 2^k-scaled outer region")
        scaled = tuple(2.0 ** k * v for k, v in enumerate(x, start=1))
        ok = all(v <= 1.0 for v in scaled) and all(b <= a for a, b in zip(scaled, scaled[1:]))
        if not ok:
            return GapCertificate(mode, x, scaled, _factors(scaled, x), None, False, requires_relaxed=True)
    elif mode == "Kfactor":
        scaled = tuple(min(1.0, K * v) for v in x)
        if K * x[0] <= 1.0:
            pre = membership(OUTER_K, channel, vec, tol)
        else:
            cert = tau_for_Kfactor(K, vec)
            pre = membership(Region.parametric(cert.tau), channel, vec, tol)
        if not pre.member:
            raise ModePreconditionFailed("d fails the outer test for the K-factor certificate")
    elif mode == "relaxed":
        rv = relaxed_vector(vec)
        tau = tau_for_relaxed(vec, rv.labels, tau0=math.inf)
        if not membership(Region.parametric(tau), channel, vec, tol).member:
            raise ModePreconditionFailed("d is outside the parametric region with the relaxed tau")
        scaled = rv.d_star
    else:
        raise ValueError(f"unknown mode {mode!r}; expected one of {GAP_MODES}")
    inner = membership(INNER, channel, DistortionVector(scaled), tol)
    return GapCertificate(mode, x, scaled, _factors(scaled, x), inner, True)


def _factors(scaled, x) -> tuple[float, ...]:
    return tuple(s / v for s, v in zip(scaled, x))
