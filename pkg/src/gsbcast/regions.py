"""Left-hand sides of the region inequalities, membership and boundary tracing.

Every region has the form ``lhs(d) <= P + N_1`` over ordered distortion
vectors. The four sums are

* inner (separation):      sum_k dN_k * d_k ** (-1/b)
* outer, 2^k scaling:       sum_k dN_k * (2**k * d_k) ** (-1/b)
* outer, K scaling:         sum_k dN_k * (K * d_k) ** (-1/b)
* parametric outer (tau):   sum_k dN_k * bracket_k(d, tau) ** (1/b)

and the point-to-point bound d_k >= (1 + P/N_k) ** (-b) is written in the same
shape as max_k [N_1 + N_k (d_k ** (-1/b) - 1)] <= P + N_1.

Every lhs is non-increasing in each d_j, so boundaries can be found by
bisection.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import os
from dataclasses import dataclass
from typing import IO, NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, IndexOutOfRange, NoSolution, NotMonotone, OutOfRange
from .model import BroadcastChannel, DistortionVector, TauVector, check_dims, validate_tau

#: Additive tolerance on the slack used by membership tests.
MEMBERSHIP_TOL = 1e-9
#: Lower end of the bisection bracket for the last user.
D_FLOOR = 1e-300


class RegionKind(enum.Enum):
    INNER = "inner"
    OUTER_POW2 = "outer-pow2"
    OUTER_K = "outer-k"
    PARAMETRIC = "parametric"
    POINT_TO_POINT = "p2p"


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    tau: TauVector | None = None

    def __post_init__(self) -> None:
        if self.kind is RegionKind.PARAMETRIC and self.tau is None:
            raise DimensionMismatch("parametric region needs a tau vector")
        if self.kind is not RegionKind.PARAMETRIC and self.tau is not None:
            raise DimensionMismatch(f"{self.kind.value} region takes no tau vector")
        if self.tau is not None and not isinstance(self.tau, TauVector):
            object.__setattr__(self, "tau", TauVector(tuple(self.tau)))

    @classmethod
    def parametric(cls, tau: Sequence[float] | TauVector) -> "Region":
        return cls(RegionKind.PARAMETRIC, tau if isinstance(tau, TauVector) else TauVector(tuple(tau)))

    @property
    def name(self) -> str:
        if self.tau is None:
            return self.kind.value
        return "parametric(" + ",".join(_fmt_tau(t) for t in self.tau) + ")"


INNER = Region(RegionKind.INNER)
OUTER_POW2 = Region(RegionKind.OUTER_POW2)
OUTER_K = Region(RegionKind.OUTER_K)
POINT_TO_POINT = Region(RegionKind.POINT_TO_POINT)


def _fmt_tau(t: float) -> str:
    return "inf" if t == math.inf else format(t, "g")


class MembershipResult(NamedTuple):
    lhs: float
    budget: float
    member: bool
    slack: float

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "budget": self.budget, "slack": self.slack, "member": self.member}


def _kernel_args(region: Region, channel: BroadcastChannel):
    K = channel.K
    inv_b = 1.0 / channel.bandwidth
    ones = np.ones(K)
    zeros = np.zeros(K)
    kind = region.kind
    if kind is RegionKind.INNER:
        return kernels.KIND_SCALED, kernels.as_array(channel.delta), zeros, ones, inv_b
    if kind is RegionKind.OUTER_POW2:
        scale = 2.0 ** np.arange(1, K + 1, dtype=np.float64)
        return kernels.KIND_SCALED, kernels.as_array(channel.delta), zeros, scale, inv_b
    if kind is RegionKind.OUTER_K:
        return kernels.KIND_SCALED, kernels.as_array(channel.delta), zeros, np.full(K, float(K)), inv_b
    if kind is RegionKind.PARAMETRIC:
        tau = validate_tau(region.tau, K)
        return kernels.KIND_PARAMETRIC, kernels.as_array(channel.delta), kernels.as_array(tau.full()), ones, inv_b
    return kernels.KIND_P2P, kernels.as_array(channel.noise), zeros, ones, inv_b


def region_lhs(region: Region, channel: BroadcastChannel, d: Sequence[float] | DistortionVector) -> float:
    vec = check_dims(channel, d)
    kind, coef, tau, scale, inv_b = _kernel_args(region, channel)
    return float(kernels.evaluate(kind, coef, kernels.as_array(vec.d), tau, scale, inv_b))


def inner_lhs(channel: BroadcastChannel, d) -> float:
    """sum_k dN_k d_k^(-1/b), the separation inner-bound sum."""
    return region_lhs(INNER, channel, d)


def outer_pow2_lhs(channel: BroadcastChannel, d) -> float:
    return region_lhs(OUTER_POW2, channel, d)


def outer_K_lhs(channel: BroadcastChannel, d) -> float:
    return region_lhs(OUTER_K, channel, d)


def parametric_outer_lhs(channel: BroadcastChannel, d, tau) -> float:
    """Parametric outer-bound sum for auxiliary variances ``tau`` (length K-1).

    Infinite entries of ``tau`` are evaluated in the limit.
    """
    return region_lhs(Region.parametric(tau), channel, d)


def parametric_brackets(channel: BroadcastChannel, d, tau) -> list[float]:
    """The K brackets of the parametric sum, before raising to 1/b."""
    vec = check_dims(channel, d)
    full = validate_tau(tau, channel.K).full()
    return [float(x) for x in kernels.brackets(kernels.as_array(vec.d), kernels.as_array(full))]


def point_to_point_distortion(channel: BroadcastChannel, k: int) -> float:
    """(1 + P/N_k)^(-b): the distortion user ``k`` (1-based) gets with the channel to itself."""
    if not 1 <= k <= channel.K:
        raise IndexOutOfRange(f"user index {k} outside 1..{channel.K}")
    return (1.0 + channel.power / channel.noise[k - 1]) ** (-channel.bandwidth)


def point_to_point_lhs(channel: BroadcastChannel, d) -> float:
    return region_lhs(POINT_TO_POINT, channel, d)


def membership(region: Region, channel: BroadcastChannel, d, tol: float = MEMBERSHIP_TOL) -> MembershipResult:
    lhs = region_lhs(region, channel, d)
    budget = channel.budget
    return MembershipResult(lhs, budget, lhs <= budget + tol, budget - lhs)


def membership_with_zeros(region: Region, channel: BroadcastChannel, d: Sequence[float],
                          tol: float = MEMBERSHIP_TOL) -> MembershipResult:
    """Membership for vectors that may contain zero distortions.

    A zero distortion makes its term infinite unless the term's coefficient is
    zero, in which case the term drops out. Positive vectors are passed to
    :func:`membership` unchanged.
    """
    d = [float(x) for x in d]
    if len(d) != channel.K:
        raise DimensionMismatch(f"channel has {channel.K} users but {len(d)} distortions were given")
    if all(x > 0 for x in d):
        return membership(region, channel, d, tol)
    if any(not 0 <= x <= 1 for x in d):
        raise OutOfRange(f"distortions must lie in [0, 1], got {d}")
    if any(b > a for a, b in zip(d, d[1:])):
        raise NotMonotone(f"distortions must be non-increasing, got {d}")
    inv_b = 1.0 / channel.bandwidth
    kind = region.kind
    lhs = 0.0
    if kind is RegionKind.POINT_TO_POINT:
        lhs = math.inf
    elif kind is RegionKind.PARAMETRIC:
        full = validate_tau(region.tau, channel.K).full()
        prefix = 1.0
        for k, (c, x) in enumerate(zip(channel.delta, d)):
            bracket = prefix * _limit_ratio(1.0, x, full[k])
            if c != 0.0:
                lhs += c * bracket ** inv_b
            if k + 1 < len(d):
                prefix *= _limit_ratio(d[k + 1], x, full[k])
    else:
        K = channel.K
        for k, (c, x) in enumerate(zip(channel.delta, d), start=1):
            if c == 0.0:
                continue
            s = {RegionKind.INNER: 1.0, RegionKind.OUTER_POW2: 2.0 ** k, RegionKind.OUTER_K: float(K)}[kind]
            lhs += math.inf if x == 0.0 else c * (s * x) ** (-inv_b)
    budget = channel.budget
    return MembershipResult(lhs, budget, lhs <= budget + tol, budget - lhs)


def _limit_ratio(x: float, y: float, t: float) -> float:
    if t == math.inf:
        return 1.0
    if y + t == 0.0:
        return math.inf if x + t > 0 else 1.0
    return (x + t) / (y + t)


class BoundarySolution(NamedTuple):
    value: float
    binding: str  # "budget" or "ordering"
    iterations: int


def boundary_solve(region: Region, channel: BroadcastChannel, d_fixed: Sequence[float], k: int,
                   tol: float = MEMBERSHIP_TOL, abs_tol: float = 1e-12, rel_tol: float = 1e-14,
                   max_iter: int = 400) -> BoundarySolution:
    """Smallest d_k keeping the vector in ``region``, other coordinates fixed.

    ``d_fixed`` lists the other K-1 coordinates in order (a full length-K
    vector is also accepted; its k-th entry is ignored). The search interval
    is [d_{k+1}, d_{k-1}] (with 1e-300 and 1 at the ends), so the result never
    breaks the ordering. When even d_k = d_{k+1} satisfies the budget the
    ordering constraint is the binding one and that value is returned with
    ``binding="ordering"``.

    ``tol`` is the slack allowed when testing the interval ends; the bisection
    itself targets lhs = P + N_1 exactly.
    """
    K = channel.K
    if not 1 <= k <= K:
        raise IndexOutOfRange(f"user index {k} outside 1..{K}")
    fixed = [float(x) for x in d_fixed]
    if len(fixed) == K:
        fixed = fixed[: k - 1] + fixed[k:]
    if len(fixed) != K - 1:
        raise DimensionMismatch(f"need {K - 1} fixed coordinates, got {len(fixed)}")
    if any(not 0 < x <= 1 for x in fixed):
        raise OutOfRange(f"fixed distortions must lie in (0, 1], got {fixed}")
    if any(b > a for a, b in zip(fixed, fixed[1:])):
        raise NotMonotone(f"fixed distortions must be non-increasing, got {fixed}")
    hi = fixed[k - 2] if k >= 2 else 1.0
    lo = fixed[k - 1] if k <= K - 1 else D_FLOOR

    kind, coef, tau, scale, inv_b = _kernel_args(region, channel)
    d = kernels.as_array(fixed[: k - 1] + [hi] + fixed[k - 1 :])
    limit = channel.budget + tol
    idx = k - 1

    lhs_hi = kernels.evaluate(kind, coef, d, tau, scale, inv_b)
    d[idx] = lo
    lo_ok = kernels.evaluate(kind, coef, d, tau, scale, inv_b) <= limit
    if not lhs_hi <= limit:
        if lo_ok:
            raise NotMonotone("region lhs increased along the search interval")
        raise NoSolution(f"no feasible d_{k} in [{lo:g}, {hi:g}] for {region.name}")
    if lo_ok:
        return BoundarySolution(lo, "ordering", 0)
    if lhs_hi > channel.budget:
        # feasible only through the tolerance: the boundary sits at the upper end
        return BoundarySolution(hi, "budget", 0)
    value, it = kernels.bisect(kind, coef, d, tau, scale, inv_b, idx, lo, hi,
                               channel.budget, 0.0, abs_tol, rel_tol, max_iter)
    return BoundarySolution(float(value), "budget", int(it))


class BoundarySample(NamedTuple):
    free_coord: float
    solved_coord: float
    binding: str  # "budget", "ordering" or "infeasible"


@dataclass(frozen=True)
class BoundaryCurve:
    samples: tuple[BoundarySample, ...]
    region: Region
    channel: BroadcastChannel

    def __len__(self) -> int:
        return len(self.samples)

    def feasible(self) -> list[BoundarySample]:
        return [s for s in self.samples if s.binding != "infeasible"]

    def write_csv(self, fh: IO[str]) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["free_coord", "solved_coord", "binding"])
        for s in self.samples:
            writer.writerow([format(s.free_coord, ".17g"), format(s.solved_coord, ".17g"), s.binding])

    def to_csv(self, path: str | os.PathLike | None = None) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


def read_curve_csv(path: str | os.PathLike) -> list[BoundarySample]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [BoundarySample(float(r["free_coord"]), float(r["solved_coord"]), r["binding"]) for r in rows]


def trace_boundary(region: Region, channel: BroadcastChannel, grid: Sequence[float], solve: int = 1,
                   free: int | None = None, base: Sequence[float] | None = None,
                   tol: float = MEMBERSHIP_TOL) -> BoundaryCurve:
    """Solve the boundary coordinate ``solve`` for each value of coordinate ``free``.

    For K = 2 the defaults trace d_1 as a function of d_2. For larger K the
    remaining coordinates are taken from ``base``. Grid points whose fixed
    coordinates are out of order or admit no solution are kept with
    ``binding="infeasible"`` and a NaN solved value.
    """
    K = channel.K
    if free is None:
        free = K
    if solve == free or not (1 <= solve <= K and 1 <= free <= K):
        raise IndexOutOfRange(f"need distinct user indices in 1..{K}, got solve={solve}, free={free}")
    if K > 2 and base is None:
        raise DimensionMismatch("tracing with K > 2 needs a base vector for the other coordinates")
    template = [1.0] * K if base is None else [float(x) for x in base]
    if len(template) != K:
        raise DimensionMismatch(f"base vector needs {K} entries, got {len(template)}")
    samples = []
    for g in grid:
        g = float(g)
        vec = list(template)
        vec[free - 1] = g
        fixed = vec[: solve - 1] + vec[solve:]
        try:
            sol = boundary_solve(region, channel, fixed, solve, tol=tol)
        except (NoSolution, NotMonotone, OutOfRange):
            samples.append(BoundarySample(g, math.nan, "infeasible"))
        else:
            samples.append(BoundarySample(g, sol.value, sol.binding))
    return BoundaryCurve(tuple(samples), region, channel)
