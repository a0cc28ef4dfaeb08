"""Command-line interface.

Every subcommand reads the channel from ``--channel`` (a JSON file with
``noise``, ``power`` and ``bandwidth``; the N=[10,1], P=50, b=2 example
channel when omitted), writes data to stdout or under ``--out``, and writes
diagnostics to stderr. ``check`` exits 0 for a member and 3 for a non-member;
any error exits 1.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from .errors import BroadcastError
from .mutual_info import (
    AuxNoiseParams,
    gaussian_oracle_mi,
    mi_difference_lower_bound,
    mi_lower_bound,
    monte_carlo_mi_estimate,
)
from .model import EXAMPLE_CHANNEL, BroadcastChannel, validate_channel
from .regions import (
    INNER,
    MEMBERSHIP_TOL,
    OUTER_K,
    OUTER_POW2,
    POINT_TO_POINT,
    Region,
    membership,
    point_to_point_distortion,
    trace_boundary,
)
from .separation import (
    GAP_MODES,
    RateVector,
    distortions_from_rates,
    gap_certificate,
    genie_report,
    inner_membership_via_rates,
    rates_from_distortions,
)
from .tau import relaxed_vector, tau_for_Kfactor, tau_for_pow2, tau_for_relaxed

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_MEMBER = 3

FIG2_TAUS = (0.0, 0.05, 0.2, 1.0, 5.0, math.inf)
FIG2_POINTS = 200


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors share the generic error exit code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    return obj


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def _emit(args, text: str, filename: str) -> None:
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, filename), "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load_channel(path: str | None) -> BroadcastChannel:
    if path is None:
        return EXAMPLE_CHANNEL
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}: malformed JSON ({exc})") from exc
    if not isinstance(raw, dict) or not {"noise", "power", "bandwidth"} <= raw.keys():
        raise CliError(f"{path}: expected an object with noise, power and bandwidth")
    return validate_channel(raw)


def parse_region(name: str, tau: Sequence[float] | None) -> Region:
    fixed = {"inner": INNER, "outer-pow2": OUTER_POW2, "outer-k": OUTER_K, "p2p": POINT_TO_POINT}
    if name == "parametric":
        if tau is None:
            raise CliError("--region parametric needs --tau")
        return Region.parametric(tau)
    if tau is not None:
        raise CliError(f"--tau only applies to --region parametric, not {name}")
    return fixed[name]


def tau_label(t: float) -> str:
    return "inf" if t == math.inf else format(t, "g")


def cmd_check(args, channel):
    region = parse_region(args.region, args.tau)
    res = membership(region, channel, args.d, args.tol)
    sys.stdout.write(_dump(res.to_dict()))
    return EXIT_OK if res.member else EXIT_NOT_MEMBER


def cmd_boundary(args, channel):
    region = parse_region(args.region, args.tau)
    lo, hi = args.grid_min, args.grid_max
    if not (0 < lo <= hi <= 1):
        raise CliError("need 0 < --grid-min <= --grid-max <= 1")
    grid = np.geomspace(lo, hi, args.points)
    free = args.free if args.free is not None else channel.K
    curve = trace_boundary(region, channel, grid, solve=args.solve, free=free, base=args.base, tol=args.tol)
    _emit(args, curve.to_csv(), "boundary.csv")
    return EXIT_OK


def fig2_grid(channel: BroadcastChannel, points: int = FIG2_POINTS) -> np.ndarray:
    """Log grid of d_K from user K's single-user optimum up to 1."""
    return np.geomspace(point_to_point_distortion(channel, channel.K), 1.0, points)


def write_fig2(channel: BroadcastChannel, out: str, taus: Sequence[float] = FIG2_TAUS,
               points: int = FIG2_POINTS, tol: float = MEMBERSHIP_TOL) -> list[str]:
    """Trace d_1 against d_2 for each tau, the inner bound and the corner point."""
    if channel.K != 2:
        raise CliError(f"fig2 needs a two-user channel, got K={channel.K}")
    os.makedirs(out, exist_ok=True)
    grid = fig2_grid(channel, points)
    written = []
    for t in taus:
        name = f"outer_tau_{tau_label(t)}.csv"
        trace_boundary(Region.parametric([t]), channel, grid, tol=tol).to_csv(os.path.join(out, name))
        written.append(name)
    trace_boundary(INNER, channel, grid, tol=tol).to_csv(os.path.join(out, "inner.csv"))
    written.append("inner.csv")
    corner = {
        "d1": point_to_point_distortion(channel, 1),
        "d2": point_to_point_distortion(channel, 2),
        "channel": channel.to_dict(),
    }
    with open(os.path.join(out, "p2p.json"), "w") as fh:
        fh.write(_dump(corner))
    written.append("p2p.json")
    return written


def cmd_fig2(args, channel):
    out = args.out or "fig2"
    taus = FIG2_TAUS if args.taus is None else tuple(args.taus)
    for name in write_fig2(channel, out, taus, args.points, args.tol):
        print(os.path.join(out, name), file=sys.stderr)
    return EXIT_OK


def cmd_relax(args, channel):
    _emit(args, _dump(relaxed_vector(args.d).to_dict()), "relax.json")
    return EXIT_OK


def cmd_rates(args, channel):
    b = channel.bandwidth
    if (args.d is None) == (args.rates is None):
        raise CliError("give exactly one of --d or --rates")
    if args.d is not None:
        d = args.d
        rates = rates_from_distortions(b, d)
    else:
        rates = RateVector(tuple(args.rates))
        d = list(distortions_from_rates(b, rates).d)
    report = {"distortions": list(d), "rates": rates.to_dict()}
    if len(d) == channel.K:
        report["capacity"] = inner_membership_via_rates(channel, d, args.tol).to_dict()
    _emit(args, _dump(report), "rates.json")
    return EXIT_OK


def cmd_genie(args, channel):
    _emit(args, _dump(genie_report(channel, args.tol).to_dict()), "genie.json")
    return EXIT_OK


def cmd_gap(args, channel):
    cert = gap_certificate(channel, args.d, args.mode, args.tol)
    _emit(args, _dump(cert.to_dict()), "gap.json")
    return EXIT_OK


def cmd_tau(args, channel):
    d = args.d
    if args.mode == "pow2":
        report = {"tau": list(tau_for_pow2(d))}
    elif args.mode == "kfactor":
        K = args.k if args.k is not None else len(d)
        report = tau_for_Kfactor(K, d, subproblem_factor=args.subproblem_factor).to_dict()
    else:
        rv = relaxed_vector(d)
        report = {"tau": list(tau_for_relaxed(d, rv.labels)), **rv.to_dict()}
    _emit(args, _dump(report), "tau.json")
    return EXIT_OK


def cmd_mi(args, channel):
    tau_prime = args.tau if args.tau_prime is None else args.tau_prime
    p = AuxNoiseParams(args.tau, tau_prime, args.D)
    report = {
        "params": {"tau": p.tau, "tau_prime": p.tau_prime, "D": p.D},
        "mi_lower_bound": mi_lower_bound(p),
        "mi_difference_lower_bound": mi_difference_lower_bound(p),
    }
    if p.D < 1.0:
        mi, diff = gaussian_oracle_mi(p)
        report["oracle"] = {"mi": mi, "mi_difference": diff}
    if args.samples:
        if args.seed is None:
            raise CliError("Monte Carlo needs an explicit --seed")
        est, se = monte_carlo_mi_estimate(p, args.samples, args.seed)
        report["monte_carlo"] = {"estimate": est, "std_error": se, "samples": args.samples, "seed": args.seed}
    _emit(args, _dump(report), "mi.json")
    return EXIT_OK


def _global_options(parser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--channel", metavar="JSON", help="channel file with noise, power, bandwidth",
                        **(kw or {"default": None}))
    parser.add_argument("--out", metavar="DIR", help="write results under DIR instead of stdout",
                        **(kw or {"default": None}))
    parser.add_argument("--tol", type=float, help=f"membership tolerance (default {MEMBERSHIP_TOL:g})",
                        **(kw or {"default": MEMBERSHIP_TOL}))
    parser.add_argument("--seed", type=int, help="seed for Monte Carlo runs", **(kw or {"default": None}))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gsbcast", description="Distortion-region bounds for Gaussian broadcast")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    regions = ["inner", "outer-pow2", "outer-k", "parametric", "p2p"]

    p = sub.add_parser("check", parents=[common], help="membership of a distortion vector")
    p.add_argument("--region", choices=regions, default="inner")
    p.add_argument("--d", type=_floats, required=True, help="comma-separated distortions")
    p.add_argument("--tau", type=_floats, help="K-1 tau values for --region parametric (inf allowed)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("boundary", parents=[common], help="trace a region boundary to CSV")
    p.add_argument("--region", choices=regions, default="inner")
    p.add_argument("--tau", type=_floats)
    p.add_argument("--solve", type=int, default=1, help="user whose distortion is solved for")
    p.add_argument("--free", type=int, help="user swept over the grid (default K)")
    p.add_argument("--base", type=_floats, help="values of the other coordinates when K > 2")
    p.add_argument("--grid-min", type=float, default=1e-4)
    p.add_argument("--grid-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=FIG2_POINTS)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("fig2", parents=[common], help="outer curves for several tau, inner curve and corner")
    p.add_argument("--taus", type=_floats, help="tau values (default 0,0.05,0.2,1,5,inf)")
    p.add_argument("--points", type=int, default=FIG2_POINTS)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("relax", parents=[common], help="relaxed distortion vector and labels")
    p.add_argument("--d", type=_floats, required=True)
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("rates", parents=[common], help="convert between distortions and rates")
    p.add_argument("--d", type=_floats)
    p.add_argument("--rates", type=_floats, help="incremental rates in nats")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("genie", parents=[common], help="half-bit genie rates and their check")
    p.set_defaults(func=cmd_genie)

    p = sub.add_parser("gap", parents=[common], help="constant-factor gap certificate")
    p.add_argument("--mode", choices=GAP_MODES, required=True)
    p.add_argument("--d", type=_floats, required=True)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("tau", parents=[common], help="constructive tau sequences")
    p.add_argument("--mode", choices=["pow2", "kfactor", "relaxed"], required=True)
    p.add_argument("--d", type=_floats, required=True)
    p.add_argument("--k", type=int, help="number of users (default len(d))")
    p.add_argument("--subproblem-factor", action="store_true",
                   help="use K - r instead of K after the split")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("mi", parents=[common], help="mutual-information bounds and oracle")
    p.add_argument("--D", type=float, required=True)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--tau-prime", type=float)
    p.add_argument("--samples", type=int, help="also run a Monte Carlo estimate (needs --seed)")
    p.set_defaults(func=cmd_mi)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        channel = load_channel(args.channel)
        return args.func(args, channel)
    except (CliError, BroadcastError, OSError, ValueError, ArithmeticError) as exc:
        print(f"gsbcast {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
