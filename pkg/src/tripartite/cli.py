"""Command-line entry point: ``tripartite sweep`` and ``tripartite verify``."""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import checks, convexroof, fidelity, tangles
from .channels import ChannelParams, NoiseKind, channel_state

QUANTITIES = {
    "charlie_fidelity": ("none", "x", "y", "z", "isotropic"),
    "bob_fidelity": ("none", "x", "y", "z", "isotropic"),
    "pi_tangle": ("none", "x", "y", "z", "isotropic"),
    "three_tangle": ("x", "z"),
    "three_tangle_ub": ("y", "isotropic"),
    "convex_roof": ("none", "x", "y", "z", "isotropic"),
}
FIDELITY_QUANTITIES = ("charlie_fidelity", "bob_fidelity")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    quantity: str
    kind: NoiseKind
    kt_start: float
    kt_stop: float
    kt_count: int
    nu: tuple[float, ...] = ()
    seed: int = 0
    outcome: int | None = 1
    restarts: int = 20
    members: int | None = None

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise UsageError(f"unknown quantity {self.quantity!r}; choose from {', '.join(QUANTITIES)}")
        valid = QUANTITIES[self.quantity]
        if self.kind.value not in valid:
            raise UsageError(
                f"quantity {self.quantity} is not defined for kind {self.kind.value!r}; valid kinds: {', '.join(valid)}"
            )
        if self.kt_count < 2:
            raise UsageError("--kt-count must be at least 2")
        if not 0.0 <= self.kt_start <= self.kt_stop:
            raise UsageError("need 0 <= --kt-start <= --kt-stop")
        if self.quantity in FIDELITY_QUANTITIES and not self.nu:
            raise UsageError(f"{self.quantity} needs --nu or --nu-count")
        if self.quantity not in FIDELITY_QUANTITIES and self.nu:
            raise UsageError(f"--nu and --nu-count only apply to {' and '.join(FIDELITY_QUANTITIES)}")

    def kt_grid(self) -> np.ndarray:
        return np.linspace(self.kt_start, self.kt_stop, self.kt_count)

    def columns(self) -> list[str]:
        head = ["kind", "kappa_t"] + (["nu"] if self.nu else []) + ["value", "method"]
        extra = {
            "charlie_fidelity": ["numeric", "closed"],
            "bob_fidelity": ["numeric", "closed"],
            "pi_tangle": ["numeric", "closed"],
            "three_tangle": ["decomposition", "closed"],
            "three_tangle_ub": [],
            "convex_roof": [
                "optimizer_upper_bound",
                "closed" if self.kind.value in ("x", "z", "none") else "constructive_upper_bound",
            ],
        }[self.quantity]
        return head + extra


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def evaluate_point(config: SweepConfig, kt: float, nu: float | None) -> list[str]:
    """One CSV row for grid point ``(kt, nu)``."""
    ch = ChannelParams(config.kind, float(kt))
    q = config.quantity
    lead = [config.kind.value, _fmt(kt)] + ([_fmt(nu)] if nu is not None else [])
    if q == "charlie_fidelity":
        num, closed = fidelity.charlie_average(ch, nu), fidelity.charlie_average_closed(ch, nu)
        return lead + [_fmt(num), "numeric", _fmt(num), _fmt(closed)]
    if q == "bob_fidelity":
        probe = fidelity.BlochAngles(0.0, 0.0)
        num = fidelity.bob_fidelities(probe, ch, nu, config.outcome).average
        if config.outcome is None:
            closed = fidelity.bob_total_closed()
        else:
            closed = fidelity.bob_average_closed(ch, nu, config.outcome)
        return lead + [_fmt(num), "numeric", _fmt(num), _fmt(closed)]
    if q == "pi_tangle":
        num = tangles.pi_tangle(channel_state(ch)).pi_tangle
        closed = tangles.pi_tangle_closed(ch)
        return lead + [_fmt(num), "numeric", _fmt(num), _fmt(closed)]
    if q == "three_tangle":
        closed = tangles.three_tangle_closed(config.kind, kt)
        dec = tangles.average_tangle(tangles.optimal_decomposition(config.kind, kt))
        return lead + [_fmt(closed), "closed", _fmt(dec), _fmt(closed)]
    if q == "three_tangle_ub":
        return lead + [_fmt(tangles.three_tangle_upper_bound(config.kind, kt)), "closed"]
    # convex_roof
    res = convexroof.minimize_tangle(
        channel_state(ch), m=config.members, restarts=config.restarts, seed=config.seed
    )
    if config.kind is NoiseKind.NONE:
        ref = 1.0
    elif config.kind in (NoiseKind.X, NoiseKind.Z):
        ref = tangles.three_tangle_closed(config.kind, kt)
    else:
        ref = tangles.three_tangle_upper_bound(config.kind, kt)
    return lead + [_fmt(res.upper_bound), "optimizer", _fmt(res.upper_bound), _fmt(ref)]


def _point(args):
    return evaluate_point(*args)


def sweep_rows(config: SweepConfig, jobs: int = 1) -> list[list[str]]:
    """All rows in grid order (kappa_t outer, nu inner)."""
    nus = list(config.nu) if config.nu else [None]
    tasks = [(config, float(kt), nu) for kt in config.kt_grid() for nu in nus]
    if jobs <= 1:
        return [_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_point, tasks))


def render_csv(config: SweepConfig, rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(config.columns())
    writer.writerows(rows)
    return buf.getvalue()


def sweep(config: SweepConfig, out: str, jobs: int = 1) -> int:
    text = render_csv(config, sweep_rows(config, jobs))
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return len(text.splitlines()) - 1


def verify(suite: str = "all", seed: int = 0, stream=None) -> bool:
    stream = stream or sys.stdout
    names = list(checks.SUITES) if suite == "all" else [suite]
    results = checks.run_suites(names, seed)
    for c in results:
        print(c.line(), file=stream)
    failed = sum(not c.passed for c in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=stream)
    return failed == 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripartite", description="Noisy GHZ teleportation: parameter sweeps and verification suites."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate a quantity on a kappa*t grid and write CSV")
    sw.add_argument("--quantity", required=True, choices=list(QUANTITIES))
    sw.add_argument("--kind", required=True, help="none, x, y, z or isotropic")
    sw.add_argument("--kt-start", type=float, required=True)
    sw.add_argument("--kt-stop", type=float, required=True)
    sw.add_argument("--kt-count", type=int, required=True)
    nu = sw.add_mutually_exclusive_group()
    nu.add_argument("--nu", type=float, help="fixed measurement angle for Bob (radians)")
    nu.add_argument("--nu-count", type=int, help="number of nu values evenly spaced on [0, pi/2]")
    sw.add_argument("--out", required=True, help="output CSV path, or - for stdout")
    sw.add_argument("--seed", type=int, default=0, help="seed for the convex-roof restarts")
    sw.add_argument(
        "--outcome", default="1", choices=["1", "2", "3", "4", "total"],
        help="Alice outcome conditioning bob_fidelity (default 1)",
    )
    sw.add_argument("--restarts", type=int, default=20, help="convex_roof random restarts")
    sw.add_argument("--members", type=int, default=None, help="convex_roof ensemble size (default rank + 4, max 12)")
    sw.add_argument("--jobs", type=int, default=1, help="worker processes; row order is unaffected")

    vf = sub.add_parser("verify", help="run the invariant suites")
    vf.add_argument("suite", nargs="?", default="all", choices=list(checks.SUITES) + ["all"])
    vf.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return 0 if verify(args.suite, args.seed) else 1

    try:
        kind = NoiseKind.parse(args.kind)
    except ValueError as exc:
        parser.error(str(exc))
    if args.nu is not None:
        nus = (args.nu,)
    elif args.nu_count is not None:
        if args.nu_count < 1:
            parser.error("--nu-count must be positive")
        nus = tuple(float(v) for v in np.linspace(0.0, math.pi / 2, args.nu_count))
    else:
        nus = ()
    if args.restarts < 1:
        parser.error("--restarts must be at least 1")
    try:
        config = SweepConfig(
            args.quantity, kind, args.kt_start, args.kt_stop, args.kt_count, nus, args.seed,
            None if args.outcome == "total" else int(args.outcome), args.restarts, args.members,
        )
    except UsageError as exc:
        parser.error(str(exc))
    try:
        n = sweep(config, args.out, args.jobs)
    except OSError as exc:
        print(f"tripartite: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    if args.out != "-":
        print(f"wrote {n} rows to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
