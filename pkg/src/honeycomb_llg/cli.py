"""Command-line entry point.

Exit codes: 0 ok, 1 contract error, 2 verification failure, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import blocking as blk
from . import cycles as cyc
from . import hexclass, localtraj, render, stats
from .config import Configuration, PatternA, PatternB, RandomPattern, all_left, all_right, load_configuration
from .dynamics import MIRROR, ROTATOR, initial_condition, run, write_trajectory_csv
from .errors import BudgetExceeded, LatticeError
from .lattice import hex_disc, is_hex_center

EXIT_OK, EXIT_CONTRACT, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3

# cycle lengths L(1..180) of the all-right run, row by row
APPENDIX_A = (
    6, 18, 6, 42, 6, 18, 6, 6, 66, 6, 18, 14, 10, 30, 30,
    10, 14, 18, 6, 78, 6, 6, 18, 6, 78, 22, 10, 22, 18, 54,
    18, 6, 42, 22, 122, 30, 30, 10, 14, 18, 6, 18, 6, 6, 18,
    6, 18, 14, 10, 126, 30, 34, 14, 42, 6, 114, 6, 6, 18, 6,
    90, 38, 10, 22, 18, 134, 110, 6, 6, 14, 130, 6, 10, 54, 38,
    22, 6, 158, 6, 6, 34, 6, 74, 6, 42, 6, 6, 150, 6, 34,
    46, 38, 10, 38, 18, 6, 298, 6, 6, 42, 6, 114, 62, 126, 22,
    22, 22, 174, 6, 22, 6, 6, 18, 6, 58, 6, 18, 6, 6, 18,
    6, 82, 22, 10, 22, 18, 118, 54, 6, 6, 14, 38, 6, 6, 210,
    54, 170, 30, 202, 30, 6, 6, 38, 226, 6, 266, 22, 18, 6, 130,
    22, 6, 6, 14, 26, 6, 18, 30, 126, 6, 6, 14, 38, 6, 6,
    218, 54, 230, 30, 14, 10, 6, 38, 6, 6, 34, 6, 170, 6, 42,
)


class VerificationFailure(Exception):
    pass


def appendix_a_lengths(n: int = 180, step_budget: int = 1_000_000) -> list[int]:
    times = blk.recurrence_probe(initial_condition(), Configuration(all_right()), n, step_budget)
    return [b - a for a, b in zip([0] + times, times)]


def verify_appendix_a(golden=APPENDIX_A) -> tuple[bool, int | None, list[int]]:
    """Compare simulated L(1..n) with `golden`; returns (ok, first bad 1-based index, lengths)."""
    got = appendix_a_lengths(len(golden))
    for i, (a, b) in enumerate(zip(got, golden), 1):
        if a != b:
            return False, i, got
    return True, None, got


def build_configuration(args) -> Configuration:
    name = args.pattern
    if name == "all-right":
        return Configuration(all_right())
    if name == "all-left":
        return Configuration(all_left())
    if name == "a":
        return Configuration(PatternA())
    if name == "b":
        return Configuration(PatternB())
    if name == "random":
        return Configuration(RandomPattern(args.seed, args.prob_right))
    if name == "file":
        if not args.pattern_file:
            raise LatticeError("--pattern file needs --pattern-file")
        return load_configuration(args.pattern_file)
    raise LatticeError(f"unknown pattern {name!r}")


def _add_pattern_args(sp):
    sp.add_argument("--pattern", default="all-right", choices=["all-right", "all-left", "a", "b", "file", "random"])
    sp.add_argument("--pattern-file", type=Path)
    sp.add_argument("--seed", type=int, default=0, help="seed of the random pattern")
    sp.add_argument("--prob-right", type=float, default=0.5)


def _out_dir(args) -> Path:
    d = Path(args.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _write_json(obj, path: Path | None):
    text = json.dumps(obj, indent=1) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def cmd_simulate(args) -> int:
    C = build_configuration(args)
    I = initial_condition(args.p, args.q, args.k)
    kind = MIRROR if args.system == "mirror" else ROTATOR
    traj = run(kind, I, C, args.steps, budget=args.budget)
    out = _out_dir(args)
    write_trajectory_csv(traj, out / "trajectory.csv")
    dec = cyc.decompose(traj)
    cyc.write_cycle_csv(dec, out / "cycles.csv", traj.k)
    summary = {
        "system": kind.value,
        "pattern": C.background.to_dict(),
        "initial": {"p": args.p, "q": args.q, "k": args.k},
        "steps": args.steps,
        "cycles": len(dec.cycles),
        "trailing": [dec.trailing.t_start, dec.trailing.t_end],
    }
    if args.steps >= 1:
        m = stats.msd(traj)
        ta = stats.tamsd(m)
        stats.write_series_csv(m, out / "msd.csv")
        stats.write_series_csv(ta, out / "tamsd.csv")
        if args.steps >= 2 * args.fit_from:
            fit = stats.fit_power_law(ta, t_min=args.fit_from)
            stats.write_fit_json(fit, out / "fit.json", series="tamsd", label=stats.classify_growth(fit, ta))
            summary["tamsd_fit"] = {"c": fit.c, "alpha": fit.alpha}
    hist = stats.histogram(dec)
    stats.write_histogram_csv(hist, out / "cycle_lengths.csv")
    if hist.total:
        F = stats.fraction_of_cycles(hist)
        summary["F6"] = F.get(6, 0.0)
    if args.svg:
        if dec.cycles:
            pick = args.cycle if args.cycle else max(dec.cycles, key=lambda c: (c.length, -c.index)).index
            if not 1 <= pick <= len(dec.cycles):
                raise LatticeError(f"--cycle {pick} out of range 1..{len(dec.cycles)}")
            (out / f"cycle_{pick}.svg").write_text(render.cycle_svg(dec.cycles[pick - 1]))
        (out / "trajectory.svg").write_text(render.path_svg(traj.positions, base=traj.site(0)))
    _write_json(summary, out / "summary.json")
    print(f"{args.steps} steps, {len(dec.cycles)} completed cycles -> {out}")
    return EXIT_OK


def cmd_verify_appendix_a(args) -> int:
    golden = APPENDIX_A
    if args.golden:
        golden = tuple(int(x) for x in args.golden.split(","))
    ok, bad, got = verify_appendix_a(golden)
    if ok:
        print(f"PASS: L(1..{len(golden)}) match")
        return EXIT_OK
    print(f"FAIL: first mismatch at i={bad}: simulated {got[bad - 1]}, expected {golden[bad - 1]}")
    return EXIT_VERIFY


def cmd_classify(args) -> int:
    g = hexclass.transition_graph()
    _write_json(g.to_dict(), args.out)
    sizes = sorted((len(c) for c in g.components), reverse=True)
    right = hexclass.canonicalize(hexclass.ALL_RIGHT_WORD).label
    if sizes != [7, 6] or len(g.component_of(right)) != 7:
        print(f"FAIL: component sizes {sizes}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_blocking(args) -> int:
    rep = blk.blocking_time(build_configuration(args), args.bound)
    _write_json(rep.to_dict(), args.out)
    return EXIT_OK


def cmd_recurrence(args) -> int:
    C = build_configuration(args)
    I = initial_condition(args.p, args.q, args.k)
    times = blk.recurrence_probe(I, C, args.returns, args.budget)
    _write_json({"return_times": times}, args.out)
    return EXIT_OK


def _parse_hexes(text: str):
    out = []
    for item in text.split(";"):
        p, q = (int(x) for x in item.split(","))
        if not is_hex_center(p, q):
            raise LatticeError(f"({p},{q}) is not a hexagon center")
        out.append((p, q))
    return out


def cmd_partition(args) -> int:
    C = build_configuration(args)
    hexes = _parse_hexes(args.hexes) if args.hexes else hex_disc(tuple(args.center), args.radius)
    region = localtraj.make_region(hexes)
    part = localtraj.find_triperfect(region, C, budget=args.budget)
    out = _out_dir(args)
    if part is None:
        print("no triperfect partition")
        return EXIT_VERIFY
    (out / "partition.json").write_text(part.to_json() + "\n")
    if args.svg:
        (out / "partition.svg").write_text(render.partition_svg(part))
    print(f"{len(part.trajectories)} local trajectories partitioned -> {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="honeycomb-llg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="run one trajectory and write CSV/JSON/SVG files")
    _add_pattern_args(sp)
    sp.add_argument("--system", choices=["rotator", "mirror"], default="rotator")
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--steps", type=int, default=10_000)
    sp.add_argument("--budget", type=int, default=50_000_000)
    sp.add_argument("--fit-from", type=int, default=1000)
    sp.add_argument("--out-dir", default="out")
    sp.add_argument("--svg", action="store_true")
    sp.add_argument("--cycle", type=int, default=0, help="cycle index to draw (default: longest)")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify-appendix-a", help="replay the first 180 all-right cycle lengths")
    sp.add_argument("--golden", help="comma-separated lengths to compare against instead")
    sp.set_defaults(func=cmd_verify_appendix_a)

    sp = sub.add_parser("classify", help="hexagon classes and transition graph as JSON")
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("blocking", help="worst-case first-return time of a periodic pattern")
    _add_pattern_args(sp)
    sp.add_argument("--bound", type=int, default=10_000)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_blocking)

    sp = sub.add_parser("recurrence", help="collect return times within a step budget")
    _add_pattern_args(sp)
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--returns", type=int, default=180)
    sp.add_argument("--budget", type=int, default=1_000_000)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_recurrence)

    sp = sub.add_parser("partition", help="triperfect partition of a hexagon region")
    _add_pattern_args(sp)
    sp.add_argument("--hexes", help='semicolon-separated centers, e.g. "1,-1;4,0"')
    sp.add_argument("--center", type=int, nargs=2, default=(1, -1))
    sp.add_argument("--radius", type=int, default=0)
    sp.add_argument("--budget", type=int, default=1_000_000)
    sp.add_argument("--out-dir", default="out")
    sp.add_argument("--svg", action="store_true")
    sp.set_defaults(func=cmd_partition)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (LatticeError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
