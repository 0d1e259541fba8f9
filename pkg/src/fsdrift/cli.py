"""Command-line interface: ``fsdrift analyze | synth | selftest``.

Exit codes: 0 success, 1 pipeline failure, 2 invalid arguments.  Failures
print one line to stderr: ``error: <Category>: <detail>``.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__, selftest
from .core_linalg import DEFAULT_MAX_ITERS, DEFAULT_TOL, SIGN_CONVENTION
from .errors import DriftError, InvalidAngleError, InvalidSpecError, IndexOutOfRangeError
from .io_ingest import CsvOptions, load_csv, validate_matrix, write_csv
from .io_report import build_summary, render_panels, write_step_csv, write_summary_json
from .synth import RNG_NAME, SynthSpec, synthesize
from .trajectory import (
    DEFAULT_EPSILON,
    DEFAULT_STEP,
    DEFAULT_WINDOW,
    RepresentationTrajectory,
    WindowSpec,
    analyze_trajectory,
    build_trajectory,
)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


@dataclass
class AnalyzeConfig:
    input: Path
    out: Path
    csv: CsvOptions = field(default_factory=CsvOptions)
    window: int = DEFAULT_WINDOW
    step: int = DEFAULT_STEP
    epsilon: float = DEFAULT_EPSILON
    pc1_tol: float = DEFAULT_TOL
    pc1_max_iters: int = DEFAULT_MAX_ITERS
    trajectory_mode: bool = False

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise InvalidSpecError("epsilon must be positive", epsilon=self.epsilon)
        if not self.pc1_tol > 0 or self.pc1_max_iters < 1:
            raise InvalidSpecError("PC1 tolerance and iteration cap must be positive")


class _UsageError(Exception):
    pass


def _fail(exc: DriftError, stream) -> int:
    print(f"error: {exc.category}: {exc}", file=stream)
    return EXIT_USAGE if isinstance(exc, (InvalidSpecError, InvalidAngleError, IndexOutOfRangeError)) else EXIT_FAILURE


def cmd_analyze(cfg: AnalyzeConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    x = load_csv(cfg.input, cfg.csv)
    summary_x = validate_matrix(x)
    params = {
        "input": Path(cfg.input).name,
        "N": summary_x.n,
        "D": summary_x.d,
        "epsilon": cfg.epsilon,
        "mode": "trajectory" if cfg.trajectory_mode else "pca",
        "csv": {"has_header": cfg.csv.has_header, "label_column": cfg.csv.label_column, "delimiter": cfg.csv.delimiter},
    }
    if cfg.trajectory_mode:
        traj = RepresentationTrajectory.from_vectors(x.data)
        params.update(W=None, s=None, pc1_sign_convention="none (directions supplied)")
    else:
        spec = WindowSpec(cfg.window, cfg.step)
        spec.check(x.n)
        traj = build_trajectory(x, spec, tol=cfg.pc1_tol, max_iters=cfg.pc1_max_iters)
        params.update(
            W=spec.window_length,
            s=spec.step,
            pc1_sign_convention=SIGN_CONVENTION,
            pc1_tol=cfg.pc1_tol,
            pc1_max_iters=cfg.pc1_max_iters,
        )
    params["T"] = len(traj)
    report = analyze_trajectory(traj, cfg.epsilon)
    summary = build_summary(report, params)

    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    write_step_csv(report, out / "steps.csv")
    write_summary_json(summary, out / "summary.json")
    render_panels(report, out / "panels.svg")

    t = summary.totals
    st = summary.sign_test
    p = f"{st['p_value']:.6g}" if st["status"] == "ok" else "not applicable"
    print(f"T={len(traj)} steps={t['steps']}", file=stdout)
    print(f"cum_e={t['cum_e']:.6f}", file=stdout)
    print(f"cum_c={t['cum_c']:.6f} rad", file=stdout)
    print(f"cum_fs={t['cum_fs']:.6f} rad", file=stdout)
    print(f"gauge_diff={t['gauge_diff']:.6f} rad", file=stdout)
    print(f"flip_count={t['flip_count']}", file=stdout)
    print(f"sign_test_p={p}", file=stdout)
    return EXIT_OK


def cmd_synth(spec: SynthSpec, out_path, stdout=None) -> int:
    traj = synthesize(spec)
    write_csv(traj.directions, out_path)
    print(f"wrote {len(traj)}x{spec.dimension} directions to {out_path} (rng={RNG_NAME}, seed={spec.seed})", file=stdout or sys.stdout)
    return EXIT_OK


def cmd_selftest(stdout=None) -> int:
    stdout = stdout or sys.stdout
    return selftest.main(out=lambda line: print(line, file=stdout))


def _parse_flips(text: str) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"flip positions must be comma-separated integers: {text!r}") from None


def _parse_angle(text: str) -> float:
    """Accept plain radians or a fraction of pi such as ``pi/6``."""
    t = text.strip().lower().replace(" ", "")
    try:
        if "pi" in t:
            num, _, den = t.partition("/")
            coef = num.replace("*", "").replace("pi", "")
            coef = float(coef) if coef else 1.0
            return coef * math.pi / (float(den) if den else 1.0)
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="fsdrift", description=__doc__.splitlines()[0], formatter_class=fmt)
    parser.add_argument("--version", action="version", version=f"fsdrift {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="drift along sliding-window PC1 directions of a CSV matrix", formatter_class=fmt)
    a.add_argument("input", type=Path, help="CSV file, one sample per row")
    a.add_argument("--out", type=Path, default=Path("fsdrift-out"), help="output directory")
    a.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="window length W")
    a.add_argument("--step", type=int, default=DEFAULT_STEP, help="window step s")
    a.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="offset in the log ratio")
    a.add_argument("--label-column", type=int, default=None, help="column index to drop (negative counts from the end)")
    a.add_argument("--header", action="store_true", help="first line is a header")
    a.add_argument("--delimiter", default=",", help="field delimiter")
    a.add_argument("--trajectory-mode", action="store_true", help="rows are already direction vectors; skip PCA")
    a.add_argument("--pc1-tol", type=float, default=DEFAULT_TOL, help="power-iteration stopping tolerance")
    a.add_argument("--pc1-max-iters", type=int, default=DEFAULT_MAX_ITERS, help="power-iteration cap")

    s = sub.add_parser("synth", help="write a synthetic trajectory of unit directions to CSV", formatter_class=fmt)
    s.add_argument("--out", type=Path, required=True, help="output CSV path")
    s.add_argument("--dim", type=int, default=8, help="dimension D")
    s.add_argument("--length", type=int, default=32, help="trajectory length T")
    s.add_argument("--angle", type=_parse_angle, default=0.1, help="rotation per step in radians (or e.g. pi/6)")
    s.add_argument("--flips", type=_parse_flips, default=frozenset(), help="1-based positions to negate, e.g. 3,7")
    s.add_argument("--seed", type=int, default=0, help="SplitMix64 seed")

    sub.add_parser("selftest", help="run the embedded invariant checks")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "analyze":
            try:
                csv_opts = CsvOptions(args.header, args.label_column, args.delimiter)
            except ValueError as exc:
                print(f"error: InvalidArgument: {exc}", file=sys.stderr)
                return EXIT_USAGE
            cfg = AnalyzeConfig(
                input=args.input,
                out=args.out,
                csv=csv_opts,
                window=args.window,
                step=args.step,
                epsilon=args.epsilon,
                pc1_tol=args.pc1_tol,
                pc1_max_iters=args.pc1_max_iters,
                trajectory_mode=args.trajectory_mode,
            )
            return cmd_analyze(cfg)
        if args.command == "synth":
            spec = SynthSpec(dimension=args.dim, length=args.length, step_angle=args.angle, flip_indices=args.flips, seed=args.seed)
            return cmd_synth(spec, args.out)
        return cmd_selftest()
    except DriftError as exc:
        return _fail(exc, sys.stderr)
    except ValueError as exc:
        print(f"error: InvalidArgument: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
