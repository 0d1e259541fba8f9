"""Drift decomposition for every (W, s) that yields a given trajectory length.

The window length and step behind the 32-window digits trajectory are not
known, so this scans all pairs with floor((N - W) / s) + 1 == T and reports
flip count, cumulative cosine / Fubini-Study drift and the gauge share.

    python scripts/sweep_windows.py data/digits.csv --length 32
"""

import argparse

from fsdrift.errors import DriftError
from fsdrift.io_ingest import CsvOptions, load_csv
from fsdrift.trajectory import WindowSpec, analyze_trajectory, build_trajectory


def pairs_for_length(n: int, t: int, min_window: int):
    for w in range(min_window, n + 1):
        for s in range(1, n + 1):
            k = (n - w) // s + 1
            if k == t:
                yield w, s
            if k < t:
                break


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv")
    ap.add_argument("--length", type=int, default=32)
    ap.add_argument("--label-column", type=int, default=-1)
    ap.add_argument("--min-window", type=int, default=8)
    ap.add_argument("--max-window", type=int, default=200)
    args = ap.parse_args()

    x = load_csv(args.csv, CsvOptions(label_column=args.label_column))
    print(f"{'W':>4} {'s':>4} {'flips':>5} {'cum_c':>8} {'cum_fs':>8} {'gap':>8} {'share':>6}")
    for w, s in pairs_for_length(x.n, args.length, args.min_window):
        if w > args.max_window:
            break
        try:
            rep = analyze_trajectory(build_trajectory(x, WindowSpec(w, s)))
        except DriftError as exc:
            print(f"{w:>4} {s:>4}  {exc.category}")
            continue
        c, f = rep.cum_c[-1], rep.cum_fs[-1]
        print(f"{w:>4} {s:>4} {rep.flip_count:>5} {c:>8.2f} {f:>8.2f} {c - f:>8.2f} {(c - f) / c:>6.1%}")


if __name__ == "__main__":
    main()
