"""Export the scikit-learn digits data to CSV (64 pixel columns + label last).

    python scripts/export_digits.py data/digits.csv

Row order is the library's distribution order, which defines the trajectory.
"""

import sys
from pathlib import Path

import numpy as np
from sklearn.datasets import load_digits


def main(path: str = "data/digits.csv") -> None:
    d = load_digits()
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(out, np.column_stack([d.data, d.target]), fmt="%d", delimiter=",")
    print(f"wrote {d.data.shape[0]} rows x {d.data.shape[1]} features (+ label) to {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
