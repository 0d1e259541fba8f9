"""CSV loading and validation of feature matrices.

Row order in the file is the trajectory order; nothing is shuffled or sorted.
Parse errors carry 1-based file ``line``/``column``; matrix-level errors carry
0-based ``row``/``col`` indices into the loaded matrix.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core_linalg import FeatureMatrix
from .errors import (
    EmptyFileError,
    InputNotFoundError,
    IoError,
    NonFiniteDataError,
    ParseError,
    RaggedRowsError,
)


@dataclass(frozen=True)
class CsvOptions:
    has_header: bool = False
    label_column: int | None = None
    delimiter: str = ","

    def __post_init__(self):
        if len(self.delimiter) != 1 or not self.delimiter.isprintable():
            raise ValueError(f"delimiter must be one printable character, got {self.delimiter!r}")


@dataclass(frozen=True)
class ValidationSummary:
    n: int
    d: int
    col_min: tuple[float, ...]
    col_max: tuple[float, ...]
    nonfinite: int

    @property
    def ok(self) -> bool:
        return self.nonfinite == 0


def _read_rows(path: Path, opts: CsvOptions) -> tuple[list[list[float]], int | None]:
    rows: list[list[float]] = []
    width = None
    label = opts.label_column
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=opts.delimiter)
        for line_no, raw in enumerate(reader, start=1):
            if opts.has_header and line_no == 1:
                continue
            if not raw or all(not c.strip() for c in raw):
                continue
            if width is None:
                width = len(raw)
                if label is not None and not -width <= label < width:
                    raise ValueError(f"label column {label} out of range for {width} columns")
            elif len(raw) != width:
                raise RaggedRowsError("row has wrong arity", line=line_no, expected=width, found=len(raw))
            drop = label % width if label is not None else None
            values = []
            for col_no, cell in enumerate(raw):
                if col_no == drop:
                    continue
                try:
                    values.append(float(cell))
                except ValueError:
                    raise ParseError("non-numeric cell", line=line_no, column=col_no + 1, cell=cell.strip()) from None
            rows.append(values)
    return rows, width


def load_csv(path, opts: CsvOptions = CsvOptions()) -> FeatureMatrix:
    path = Path(path)
    if not path.is_file():
        raise InputNotFoundError("no such file", path=str(path))
    try:
        rows, _ = _read_rows(path, opts)
    except (OSError, UnicodeDecodeError) as exc:
        raise IoError(str(exc), path=str(path)) from None
    if not rows or not rows[0]:
        raise EmptyFileError("no numeric data", path=str(path))
    return FeatureMatrix(np.array(rows, dtype=np.float64))


def validate_matrix(x) -> ValidationSummary:
    """Shape, per-column range and non-finite count; raises on any NaN/Inf."""
    a = x.data if isinstance(x, FeatureMatrix) else np.asarray(x, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    finite = np.isfinite(a)
    nonfinite = int(a.size - finite.sum())
    if nonfinite:
        r, c = (int(i) for i in np.argwhere(~finite)[0])
        raise NonFiniteDataError("non-finite entry", row=r, col=c, count=nonfinite)
    return ValidationSummary(
        n=a.shape[0],
        d=a.shape[1],
        col_min=tuple(float(v) for v in a.min(axis=0)),
        col_max=tuple(float(v) for v in a.max(axis=0)),
        nonfinite=0,
    )


def format_float(v: float) -> str:
    """17 significant digits: enough for an exact double round trip."""
    if math.isnan(v) or math.isinf(v):
        return repr(v)
    return f"{v:.17g}"


def write_csv(x, path, delimiter: str = ",") -> None:
    a = x.data if isinstance(x, FeatureMatrix) else np.asarray(x, dtype=np.float64)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            for row in np.atleast_2d(a):
                fh.write(delimiter.join(format_float(float(v)) for v in row) + "\n")
    except OSError as exc:
        raise IoError(str(exc), path=str(path)) from None
