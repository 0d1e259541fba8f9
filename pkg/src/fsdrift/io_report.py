"""Output artifacts: per-step CSV, summary JSON and a 2x2 SVG figure.

Everything written here is a pure function of the report, so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .core_linalg import SIGN_CONVENTION
from .errors import AllZeroError, IoError
from .io_ingest import format_float
from .stats import DEFAULT_ZERO_TOL, TAIL_CONVENTION, exact_sign_test
from .trajectory import DriftReport

STEP_COLUMNS = (
    "step",
    "window_start",
    "dot",
    "flip",
    "d_e",
    "d_c",
    "d_fs",
    "cum_e",
    "cum_c",
    "cum_fs",
    "gauge_diff",
    "log_ratio",
)


@dataclass
class SummaryDocument:
    parameters: dict
    totals: dict
    sign_test: dict
    steps_table: str = "steps.csv"
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc = {
            "tool": {"name": "fsdrift", "version": __version__},
            "parameters": self.parameters,
            "totals": self.totals,
            "sign_test": self.sign_test,
            "steps_table": self.steps_table,
        }
        doc.update(self.extra)
        return doc


def sign_test_section(report: DriftReport, zero_tol: float = DEFAULT_ZERO_TOL) -> dict:
    section = {"convention": TAIL_CONVENTION, "zero_tol": zero_tol}
    try:
        res = exact_sign_test(report.increment_differences, zero_tol)
    except AllZeroError:
        section["status"] = "not applicable"
        return section
    section.update(status="ok", n_nonzero=res.n_nonzero, n_positive=res.n_positive, p_value=res.p_value)
    return section


def build_summary(report: DriftReport, parameters: dict, zero_tol: float = DEFAULT_ZERO_TOL) -> SummaryDocument:
    def last(series):
        return float(series[-1]) if len(series) else 0.0

    params = dict(parameters)
    params.setdefault("epsilon", report.epsilon)
    params.setdefault("pc1_sign_convention", SIGN_CONVENTION)
    totals = {
        "cum_e": last(report.cum_e),
        "cum_c": last(report.cum_c),
        "cum_fs": last(report.cum_fs),
        "gauge_diff": last(report.gauge_diff),
        "log_ratio": last(report.log_ratio),
        "flip_count": report.flip_count,
        "steps": len(report.steps),
    }
    return SummaryDocument(parameters=params, totals=totals, sign_test=sign_test_section(report, zero_tol))


def step_rows(report: DriftReport) -> list[list[str]]:
    starts = report.window_starts
    rows = []
    for i, s in enumerate(report.steps):
        d = s.distances
        rows.append(
            [
                str(s.index),
                str(starts[i]) if i < len(starts) else "",
                format_float(s.dot),
                "true" if s.flip else "false",
                format_float(d.d_e),
                format_float(d.d_c),
                format_float(d.d_fs),
                format_float(float(report.cum_e[i])),
                format_float(float(report.cum_c[i])),
                format_float(float(report.cum_fs[i])),
                format_float(float(report.gauge_diff[i])),
                format_float(float(report.log_ratio[i])),
            ]
        )
    return rows


def write_step_csv(report: DriftReport, path) -> Path:
    path = Path(path)
    lines = [",".join(STEP_COLUMNS)] + [",".join(r) for r in step_rows(report)]
    _write_text(path, "\n".join(lines) + "\n")
    return path


def write_summary_json(summary: SummaryDocument, path) -> Path:
    path = Path(path)
    text = json.dumps(summary.to_dict(), sort_keys=True, indent=2, allow_nan=False)
    _write_text(path, text + "\n")
    return path


def _write_text(path: Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(str(exc), path=str(path)) from None


# --- SVG ---------------------------------------------------------------------

PANEL_W = 480
PANEL_H = 340
MARGIN = dict(left=70, right=20, top=40, bottom=50)
COLORS = {"e": "#1f77b4", "c": "#d62728", "fs": "#2ca02c", "ratio": "#9467bd", "dot": "#333333"}


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1000 or abs(v) < 0.01:
        return f"{v:.1e}"
    return f"{v:.3g}"


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    span = hi - lo
    raw = span / max(count - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


class _Panel:
    def __init__(self, ox: float, oy: float, xs: Sequence[float], ys_all: Sequence[float], y_floor=None):
        self.ox, self.oy = ox, oy
        self.x0, self.x1 = ox + MARGIN["left"], ox + PANEL_W - MARGIN["right"]
        self.y0, self.y1 = oy + PANEL_H - MARGIN["bottom"], oy + MARGIN["top"]
        self.xmin, self.xmax = min(xs), max(xs)
        if self.xmax == self.xmin:
            self.xmin -= 0.5
            self.xmax += 0.5
        finite = [y for y in ys_all if math.isfinite(y)] or [0.0]
        lo, hi = min(finite), max(finite)
        if y_floor is not None:
            lo = min(lo, y_floor)
        if hi - lo < 1e-12:
            lo, hi = lo - 0.5, hi + 0.5
        pad = 0.05 * (hi - lo)
        self.ymin, self.ymax = lo - pad, hi + pad

    def px(self, x: float) -> float:
        return self.x0 + (x - self.xmin) / (self.xmax - self.xmin) * (self.x1 - self.x0)

    def py(self, y: float) -> float:
        return self.y0 - (y - self.ymin) / (self.ymax - self.ymin) * (self.y0 - self.y1)

    def frame(self, title: str, xlabel: str, ylabel: str) -> list[str]:
        out = [
            f'<text x="{_fmt(self.ox + PANEL_W / 2)}" y="{_fmt(self.oy + 22)}" text-anchor="middle" '
            f'font-size="14" font-weight="bold">{_esc(title)}</text>',
            f'<rect x="{_fmt(self.x0)}" y="{_fmt(self.y1)}" width="{_fmt(self.x1 - self.x0)}" '
            f'height="{_fmt(self.y0 - self.y1)}" fill="none" stroke="#000000" stroke-width="1"/>',
        ]
        for t in _nice_ticks(self.ymin, self.ymax):
            y = self.py(t)
            out.append(f'<line x1="{_fmt(self.x0 - 4)}" y1="{_fmt(y)}" x2="{_fmt(self.x0)}" y2="{_fmt(y)}" stroke="#000000"/>')
            out.append(f'<text x="{_fmt(self.x0 - 7)}" y="{_fmt(y + 4)}" text-anchor="end" font-size="10">{_tick_label(t)}</text>')
        for t in _nice_ticks(self.xmin, self.xmax):
            if t != int(t):
                continue
            x = self.px(t)
            out.append(f'<line x1="{_fmt(x)}" y1="{_fmt(self.y0)}" x2="{_fmt(x)}" y2="{_fmt(self.y0 + 4)}" stroke="#000000"/>')
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(self.y0 + 16)}" text-anchor="middle" font-size="10">{int(t)}</text>')
        out.append(
            f'<text x="{_fmt((self.x0 + self.x1) / 2)}" y="{_fmt(self.oy + PANEL_H - 12)}" '
            f'text-anchor="middle" font-size="12">{_esc(xlabel)}</text>'
        )
        cx, cy = self.ox + 16, (self.y0 + self.y1) / 2
        out.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 {_fmt(cx)} {_fmt(cy)})">{_esc(ylabel)}</text>'
        )
        return out

    def polyline(self, xs, ys, color: str, css_class: str, dash: str | None = None) -> str:
        pts = " ".join(f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in zip(xs, ys) if math.isfinite(y))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return f'<polyline class="{css_class}" points="{pts}" fill="none" stroke="{color}" stroke-width="2"{extra}/>'

    def legend(self, items: list[tuple[str, str]]) -> list[str]:
        out = []
        for i, (label, color) in enumerate(items):
            y = self.y1 + 14 + 16 * i
            out.append(f'<line x1="{_fmt(self.x0 + 10)}" y1="{_fmt(y)}" x2="{_fmt(self.x0 + 30)}" y2="{_fmt(y)}" stroke="{color}" stroke-width="2"/>')
            out.append(f'<text x="{_fmt(self.x0 + 35)}" y="{_fmt(y + 4)}" font-size="11">{_esc(label)}</text>')
        return out


def panels_svg(report: DriftReport) -> str:
    """Render the four panels as one standalone SVG document.

    A: cumulative Euclidean drift.  B: cumulative cosine and Fubini-Study
    drift overlaid.  C: log10 ratio of Euclidean to Fubini-Study drift.
    D: per-step dot product with a zero line; flips are drawn as red markers
    carrying ``class="flip"`` and a ``data-step`` attribute.
    """
    if len(report.steps) < 1:
        raise ValueError("report needs at least one step to plot")
    # x axis: trajectory index n = 2..T of the cumulative series
    ns = [s.index + 1 for s in report.steps]
    ks = [s.index for s in report.steps]
    width, height = 2 * PANEL_W, 2 * PANEL_H
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="Helvetica, Arial, sans-serif">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]

    cum_e = [float(v) for v in report.cum_e]
    a = _Panel(0, 0, ns, cum_e, y_floor=0.0)
    out += ['<g id="panel-a">'] + a.frame("A. Cumulative Euclidean drift", "trajectory index n", "drift (unit-vector norm)")
    out += [a.polyline(ns, cum_e, COLORS["e"], "cum-e"), "</g>"]

    cum_c = [float(v) for v in report.cum_c]
    cum_fs = [float(v) for v in report.cum_fs]
    b = _Panel(PANEL_W, 0, ns, cum_c + cum_fs, y_floor=0.0)
    out += ['<g id="panel-b">'] + b.frame("B. Cosine vs Fubini-Study drift", "trajectory index n", "cumulative drift (rad)")
    out += [
        b.polyline(ns, cum_c, COLORS["c"], "cum-c"),
        b.polyline(ns, cum_fs, COLORS["fs"], "cum-fs", dash="6,3"),
    ]
    out += b.legend([("cosine", COLORS["c"]), ("Fubini-Study", COLORS["fs"])]) + ["</g>"]

    ratio = [float(v) for v in report.log_ratio]
    c = _Panel(0, PANEL_H, ns, ratio)
    out += ['<g id="panel-c">'] + c.frame("C. log10 Euclidean / Fubini-Study", "trajectory index n", "log10 ratio")
    out += [c.polyline(ns, ratio, COLORS["ratio"], "log-ratio"), "</g>"]

    dots = [s.dot for s in report.steps]
    d = _Panel(PANEL_W, PANEL_H, ks, dots + [-1.0, 1.0])
    out += ['<g id="panel-d">'] + d.frame("D. Dot product of consecutive PC1", "step k", "dot(r_k, r_k+1)")
    y_zero = d.py(0.0)
    out.append(
        f'<line class="zero" x1="{_fmt(d.x0)}" y1="{_fmt(y_zero)}" x2="{_fmt(d.x1)}" y2="{_fmt(y_zero)}" '
        f'stroke="#888888" stroke-dasharray="4,3"/>'
    )
    out.append(d.polyline(ks, dots, COLORS["dot"], "dot"))
    for s in report.steps:
        x, y = _fmt(d.px(s.index)), _fmt(d.py(s.dot))
        if s.flip:
            out.append(f'<circle class="flip" data-step="{s.index}" cx="{x}" cy="{y}" r="4.5" fill="#d62728"/>')
        else:
            out.append(f'<circle class="step" data-step="{s.index}" cx="{x}" cy="{y}" r="2.5" fill="{COLORS["dot"]}"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def render_panels(report: DriftReport, path) -> Path:
    path = Path(path)
    _write_text(path, panels_svg(report))
    return path
