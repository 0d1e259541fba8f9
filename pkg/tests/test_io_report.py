import csv
import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from fsdrift.io_report import (
    STEP_COLUMNS,
    build_summary,
    panels_svg,
    render_panels,
    write_step_csv,
    write_summary_json,
)
from fsdrift.synth import SynthSpec, synthesize
from fsdrift.trajectory import RepresentationTrajectory, analyze_trajectory

SVG = "{http://www.w3.org/2000/svg}"


def report_for(flips=(), length=8, angle=0.3):
    return analyze_trajectory(synthesize(SynthSpec(dimension=5, length=length, step_angle=angle, flip_indices=flips, seed=4)))


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_two_step_csv(tmp_path):
    rep = analyze_trajectory(RepresentationTrajectory.from_vectors([[1.0, 0.0], [0.6, 0.8], [0.0, 1.0]]))
    p = write_step_csv(rep, tmp_path / "steps.csv")
    lines = p.read_text().splitlines()
    assert len(lines) == 3
    assert lines[0] == ",".join(STEP_COLUMNS)


def test_flip_row_and_round_trip(tmp_path):
    rep = report_for(flips={5})
    rows = read_rows(write_step_csv(rep, tmp_path / "steps.csv"))
    flagged = [r["step"] for r in rows if r["flip"] == "true"]
    assert flagged == ["4", "5"]
    assert float(rows[3]["dot"]) < 0
    for row, s, i in zip(rows, rep.steps, range(len(rows))):
        assert float(row["dot"]) == s.dot
        assert float(row["d_c"]) == s.distances.d_c
        assert float(row["cum_fs"]) == rep.cum_fs[i]
        assert float(row["gauge_diff"]) == rep.gauge_diff[i]
        assert float(row["log_ratio"]) == rep.log_ratio[i]


def test_csv_is_deterministic(tmp_path):
    a = write_step_csv(report_for(flips={2, 3}), tmp_path / "a.csv").read_bytes()
    b = write_step_csv(report_for(flips={2, 3}), tmp_path / "b.csv").read_bytes()
    assert a == b


def test_summary_keys_and_totals(tmp_path):
    rep = report_for(flips={3})
    summary = build_summary(rep, {"W": None, "s": None, "T": 8})
    doc = json.loads(write_summary_json(summary, tmp_path / "summary.json").read_text())
    assert set(doc) >= {"tool", "parameters", "totals", "sign_test", "steps_table"}
    assert doc["tool"]["version"]
    assert "pc1_sign_convention" in doc["parameters"]
    assert doc["parameters"]["epsilon"] == rep.epsilon
    rows = read_rows(write_step_csv(rep, tmp_path / "steps.csv"))
    for key in ("cum_e", "cum_c", "cum_fs", "gauge_diff", "log_ratio"):
        assert doc["totals"][key] == float(rows[-1][key]) == float(getattr(rep, key)[-1])
    assert doc["totals"]["flip_count"] == 2
    assert doc["sign_test"]["status"] == "ok" and doc["sign_test"]["n_positive"] == 2
    # canonical ordering
    text = (tmp_path / "summary.json").read_text()
    assert text == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_summary_without_flips(tmp_path):
    doc = build_summary(report_for(), {}).to_dict()
    assert doc["totals"]["gauge_diff"] == 0.0
    assert doc["sign_test"]["status"] == "not applicable"


def _polyline(root, cls):
    (el,) = [e for e in root.iter(SVG + "polyline") if e.get("class") == cls]
    return el.get("points")


def test_svg_is_valid_and_coincident_without_flips():
    root = ET.fromstring(panels_svg(report_for()))
    assert root.tag == SVG + "svg"
    assert {g.get("id") for g in root.iter(SVG + "g")} == {"panel-a", "panel-b", "panel-c", "panel-d"}
    assert _polyline(root, "cum-c") == _polyline(root, "cum-fs")
    texts = " ".join(t.text or "" for t in root.iter(SVG + "text"))
    assert "(rad)" in texts


def test_svg_flip_markers(tmp_path):
    rep = report_for(flips={5})
    root = ET.parse(render_panels(rep, tmp_path / "panels.svg")).getroot()
    marked = sorted(int(c.get("data-step")) for c in root.iter(SVG + "circle") if c.get("class") == "flip")
    assert marked == [s.index for s in rep.steps if s.flip] == [4, 5]
    assert _polyline(root, "cum-c") != _polyline(root, "cum-fs")


def test_svg_deterministic():
    assert panels_svg(report_for(flips={2})) == panels_svg(report_for(flips={2}))


def test_digits_panel_b_cosine_above_after_first_flip(digits):
    from fsdrift.trajectory import WindowSpec, build_trajectory

    rep = analyze_trajectory(build_trajectory(digits, WindowSpec(64, 55)))
    first = next(i for i, s in enumerate(rep.steps) if s.flip)
    assert np.all(rep.cum_c[first:] > rep.cum_fs[first:])
    assert np.array_equal(rep.cum_c[:first], rep.cum_fs[:first])
    assert math.isfinite(rep.log_ratio[-1])
