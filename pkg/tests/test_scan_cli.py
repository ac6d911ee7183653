import csv
import io
import json
import math
import subprocess
import sys

import pytest

from scsent.cli import main, parse_complex
from scsent.scan import (
    MalformedCSV,
    ScanConfig,
    heatmap_pgm,
    pixel,
    read_concurrence_grid,
    scan_csv,
)
from scsent.su2 import Spin


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "text,value",
    [("1", 1 + 0j), ("0.5+0.25i", 0.5 + 0.25j), ("2-1i", 2 - 1j), ("3i", 3j), ("1e-3+2j", 1e-3 + 2j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_scan_grid_and_format():
    text, degenerate = scan_csv(ScanConfig(steps=3, zmax=2.0))
    lines = text.split("\n")
    assert lines[0] == "z1,z2,concurrence"
    assert lines[1] == "0,0,0"
    assert lines[5] == "1,1,1"
    assert len(lines) == 11 and lines[-1] == ""
    assert degenerate == 0


def test_scan_reports_degenerate_points():
    text, degenerate = scan_csv(ScanConfig(steps=3, phi=math.pi))
    assert degenerate == 1
    assert "\n0,0,\n" in text


def test_scan_is_deterministic():
    cfg = ScanConfig(mode="mixed", steps=7, z1b=4.0, z2b=4.0, phi=0.3)
    assert scan_csv(cfg) == scan_csv(cfg)


def test_config_validation():
    for bad in (dict(steps=1), dict(zmin=2.0, zmax=1.0), dict(mode="x"), dict(p1=1.5), dict(zmin=-1.0)):
        with pytest.raises(ValueError):
            ScanConfig(**bad)


def test_scan_point_consistency(capsys):
    cfg = ScanConfig(mode="mixed", j1=Spin(2), j2=Spin(1), steps=5, z1b=1.0, z2b=1.0, phi2=0.7, p1=0.3)
    rows = list(csv.DictReader(io.StringIO(scan_csv(cfg)[0])))
    for row in rows[::3]:
        code, out, _ = run(
            ["point", "--mode", "mixed", "--j1", "1", "--j2", "0.5", "--z1", row["z1"], "--z2", row["z2"],
             "--phi2", "0.7", "--p1", "0.3", "--z1b", "1", "--z2b", "1"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["concurrence"] - float(row["concurrence"])) <= 1e-8  # CSV keeps 9 digits
        assert doc["case"]["label"] == row["case_label"]


def test_pure_point_full_precision_matches_scan_value(capsys):
    cfg = ScanConfig(steps=4, zmax=3.0, j1=Spin(3), j2=Spin(5))
    from scsent.scan import pure_point

    code, out, _ = run(["point", "--j1", "1.5", "--j2", "2.5", "--z1", "2", "--z2", "1"], capsys)
    assert code == 0
    assert abs(json.loads(out)["concurrence"] - pure_point(cfg, 2.0, 1.0)) <= 1e-12


def test_point_json_shape(capsys):
    code, out, _ = run(["point", "--j1", "0.5", "--j2", "0.5", "--z1", "0.5", "--z2", "0.5"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert list(doc)[:4] == ["mode", "j1", "j2", "z1"]
    assert doc["concurrence"] == pytest.approx(8 / 17)
    assert doc["oracle_concurrence"] == pytest.approx(8 / 17, abs=1e-10)
    assert doc["z1"] == [0.5, 0.0]


def test_point_mixed_unclassified_value_is_null(capsys):
    code, out, _ = run(
        ["point", "--mode", "mixed", "--z1", "0.3+0.2i", "--z2", "1.4", "--z1b", "2.2", "--z2b", "0.5i", "--phi", "0.2",
         "--phi2", "1.0", "--p1", "0.4", "--j2", "1"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["case"] == {"label": "Unclassified", "value": None}
    assert abs(doc["concurrence_sq_direct"] - doc["concurrence_sq_wootters"]) < 1e-10


def test_point_degenerate_exit_code(capsys):
    code, _, err = run(["point", "--z1", "0", "--z2", "0", "--phi", "3.141592653589793"], capsys)
    assert code == 3
    assert "degenerate" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["point", "--j1", "0.3"],
        ["point", "--z1", "abc"],
        ["scan", "--steps", "1"],
        ["scan", "--preset", "fig9"],
        ["verify", "--suite", "nope"],
        ["point", "--p1", "2"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_preset_with_override(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(["scan", "--preset", "fig4", "--steps", "3", "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 9 and "case_label" in rows[0]


def test_heatmap_header_and_pixels(tmp_path, capsys):
    src = tmp_path / "s.csv"
    src.write_text(scan_csv(ScanConfig(steps=3, zmax=2.0))[0])
    dst = tmp_path / "h.pgm"
    code, _, _ = run(["heatmap", str(src), "--out", str(dst)], capsys)
    data = dst.read_bytes()
    assert code == 0
    assert data.startswith(b"P5\n3 3\n255\n")
    grid = read_concurrence_grid(src.read_text())
    assert list(data[len(b"P5\n3 3\n255\n"):]) == [pixel(v) for row in grid for v in row]
    assert data[-5] == 255  # centre (1, 1)


def test_pixel_rounding():
    assert [pixel(v) for v in (0.0, 1.0, 0.5, 1 / 510)] == [0, 255, 128, 1]


@pytest.mark.parametrize(
    "text",
    ["", "a,b\n1,2\n", "z1,z2,concurrence\n0,0,0\n0,1,0\n1,0,0\n", "z1,z2,concurrence\n0,0,2\n",
     "z1,z2,concurrence\n1,0,0\n1,1,0\n0,0,0\n0,1,0\n", "z1,z2,concurrence\n0,0,x\n"],
)
def test_malformed_csv(text):
    with pytest.raises(MalformedCSV):
        read_concurrence_grid(text)


def test_heatmap_malformed_exit_code(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("z1,z2\n")
    with pytest.raises(SystemExit) as exc:
        main(["heatmap", str(bad), "--out", str(tmp_path / "x.pgm")])
    assert exc.value.code == 2


def test_heatmap_pgm_empty_cells_are_black():
    assert heatmap_pgm([[0.0, 1.0]])[-2:] == bytes([0, 255])


def test_verify_single_suite(capsys):
    code, out, _ = run(["verify", "--suite", "su2", "--seed", "3"], capsys)
    assert code == 0
    assert "PASS su2.unit_norm" in out and "FAIL" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "scsent", "point", "--z1", "1", "--z2", "1"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["concurrence"] == pytest.approx(1.0)
