import csv
import io
import json
import math
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from thermoifs import oracle
from thermoifs.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def cfg(tmp_path, name, **overrides):
    data = json.loads((CONFIGS / f"{name}.json").read_text())
    for key, value in overrides.items():
        data.setdefault(key, {}).update(value) if isinstance(value, dict) else data.update({key: value})
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_pressure_t0(tmp_path, capsys):
    code, out, _ = run(capsys, "pressure", "--config", cfg(tmp_path, "middle_thirds"),
                       "--t", "0", "--depth", "6")
    table = rows(out)
    assert code == 0 and table[0] == ["n", "P_n"] and table[-1][0] == "final"
    assert float(table[-1][1]) == pytest.approx(math.log(2), abs=1e-12)


def test_pressure_exact_every_level(tmp_path, capsys):
    _, out, _ = run(capsys, "pressure", "--config", cfg(tmp_path, "darst_01_05"), "--t", "1",
                    "--depth", "8")
    for n, p in rows(out)[1:]:
        assert float(p) == pytest.approx(math.log(0.6), abs=1e-12)


def test_resource_error_leaves_no_file(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("THERMOIFS_ENUM_BUDGET", "1000")
    out = tmp_path / "p.csv"
    code, _, err = run(capsys, "pressure", "--config", cfg(tmp_path, "middle_thirds"),
                       "--out", str(out))
    assert code == 4 and "error[resource]" in err
    assert not out.exists() and list(tmp_path.glob("p.csv*")) == []


def test_beta_curve(tmp_path, capsys):
    code, out, _ = run(capsys, "beta-curve", "--config", cfg(tmp_path, "darst_01_05"),
                       "--t-min", "0", "--t-max", "1.2", "--steps", "13", "--depth", "10")
    table = rows(out)
    assert code == 0 and table[0] == ["t", "beta", "residual"]
    ts = [float(r[0]) for r in table[1:]]
    bs = [float(r[1]) for r in table[1:]]
    assert ts == sorted(ts)
    delta = oracle.affine_delta((0.1, 0.5))
    assert any(abs(t - delta) < 1e-9 and abs(b) < 1e-8 for t, b in zip(ts, bs))
    assert any(t == 1.0 and abs(b - 1) < 1e-8 for t, b in zip(ts, bs))
    assert all(b2 > b1 for b1, b2 in zip(bs, bs[1:]))


def test_beta_curve_ahlfors_affine(tmp_path, capsys):
    _, out, _ = run(capsys, "beta-curve", "--config", cfg(tmp_path, "middle_thirds"),
                    "--steps", "7", "--depth", "8")
    d = math.log(2) / math.log(3)
    for t, b, res in rows(out)[1:]:
        assert float(b) == pytest.approx(oracle.ahlfors_beta(d, 1.0, float(t)), abs=1e-8)
        assert float(res) < 1e-8


def test_beta_curve_rejects_inadmissible(tmp_path, capsys):
    code, _, err = run(capsys, "beta-curve", "--config",
                       cfg(tmp_path, "middle_thirds", alpha=math.log(2) / math.log(3)),
                       "--depth", "6")
    assert code == 2 and "error[input]" in err


def test_steps_validation(tmp_path, capsys):
    code, _, _ = run(capsys, "beta-curve", "--config", cfg(tmp_path, "darst_01_05"), "--steps", "1")
    assert code == 2


@pytest.mark.parametrize("name,note", [("darst_01_05", "dim_nu > s"), ("darst_001_08", "dim_nu < s")])
def test_dimensions_json(tmp_path, capsys, name, note):
    code, out, _ = run(capsys, "dimensions", "--config", cfg(tmp_path, name), "--depth", "8",
                       "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["ordering_note"] == note
    assert set(rec) == {"delta", "dim_nu", "s", "s_0", "s_1", "min_ratio", "ordering_note"}


def test_dimensions_middle_thirds(tmp_path, capsys):
    _, out, _ = run(capsys, "dimensions", "--config", cfg(tmp_path, "middle_thirds"), "--depth", "8")
    header, values = rows(out)
    rec = dict(zip(header, values))
    d = math.log(2) / math.log(3)
    assert float(rec["delta"]) == pytest.approx(d, abs=1e-9)
    assert float(rec["s"]) == pytest.approx(d * d, abs=1e-6)


def test_staircase(tmp_path, capsys):
    _, out, _ = run(capsys, "staircase", "--config", cfg(tmp_path, "middle_thirds"), "--level", "1")
    assert rows(out) == [["x", "F_lower", "F_upper"], ["0.0", "0.0", "0.0"],
                         [repr(1 / 3), "0.5", "0.5"], [repr(2 / 3), "0.5", "0.5"],
                         ["1.0", "1.0", "1.0"]]
    _, out, _ = run(capsys, "staircase", "--config", cfg(tmp_path, "middle_thirds"), "--level", "10")
    table = rows(out)[1:]
    assert len(table) == 2 * 2 ** 10
    f = [float(r[1]) for r in table]
    assert f == sorted(f)


def test_scan_point(tmp_path, capsys):
    path = cfg(tmp_path, "middle_thirds")
    code, out, _ = run(capsys, "scan-point", "--config", path, "--point", "block")
    table = rows(out)
    assert code == 0
    assert table[0] == ["n", "k", "i", "birkhoff_chi", "score", "in_chain", "oscillation_candidate"]
    assert table[1][-1] == "1"
    _, out, _ = run(capsys, "scan-point", "--config", path, "--point", '{"tail": [0, 1]}')
    assert rows(out)[1][-1] == "0"
    code, _, err = run(capsys, "scan-point", "--config", path, "--point", '{"tail": 0}')
    assert code == 2 and "error[input]" in err
    code, _, _ = run(capsys, "scan-point", "--config", path, "--point", "{bad")
    assert code == 2


def test_validate(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", "--config", cfg(tmp_path, "nonlinear"), "--format", "json")
    assert code == 0 and json.loads(out) == {"valid": True, "violations": []}
    bad = cfg(tmp_path, "darst_01_05", system={"maps": [
        {"kind": "affine", "ratio": 0.6, "offset": 0.0},
        {"kind": "affine", "ratio": 0.5, "offset": 0.5}]})
    code, out, err = run(capsys, "validate", "--config", bad)
    assert code == 2 and "strong separation" in out


def test_bad_config(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text('{"system": {"maps": []}')
    code, _, err = run(capsys, "pressure", "--config", str(p))
    assert code == 2 and "line 1" in err


def test_deterministic_files(tmp_path, capsys):
    path = cfg(tmp_path, "darst_01_05")
    outs = []
    for i in range(2):
        out = tmp_path / f"o{i}.csv"
        assert main(["beta-curve", "--config", path, "--depth", "8", "--steps", "5",
                     "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.skipif(shutil.which("thermoifs") is None, reason="console script not installed")
def test_console_script(tmp_path):
    r = subprocess.run(["thermoifs", "validate", "--config", cfg(tmp_path, "middle_thirds")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("condition,detail")
