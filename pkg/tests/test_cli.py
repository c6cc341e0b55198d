import json
import subprocess
import sys

import numpy as np
import pytest

from stockwell import formats
from stockwell.cli import _parse_sizes, bench, main, run_checks
from stockwell.dost import DostCoefficients
from stockwell.windows import THIRD


def _random(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@pytest.fixture
def tone(tmp_path):
    path = tmp_path / "tone.csv"
    formats.write_signal(path, np.exp(2j * np.pi * 4 * np.arange(16) / 16))
    return path


def test_analyze_pure_tone(tmp_path, tone):
    out = tmp_path / "c.json"
    assert main(["analyze", str(tone), "--window", "boxcar", "--out", str(out)]) == 0
    c = formats.read_coefficients(out)
    assert np.allclose(c.band(3), 0.5, atol=1e-12)
    assert np.abs(np.delete(c.values, np.arange(4, 8))).max() < 1e-12


def test_analyze_constant(tmp_path):
    formats.write_signal(tmp_path / "s.csv", np.ones(32))
    main(["analyze", str(tmp_path / "s.csv"), "--out", str(tmp_path / "c.json")])
    c = formats.read_coefficients(tmp_path / "c.json")
    assert c[0, 0] == pytest.approx(1.0)
    assert np.abs(c.values[1:]).max() < 1e-15


@pytest.mark.parametrize("fmt", ["csv", "bin"])
@pytest.mark.parametrize("normalized", [[], ["--normalized"]])
def test_gaussian_roundtrip(tmp_path, rng, fmt, normalized):
    x = _random(rng, 64)
    src = tmp_path / f"s.{fmt}"
    formats.write_signal(src, x, fmt)
    win = ["--window", "gaussian:mu=0,sigma=1"]
    assert main(["analyze", str(src), *win, *normalized, "--out", str(tmp_path / "c.json")]) == 0
    assert main(["synthesize", str(tmp_path / "c.json"), *win, "--format", fmt,
                 "--out", str(tmp_path / f"y.{fmt}")]) == 0
    assert np.abs(formats.read_signal(tmp_path / f"y.{fmt}") - x).max() < 1e-9


def test_synthesize_unit(tmp_path):
    formats.write_coefficients(tmp_path / "c.json", DostCoefficients.unit(32, 1, 0))
    assert main(["synthesize", str(tmp_path / "c.json"), "--out", str(tmp_path / "y.csv")]) == 0
    y = formats.read_signal(tmp_path / "y.csv")
    assert np.abs(y - np.exp(2j * np.pi * np.arange(32) / 32)).max() < 1e-14


def test_synthesize_random_roundtrip(tmp_path, rng):
    c = DostCoefficients.zeros(64)
    c.values[:] = _random(rng, 64)
    formats.write_coefficients(tmp_path / "c.json", c)
    main(["synthesize", str(tmp_path / "c.json"), "--format", "bin", "--out", str(tmp_path / "y.bin")])
    main(["analyze", str(tmp_path / "y.bin"), "--out", str(tmp_path / "d.json")])
    assert np.abs(formats.read_coefficients(tmp_path / "d.json").values - c.values).max() < 1e-9


def test_synthesize_mismatch(tmp_path, tone):
    main(["analyze", str(tone), "--window", "gaussian:mu=0,sigma=1", "--out", str(tmp_path / "c.json")])
    assert main(["synthesize", str(tmp_path / "c.json"), "--window", "boxcar"]) == 1
    assert main(["synthesize", str(tmp_path / "c.json"), "--normalized"]) == 1
    main(["analyze", str(tone), "--out", str(tmp_path / "d.json")])
    assert main(["synthesize", str(tmp_path / "d.json"), "--window", "boxcar"]) == 1


def test_analyze_errors(tmp_path, tone):
    assert main(["analyze", str(tmp_path / "missing.csv")]) == 2
    (tmp_path / "bad.csv").write_text("x\n")
    assert main(["analyze", str(tmp_path / "bad.csv")]) == 2
    formats.write_signal(tmp_path / "s12.csv", np.ones(12))
    assert main(["analyze", str(tmp_path / "s12.csv")]) == 1
    assert main(["analyze", str(tone), "--window", "hann"]) == 1
    assert main(["analyze", str(tone), "--n", "32"]) == 1
    assert main(["analyze", str(tone), "--normalized"]) == 1


def test_stransform_export(tmp_path, tone):
    assert main(["stransform", str(tone), "--out", str(tmp_path / "tf.csv")]) == 0
    tf = formats.read_timefreq(tmp_path / "tf.csv")
    assert tf.n == 16 and np.abs(tf.voice(4) - 1).max() < 1e-12
    assert main(["stransform", str(tone), "--window", "boxcar", "--out", str(tmp_path / "b.csv")]) == 0


def test_verify_default(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "grid identity" in out
    grid = next(line for line in out.splitlines() if "grid identity" in line)
    assert float(grid.split("max_dev=")[1].split()[0]) < 1e-8


def test_verify_gaussian():
    checks = run_checks(64, "gaussian:mu=0,sigma=1", seed=5)
    assert all(c.ok for c in checks)
    assert any(c.name == "frame bounds" for c in checks)


def test_verify_zeroed_window(tmp_path, capsys):
    xi = np.linspace(-THIRD, THIRD, 11)
    rows = [f"{x!r},{0.0 if i == 5 else 1.0},0" for i, x in enumerate(xi.tolist())]
    (tmp_path / "w.csv").write_text("\n".join(rows))
    assert main(["verify", "--window", f"file:{tmp_path / 'w.csv'}"]) == 1
    assert "ZeroOnSupport" in capsys.readouterr().err


def test_bench_rows(tmp_path):
    assert main(["bench", "--sizes", "8,1024", "--reps", "5", "--out", str(tmp_path / "b.csv")]) == 0
    lines = (tmp_path / "b.csv").read_text().splitlines()
    assert lines[0] == "n,t_fast_ns,t_direct_ns,t_redundant_ns"
    first = lines[1].split(",")
    assert first[0] == "8" and all(v for v in first)
    n, fast, direct, _ = (int(v) for v in lines[2].split(","))
    assert n == 1024 and fast < direct


def test_bench_caps():
    rows = list(bench([8192], reps=5))
    assert rows[0][3] is None and rows[0][2] is not None


def test_parse_sizes():
    assert _parse_sizes("3:5,64") == [8, 16, 32, 64]


def test_frame_bounds_report(capsys):
    assert main(["frame-bounds", "--window", "gaussian:mu=0,sigma=1", "--n", "64", "--trials", "20"]) == 0
    lines = dict(line.split(None, 1) for line in capsys.readouterr().out.splitlines())
    assert float(lines["lower"]) == pytest.approx(np.exp(-1 / 9), abs=1e-11)


def test_basis_dump(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["basis-dump", "--n", "16", "--band", "0:0", "--out", str(out)]) == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (16, 5) and np.allclose(data[:, 3], 1) and np.allclose(data[:, 4], 0)
    assert main(["basis-dump", "--n", "64", "--out", str(out)]) == 0
    ps = set(np.loadtxt(out, delimiter=",", skiprows=1)[:, 0].astype(int))
    assert ps == {0, 1, 2, 3, 4, 5}
    assert main(["basis-dump", "--n", "64", "--band", "4:4", "--window", "gaussian:mu=0,sigma=1",
                 "--out", str(out)]) == 0
    assert main(["basis-dump", "--n", "16", "--band", "9"]) == 1


def test_concentration_csv(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["concentration", "--p-max", "4", "--n", "256", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p,tau,energy_fraction,norm_fraction" and len(lines) == 1 + 2 + 4 + 8
    assert main(["concentration", "--p-max", "9", "--n", "256"]) == 1


def test_deterministic(tmp_path):
    a = subprocess.run([sys.executable, "-m", "stockwell.cli", "verify", "--seed", "7"], capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "stockwell.cli", "verify", "--seed", "7"], capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_json_written_to_stdout(tone, capsys):
    assert main(["analyze", str(tone)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 16
