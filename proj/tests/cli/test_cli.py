import csv
import io
import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("DBARKIT_CLI", "dbarkit")


def run(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def csv_rows(text):
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def footer(text):
    out = {}
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            out[key] = value
    return out


def test_moments_fock_gaussian():
    res = run("moments", "--weight", "fock:m=2", "--n-max", 5)
    assert res.returncode == 0
    rows = csv_rows(res.stdout)
    assert [int(r["n"]) for r in rows] == list(range(6))
    for r in rows:
        n = int(r["n"])
        assert float(r["c2"]) == pytest.approx(math.pi * math.factorial(n), rel=1e-14)


def test_moments_disc():
    res = run("moments", "--weight", "disc:alpha=0", "--n-max", 3, "--format", "json")
    doc = json.loads(res.stdout)
    assert doc["command"] == "moments"
    assert [r["c2"] for r in doc["rows"]] == pytest.approx([math.pi / (n + 1) for n in range(4)], rel=1e-15)


def test_moments_large_values_become_strings():
    res = run("moments", "--weight", "fock:m=0.5", "--n-max", 300, "--format", "json")
    last = json.loads(res.stdout)["rows"][-1]
    assert isinstance(last["c2"], str)
    mantissa, exponent = last["c2"].split("e")
    assert math.log(float(mantissa)) + int(exponent) * math.log(10) == pytest.approx(last["log_c2"], rel=1e-12)


@pytest.mark.parametrize(
    "args, code",
    [
        (["moments", "--weight", "disc:alpha=-1"], 2),
        (["moments", "--weight", "fock:m=0"], 2),
        (["moments", "--weight", "ring:r=1"], 3),
        (["moments", "--weight", "disc:alpha=x"], 3),
        (["moments", "--n-max", "abc"], 3),
        (["moments", "--n-max", "-1"], 2),
        (["moments", "--format", "xml"], 3),
        (["kernel", "--weight", "disc", "--z", "1.5"], 2),
        (["reproduce", "--only", "nope"], 2),
        (["psh", "--tau", "2", "--sigma", "1"], 2),
    ],
)
def test_exit_codes(args, code):
    res = run(*args)
    assert res.returncode == code
    assert res.stderr.strip()


def test_spectrum_flat_for_gaussian():
    res = run("spectrum", "--weight", "fock:m=2", "--n-max", 100)
    rows = csv_rows(res.stdout)
    assert all(abs(float(r["lambda_n"]) - 1) <= 1e-12 for r in rows)
    assert footer(res.stdout)["verdict"] == "NonCompact"


def test_spectrum_quartic():
    res = run("spectrum", "--weight", "fock:m=4", "--n-max", 10000, "--format", "json")
    doc = json.loads(res.stdout)
    assert doc["verdict"] == "CompactNotHilbertSchmidt"
    assert doc["rows"][-1]["partial_sum"] > 50


def test_spectrum_disc():
    res = run("spectrum", "--weight", "disc:alpha=1", "--n-max", 1000)
    rows = csv_rows(res.stdout)
    assert footer(res.stdout)["verdict"] == "HilbertSchmidt"
    assert float(rows[-1]["partial_sum"]) == pytest.approx(1.0, abs=2e-3)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_solve_constant(tmp_path):
    f = write(tmp_path, "f.json", "[[1, 0]]")
    doc = json.loads(run("solve", f, "--weight", "fock:m=2", "--format", "json").stdout)
    assert doc["hybrid"] == {"g": [[1.0, 0.0]], "h": []}
    assert doc["norm_sq"] == pytest.approx(math.pi, rel=1e-14)


def test_solve_linear_disc(tmp_path):
    f = write(tmp_path, "f.json", "[[0, 0], [1, 0]]")
    doc = json.loads(run("solve", f, "--weight", "disc:alpha=0", "--format", "json").stdout)
    assert doc["hybrid"]["h"] == [[-0.5, 0.0]]
    assert doc["norm_sq"] == pytest.approx(math.pi / 12, rel=1e-14)
    assert doc["max_orthogonality_residual"] <= 1e-12
    assert doc["dbar_residual"] <= 1e-6


@pytest.mark.parametrize("text", ["[[1, 0], [2", "{\"a\": 1}", "[[1, 2, 3]]", "[[\"1\", 0]]", "[1]"])
def test_solve_malformed(tmp_path, text):
    f = write(tmp_path, "f.json", text)
    assert run("solve", f).returncode == 3


def test_solve_missing_file(tmp_path):
    assert run("solve", tmp_path / "absent.json").returncode == 3


def test_reproduce_only(tmp_path):
    out = tmp_path / "out"
    res = run("reproduce", "--only", "ball-divergence", "--out", out)
    assert res.returncode == 0
    assert res.stdout.strip() == "PASS ball-divergence"
    files = sorted(p.name for p in out.iterdir())
    assert files == ["ball-divergence.csv", "summary.csv"]
    text = (out / "ball-divergence.csv").read_text()
    assert text.splitlines()[0] == "N,partial_sum,four_log_N"
    assert footer(text)["result"] == "PASS"


def test_reproduce_json_and_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run("reproduce", "--format", "json", "--out", d, "--seed", 7).returncode == 0
    for p in a.iterdir():
        assert p.read_bytes() == (b / p.name).read_bytes()
    summary = json.loads((a / "summary.json").read_text())
    assert summary["pass"] is True
    assert len(summary["rows"]) == 10
    doc = json.loads((a / "norm-identity.json").read_text())
    assert doc["pass"] is True and doc["checks"]


@pytest.mark.parametrize(
    "args",
    [
        ["kernel", "--weight", "fock:m=2", "--z", "1,0.5", "--w", "0.3"],
        ["gamma", "--m", "4", "--k-max", "5"],
        ["ball", "--alpha", "1", "--n-max", "3", "--quadrature"],
        ["ball-sums", "--n-max", "10"],
        ["ball-kernel", "--z", "0.5", "0", "--w", "0.5", "0"],
        ["psh", "--conjugate-at", "2", "--shift-at", "3"],
        ["moments", "--weight", "fock:m=3", "--quadrature"],
    ],
)
def test_every_command_runs(args):
    res = run(*args, "--format", "json")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["command"] == args[0]
    assert doc["rows"]


def test_kernel_reproduces(tmp_path):
    f = write(tmp_path, "f.json", "[[0, 0], [0, 0], [1, 0]]")
    doc = json.loads(run("kernel", "--weight", "fock:m=2", "--z", "1,0.5", "--coeffs", f, "--format", "json").stdout)
    row = doc["rows"][0]
    z2 = complex(1, 0.5) ** 2
    assert complex(row["reproduced_re"], row["reproduced_im"]) == pytest.approx(z2, rel=1e-6)


def test_ball_kernel_constant():
    doc = json.loads(run("ball-kernel", "--z", "0.5", "0", "--w", "0.5", "0", "--format", "json").stdout)
    row = doc["rows"][0]
    assert row["series_re"] == pytest.approx(2 / math.pi**2 * 64 / 27, rel=1e-12)
    assert row["constant"] == pytest.approx(2 / math.pi**2, rel=1e-14)


def test_output_file(tmp_path):
    out = tmp_path / "m.csv"
    assert run("moments", "--n-max", 2, "--out", out).returncode == 0
    assert out.read_text().startswith("n,log_c2,c2,ratio\n")
