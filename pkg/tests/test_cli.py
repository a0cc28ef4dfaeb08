import json
import math
import subprocess
import sys

import pytest

from gsbcast.cli import main
from gsbcast.regions import read_curve_csv


@pytest.fixture
def k1_channel(tmp_path):
    path = tmp_path / "k1.json"
    path.write_text(json.dumps({"noise": [1], "power": 50, "bandwidth": 1}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_member_at_boundary(capsys, k1_channel):
    code, out, _ = run(capsys, "--channel", k1_channel, "check", "--region", "inner", "--d", repr(1 / 51))
    data = json.loads(out)
    assert code == 0 and data["member"]
    assert abs(data["slack"]) < 1e-12


def test_check_rounded_boundary_is_outside(capsys, k1_channel):
    # 0.0196078 is just below 1/51, so the lhs exceeds the budget by ~1e-4
    code, out, _ = run(capsys, "--channel", k1_channel, "check", "--d", "0.0196078")
    assert code == 3 and not json.loads(out)["member"]


def test_check_outer_k_maximal_distortions(capsys):
    code, out, _ = run(capsys, "check", "--region", "outer-k", "--d", "1,1")
    assert code == 0
    assert json.loads(out)["lhs"] == pytest.approx(9 / math.sqrt(2) + 1 / math.sqrt(2))


def test_check_parametric_needs_tau(capsys):
    code, out, err = run(capsys, "check", "--region", "parametric", "--d", "0.5,0.1")
    assert code == 1 and out == "" and "--tau" in err
    code, out, _ = run(capsys, "check", "--region", "parametric", "--tau", "inf", "--d", "0.5,0.1")
    assert code == 0 and json.loads(out)["lhs"] == pytest.approx(9 + 1 / math.sqrt(0.1))


def test_global_flags_after_subcommand(capsys, k1_channel):
    code, out, _ = run(capsys, "check", "--channel", k1_channel, "--tol", "1e-3", "--d", "0.0196078")
    assert code == 0


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{noise: [1")
    code, out, err = run(capsys, "--channel", str(bad), "genie")
    assert code == 1 and out == "" and "malformed" in err


def test_invalid_channel(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"noise": [1, 10], "power": 50, "bandwidth": 2}))
    code, out, err = run(capsys, "--channel", str(bad), "genie")
    assert code == 1 and "non-increasing" in err


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["check", "--d", "a,b"])
    assert exc.value.code == 1


def test_invalid_distortion_exit_1(capsys):
    code, out, err = run(capsys, "check", "--d", "0.1,0.5")
    assert code == 1 and out == ""


def test_relax(capsys):
    code, out, _ = run(capsys, "relax", "--d", "0.1,0.04")
    data = json.loads(out)
    assert code == 0 and data["labels"] == [1, 1]
    assert data["d_star"] == pytest.approx([0.2, 0.16])


def test_genie(capsys):
    code, out, _ = run(capsys, "genie")
    data = json.loads(out)
    assert data["rates_bits"] == pytest.approx([0.79248125, 1.04373142], abs=1e-8)
    assert data["p2p_ok"] == [True, True]


def test_tau_kfactor(capsys):
    code, out, _ = run(capsys, "tau", "--mode", "kfactor", "--d", "0.3,0.2,0.1", "--k", "3")
    data = json.loads(out)
    assert data["tau"] == pytest.approx([6.0, 0.9534883720930232], rel=1e-12)
    assert data["residuals"][:2] == pytest.approx([0, 0], abs=1e-12)


def test_tau_kfactor_inf_serialized(capsys):
    code, out, _ = run(capsys, "tau", "--mode", "kfactor", "--d", "0.6,0.1")
    assert json.loads(out)["tau"] == ["inf"]


def test_tau_other_modes(capsys):
    _, out, _ = run(capsys, "tau", "--mode", "pow2", "--d", "0.5,0.2,0.1")
    assert json.loads(out)["tau"] == [0.5, 0.2]
    _, out, _ = run(capsys, "tau", "--mode", "relaxed", "--d", "0.3,0.2,0.01")
    assert json.loads(out)["tau"] == [0.3, 0.3]


def test_rates_both_directions(capsys):
    _, out, _ = run(capsys, "rates", "--d", "0.25,0.01")
    data = json.loads(out)
    assert data["rates"]["bits"][0] == pytest.approx(0.5)
    assert data["capacity"]["lhs"] == pytest.approx(28.0)
    _, out, _ = run(capsys, "rates", "--rates", "0.5,0.3")
    assert json.loads(out)["distortions"][0] == pytest.approx(math.exp(-2.0))
    code, _, _ = run(capsys, "rates")
    assert code == 1


def test_gap(capsys):
    _, out, _ = run(capsys, "gap", "--mode", "pow2", "--d", "0.5,0.2")
    data = json.loads(out)
    assert data["scaled"] == [1.0, 0.8] and data["factors"] == [2.0, 4.0] and data["mode"] == "pow2"
    code, _, err = run(capsys, "gap", "--mode", "pow2", "--d", "0.001,0.0001")
    assert code == 1 and err


def test_mi(capsys):
    _, out, _ = run(capsys, "mi", "--D", "0.1", "--tau", "0.1", "--tau-prime", "0.5")
    data = json.loads(out)
    assert data["mi_lower_bound"] == pytest.approx(0.45815, abs=1e-5)
    assert data["oracle"]["mi_difference"] == pytest.approx(data["mi_difference_lower_bound"], rel=1e-12)
    code, _, err = run(capsys, "mi", "--D", "0.1", "--tau-prime", "0.5", "--samples", "10000")
    assert code == 1 and "seed" in err
    _, a, _ = run(capsys, "--seed", "3", "mi", "--D", "0.1", "--tau-prime", "0.5", "--samples", "10000")
    _, b, _ = run(capsys, "--seed", "3", "mi", "--D", "0.1", "--tau-prime", "0.5", "--samples", "10000")
    assert a == b and "monte_carlo" in json.loads(a)


def test_boundary_to_file(capsys, tmp_path):
    code, out, _ = run(capsys, "--out", str(tmp_path), "boundary", "--grid-min", "0.001", "--points", "5")
    assert code == 0 and out == ""
    samples = read_curve_csv(tmp_path / "boundary.csv")
    assert len(samples) == 5 and samples[-1].binding == "ordering"


def test_fig2_files_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "--out", str(a), "fig2")[0] == 0
    assert run(capsys, "--out", str(b), "fig2")[0] == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(["inner.csv", "p2p.json"] + [f"outer_tau_{v}.csv" for v in ("0", "0.05", "0.2", "1", "5", "inf")])
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    corner = json.loads((a / "p2p.json").read_text())
    assert corner["d1"] == 1 / 36 and corner["d2"] == 51.0 ** -2
    rows = (a / "inner.csv").read_text().splitlines()
    assert rows[0] == "free_coord,solved_coord,binding" and len(rows) == 201


def test_fig2_rejects_k3(capsys, tmp_path):
    ch = tmp_path / "k3.json"
    ch.write_text(json.dumps({"noise": [3, 2, 1], "power": 5, "bandwidth": 1}))
    code, _, err = run(capsys, "--channel", str(ch), "--out", str(tmp_path / "o"), "fig2")
    assert code == 1 and "two-user" in err


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "gsbcast.cli", "relax", "--d", "0.1,0.04"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["labels"] == [1, 1]
