import csv
import json
import math

import pytest

from superdiscord import cli
from superdiscord.states import dump_state, random_density

EXAMPLE_BLOCH = "bloch:0.01,0.1,0.22,0.1,0.03,0.5,0.1,0.02,0.2"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_compute_werner(capsys):
    code, out, _ = run(capsys, "compute", "--state", "werner:0.5", "--x", "0.2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["discord"] == pytest.approx(0.2625, abs=1e-4)
    assert rep["super_discord"] == pytest.approx(0.4442, abs=1e-4)


def test_compute_pure_x0(capsys):
    code, out, _ = run(capsys, "compute", "--state", "pure:0.5", "--x", "0", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["mutual_information"] == pytest.approx(2.0)
    assert rep["super_discord"] == pytest.approx(2.0)


def test_compute_bloch_human_readable(capsys):
    code, out, _ = run(capsys, "compute", "--state", EXAMPLE_BLOCH, "--x", "0")
    assert code == 0
    lines = dict(line.split(None, 1)[0:1] + [line.rsplit(None, 1)[-1]]
                 for line in out.splitlines())
    assert float(lines["S(B)"]) == pytest.approx(0.80262, abs=5e-6)
    assert "super discord D_w" in out


def test_compute_strong_token_and_maximally_entangled(capsys):
    code, out, _ = run(capsys, "compute", "--state", "maximally-entangled", "--x", "inf", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["strength_x"] == "inf"
    assert rep["super_discord"] == pytest.approx(rep["discord"], abs=1e-9)


def test_compute_fixed_basis(capsys):
    code, out, _ = run(capsys, "compute", "--state", "werner:0.5", "--x", "0.2",
                       "--basis", "0.3,0.1", "--no-optimize", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["optimized"] is False
    assert rep["optimal_basis_weak"] == pytest.approx([0.3, 0.1])


def test_compute_state_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(dump_state(random_density(2)))
    code, _, _ = run(capsys, "compute", "--state", str(path), "--x", "0.5", "--grid", "16x32")
    assert code == 0


def test_compute_broken_file_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    m = [[[0.225 if i == j else 0.0, 0.0] for j in range(4)] for i in range(4)]
    path.write_text(json.dumps({"dim": [2, 2], "matrix": m}))
    code, _, err = run(capsys, "compute", "--state", str(path))
    assert code == 2
    assert "trace" in err and str(path) in err


@pytest.mark.parametrize("state", ["nosuch", "pure:2", "werner:0.1,0.2", "bloch:0,0,0,0,0,0,1,1,1"])
def test_compute_input_errors(capsys, state):
    code, _, err = run(capsys, "compute", "--state", state)
    assert code == 2 and err.startswith("error:")


def test_compute_no_optimize_needs_basis(capsys):
    assert run(capsys, "compute", "--state", "werner:0.1", "--no-optimize")[0] == 2


def test_internal_violation_exit_3(monkeypatch, capsys):
    from superdiscord import corr

    def broken(*a, **k):
        raise corr.InternalConsistencyError("forced")

    monkeypatch.setattr(corr, "correlation_report", broken)
    assert run(capsys, "compute", "--state", "werner:0.1")[0] == 3


def test_sweep_werner(tmp_path, capsys):
    out = tmp_path / "w.csv"
    code, _, _ = run(capsys, "sweep-werner", "--x", "0.2", "--steps", "101", "--out", str(out))
    assert code == 0
    text = out.read_bytes()
    assert b"\r" not in text
    rows = read_csv(out)
    assert list(rows[0]) == ["z", "x", "mutual_information", "classical_correlation",
                             "discord", "super_discord"]
    assert len(rows) == 101
    assert float(rows[0]["discord"]) == 0 and float(rows[0]["super_discord"]) == pytest.approx(0, abs=1e-12)
    assert float(rows[-1]["discord"]) == pytest.approx(1.0, abs=1e-9)
    for r in rows[1:]:
        assert float(r["super_discord"]) > float(r["discord"])
    # byte-deterministic
    out2 = tmp_path / "w2.csv"
    run(capsys, "sweep-werner", "--x", "0.2", "--steps", "101", "--out", str(out2))
    assert out2.read_bytes() == text


def test_sweep_werner_errors(tmp_path, capsys):
    assert run(capsys, "sweep-werner", "--steps", "1")[0] == 2
    assert run(capsys, "sweep-werner", "--z-min", "-0.5")[0] == 2
    assert run(capsys, "sweep-werner", "--out", str(tmp_path / "no" / "dir.csv"), "--steps", "3")[0] == 2


def test_sweep_bloch(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, _, _ = run(capsys, "sweep-bloch", "--phi", "1.57", "--theta-steps", "13",
                     "--x-max", "10", "--x-steps", "21", "--out", str(out))
    assert code == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["theta", "x", "weak_conditional_entropy", "weak_discord_fixed_basis"]
    col = {float(r["x"]): float(r["weak_discord_fixed_basis"]) for r in rows if float(r["theta"]) == 0}
    # the surface saturates: x=5 vs x=10 differ by the frozen 2.5e-6 tail
    assert col[5.0] - col[10.0] == pytest.approx(2.5284e-6, rel=1e-3)
    assert col[0.5] > col[5.0]
    at_zero = {float(r["weak_discord_fixed_basis"]) for r in rows if float(r["x"]) == 0}
    assert len(at_zero) == 1
    a_norm = math.sqrt(0.01**2 + 0.1**2 + 0.22**2)
    h = -sum(p * math.log2(p) for p in ((1 + a_norm) / 2, (1 - a_norm) / 2))
    s_cond = 1.7401907797632437 - 0.8026198465235237  # oracle S(AB) - S(B)
    assert at_zero.pop() == pytest.approx(h - s_cond, abs=1e-9)
    for th in {r["theta"] for r in rows}:
        vals = [float(r["weak_discord_fixed_basis"]) for r in rows if r["theta"] == th]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


def test_sweep_bloch_unphysical(capsys):
    assert run(capsys, "sweep-bloch", "--state", "bloch:0,0,0,0,0,0,1,1,1")[0] == 2
    assert run(capsys, "sweep-bloch", "--state", "werner:0.3")[0] == 2


def test_verify_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code1, out1, _ = run(capsys, "verify", "--trials", "1", "--seed", "7", "--out", str(a))
    code2, out2, _ = run(capsys, "verify", "--trials", "1", "--seed", "7", "--out", str(b))
    assert code1 == code2 == 0
    assert out1 == out2 and a.read_bytes() == b.read_bytes()
    assert out1.count("PASS") == 6


def test_verify_failure_exit_1(monkeypatch, capsys):
    from superdiscord import verify

    def failing(trials, seed, settings):
        rep = verify.VerificationReport()
        rep.record("fake", 1.0, seed=seed, observed=2.0, bound=1.0)
        return {"fake": rep}

    monkeypatch.setattr(verify, "run_all", failing)
    code, out, _ = run(capsys, "verify", "--trials", "1")
    assert code == 1 and out.startswith("FAIL fake")


def test_strength_parsing():
    assert cli.parse_strength("inf") == math.inf
    assert cli.parse_strength("0.5") == 0.5
    with pytest.raises(Exception):
        cli.parse_strength("-1")
    assert cli.parse_grid("8x16") == (8, 16)
