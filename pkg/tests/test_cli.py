"""Command line behaviour: focal output, formats, exit codes."""

import json

import pytest

from hodgeatoms.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_period(capsys):
    code, out, _ = run_cli(capsys, "period", "--order", "4")
    assert code == 2
    assert "G(q) coefficients through q^4:" in out
    assert "1, 4, 15, 280/9, 6055/144" in out
    assert "verdict: INCONCLUSIVE" in out


def test_certify(capsys):
    code, out, _ = run_cli(capsys, "certify")
    assert code == 0
    assert "IRRATIONAL_CERTIFIED" in out
    assert "[PASS] spectrum.reciprocity" in out


def test_certify_json(capsys):
    code, out, _ = run_cli(capsys, "certify", "--format", "json")
    assert code == 0
    cert = json.loads(out)
    assert cert["verdict"] == "IRRATIONAL_CERTIFIED"
    code2, out2, _ = run_cli(capsys, "certify", "--format", "json")
    assert out2 == out


def test_solve(capsys):
    code, out, _ = run_cli(capsys, "solve")
    assert code == 2
    assert "solution set: {(2, 2/3, 14/3, 16), (2, 6, 2, 16)}" in out
    assert "after enumerativity filter: {(2, 6, 2, 16)}" in out
    assert "rejected (2, 2/3, 14/3, 16): not a non-negative integer" in out
    assert "solved operator: D^6 - D^5 - 28*q*D^4" in out


def test_derive_operator(capsys):
    code, out, _ = run_cli(capsys, "derive-operator")
    assert code == 2
    assert "order 6 operator for component y_5:" in out
    assert "D^6 - D^5 + (-4*s*q - 2*t*q - 4*u*q)*D^4" in out


def test_ansatz(capsys):
    code, out, _ = run_cli(capsys, "ansatz")
    assert code == 2
    assert "symmetric block parameters: s, t, u, v" in out
    assert "[0, 2*s*q, 0, 0, 2*v*q^2, 0]" in out
    assert "antisymmetric parameter p_0_1 = 2" in out
    assert "[0, 2*q, 0]" in out


def test_spectrum(capsys):
    code, out, _ = run_cli(capsys, "spectrum")
    assert code == 2
    assert "chi(2M_+) = lam^2*(lam^2 - 128*q)*(lam^2 + 16*q)" in out
    assert "chi(2M_-) = lam*(lam^2 - 16*q)" in out
    assert "zero multiplicities: 2 and 1" in out
    assert "-> pass" in out


def test_through_truncates_certificate(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run_cli(capsys, "certify", "--through", "solve",
                           "--out", str(path), "--format", "json")
    assert code == 2
    assert "verdict: INCONCLUSIVE" in out
    assert f"certificate written to {path}" in out
    cert = json.loads(path.read_text())
    assert cert["spectrum"]["status"] == "not run"
    assert cert["solve"]["status"] == "ok"


def test_out_text(capsys, tmp_path):
    path = tmp_path / "cert.txt"
    code, out, _ = run_cli(capsys, "period", "--out", str(path))
    assert code == 2
    assert "G(q) coefficients" in out
    body = path.read_text()
    assert body.startswith("verdict")
    assert "not run" in body


def test_broken_fixture(capsys):
    code, out, _ = run_cli(capsys, "certify", "--instance", "broken-nonsimple")
    assert code == 2
    assert "[FAIL] atoms.transcendental_simple" in out
    assert "INCONCLUSIVE" in out


def test_unknown_instance(capsys):
    code, _, err = run_cli(capsys, "certify", "--instance", "nope")
    assert code == 1
    assert "no such instance" in err


def test_low_order_refused(capsys):
    code, _, err = run_cli(capsys, "solve", "--order", "8")
    assert code == 1
    assert "cannot saturate" in err


def test_negative_order_refused(capsys):
    code, _, err = run_cli(capsys, "period", "--order", "-1")
    assert code == 1
    assert "non-negative" in err


def test_low_order_fine_for_early_stages(capsys):
    code, out, _ = run_cli(capsys, "period", "--order", "2")
    assert code == 2
    assert "1, 4, 15" in out


def test_bad_subcommand(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1


def test_bad_through(capsys):
    with pytest.raises(SystemExit) as e:
        main(["certify", "--through", "nope"])
    assert e.value.code == 1
