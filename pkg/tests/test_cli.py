"""Tests for the command-line interface."""

import json
import math

import pytest

from synctur.cli import build_parser, main
from synctur.observables import QuadratureConvergenceError
from synctur.quadrature import IntegralResult


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_point_phi_zero_has_no_trs_term(capsys):
    code, out, _ = run(capsys, "point", "--phi", "0", "--rel-tol", "1e-6")
    assert code == 0
    obj = json.loads(out)
    assert obj["thermo"]["dP_A"] == 0.0
    assert obj["thermo"]["dP_B"] == 0.0
    assert obj["params"]["phi"] == 0.0
    assert "pearson_C" in obj["sync"]


def test_point_with_tbar_flags(capsys):
    code, out, _ = run(capsys, "point", "--tbar", "1.0", "--dt-rel", "1.8",
                       "--rel-tol", "1e-6")
    assert code == 0
    obj = json.loads(out)
    assert obj["params"]["t1"] == pytest.approx(1.9)
    assert obj["params"]["t2"] == pytest.approx(0.1)


def test_config_file_with_flag_override(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("omega-drive = 2.0\ngamma2 = 5.0  # strong damping\n")
    code, out, _ = run(capsys, "point", "--config", str(cfgfile),
                       "--gamma2", "7.0", "--rel-tol", "1e-6")
    assert code == 0
    obj = json.loads(out)
    assert obj["params"]["omega_drive"] == 2.0
    assert obj["params"]["gamma2"] == 7.0   # flag wins over file


def test_config_file_unknown_key(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("voltage = 3\n")
    code, _, err = run(capsys, "point", "--config", str(cfgfile))
    assert code == 1
    assert "voltage" in err


def test_invalid_flag_exits_one(capsys):
    assert main(["point", "--no-such-flag"]) == 1


def test_invalid_parameter_value(capsys):
    code, _, err = run(capsys, "point", "--t1", "-3")
    assert code == 1
    assert "t1" in err


def test_point_nonconvergence_exits_two(capsys, monkeypatch):
    import synctur.cli as cli

    def fail(p, cfg, strict=True):
        raise QuadratureConvergenceError("P_A0", IntegralResult(0, 1, 15, False))

    monkeypatch.setattr(cli, "thermo_report", fail)
    code, _, err = run(capsys, "point")
    assert code == 2
    assert "P_A0" in err


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "--axis1", "omega_drive",
                     "--grid1", "1,2", "--quantities", "P_A,Q_P",
                     "--rel-tol", "1e-6", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "omega_drive,P_A,Q_P,converged"
    assert len(lines) == 3


def test_sweep_log_grid_json(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "sweep", "--axis1", "omega_drive",
                     "--grid1", "0.5:2:3:log", "--quantities", "P",
                     "--rel-tol", "1e-6", "--format", "json", "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    grid = obj["spec"]["axis1"][1]
    assert grid[0] == pytest.approx(0.5)
    assert grid[1] == pytest.approx(1.0)
    assert grid[2] == pytest.approx(2.0)


def test_certify_passes_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "certify", "--samples", "200", "--seed", "7",
                         "--rel-tol", "1e-6")
    code2, out2, _ = run(capsys, "certify", "--samples", "200", "--seed", "7",
                         "--rel-tol", "1e-6")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "PASS" in out1


def test_certify_violation_exits_three(capsys, monkeypatch):
    import synctur.cli as cli
    from synctur.asymptotics import CertificateReport

    def fake(p, pairs, tol=1e-10):
        return CertificateReport(n_pairs=1, violations=["synthetic"], margins={})

    monkeypatch.setattr(cli, "tur_certificate", fake)
    code, out, _ = run(capsys, "certify", "--samples", "1", "--rel-tol", "1e-6")
    assert code == 3
    assert "FAIL" in out


def test_asymptotics_json(capsys):
    code, out, _ = run(capsys, "asymptotics", "--rel-tol", "1e-7")
    assert code == 0
    obj = json.loads(out)
    assert obj["diabatic"]["dalpha_b"] == -obj["diabatic"]["dalpha_a"]
    assert obj["adiabatic"]["dbeta_a"] is None


def test_figure_data_fig2a(tmp_path, capsys):
    out = tmp_path / "fig2a.csv"
    code, _, _ = run(capsys, "figure-data", "fig2a", "--grid-points", "32",
                     "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "omega,gamma2,lambda_major,lambda_minor"
    assert len(lines) == 1 + 2 * 32


def test_figure_data_fig3_small_grid(tmp_path, capsys):
    out = tmp_path / "fig3.csv"
    code, _, _ = run(capsys, "figure-data", "fig3", "--grid-points", "3",
                     "--rel-tol", "1e-5", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "omega_drive,t,Q_PA,P_A,Q_P,P,S_dot,converged"
    assert len(lines) == 1 + 9


def test_figure_data_unknown_preset():
    assert main(["figure-data", "fig99"]) == 1


def test_help_lists_all_flags():
    parser = build_parser()
    text = parser.format_help()
    for sub in ("point", "sweep", "certify", "figure-data", "asymptotics"):
        assert sub in text
