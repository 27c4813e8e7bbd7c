"""Command-line interface: parity with the library, config handling, exit codes."""

from __future__ import annotations

import json

import pytest

from twrsec import cli, sgp
from twrsec.experiments import BETA_SWEEP_CHANNELS, db_to_linear
from twrsec.model import SystemParams


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_matches_library(capsys):
    code, out, _ = run_cli(capsys, "solve", "--p-db", "20",
                           "--gains", "0.6647,2.9152,1.3289",
                           "--restarts", "2", "--seed", "0")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    sys_ = SystemParams(P=db_to_linear(20.0, 1.0), eta=0.5, N0=1.0)
    res = sgp.optimize(BETA_SWEEP_CHANNELS, sys_,
                       cfg=sgp.SgpConfig(restarts=2, seed=0))
    assert payload["c_sum"] == res.c_sum
    assert payload["beta"] == res.best_alloc.beta
    assert payload["p1"] == res.best_alloc.p1
    assert payload["case"] == res.best_case.value


def test_solve_writes_output_file(tmp_path, capsys):
    out_path = tmp_path / "solution.json"
    code, out, _ = run_cli(capsys, "solve", "--p-db", "10", "--restarts", "1",
                           "--out", str(out_path))
    assert code == cli.EXIT_OK
    assert json.loads(out_path.read_text()) == json.loads(out)


def test_verify_passes_on_default_instance(capsys):
    code, out, _ = run_cli(capsys, "verify", "--p-db", "20", "--restarts", "2")
    assert code == cli.EXIT_OK
    assert "gap" in out


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cli.write_config({"p_db": 20.0, "restarts": 2, "seed": 7,
                      "gains": "0.6647,2.9152,1.3289"}, cfg)
    parsed = cli.read_config(str(cfg))
    assert parsed["p_db"] == "20.0" and parsed["seed"] == "7"

    code1, out1, _ = run_cli(capsys, "solve", "--config", str(cfg))
    code2, out2, _ = run_cli(capsys, "solve", "--config", str(cfg),
                             "--p-db", "10")
    assert code1 == code2 == cli.EXIT_OK
    assert json.loads(out1) != json.loads(out2)  # flag overrode the file value

    code3, out3, _ = run_cli(capsys, "solve", "--p-db", "20", "--restarts", "2",
                             "--seed", "7", "--gains", "0.6647,2.9152,1.3289")
    assert json.loads(out1) == json.loads(out3)


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("budget = 5\n")
    code, _, err = run_cli(capsys, "solve", "--config", str(cfg))
    assert code == cli.EXIT_USAGE
    assert "unknown key" in err


def test_config_rejects_malformed_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("p_db 20\n")
    with pytest.raises(ValueError):
        cli.read_config(str(cfg))


def test_config_comments_and_blanks_ignored(tmp_path):
    cfg = tmp_path / "ok.cfg"
    cfg.write_text("# comment\n\np_db = 15  # trailing\n")
    assert cli.read_config(str(cfg)) == {"p_db": "15"}


def test_sweep_beta_writes_csv(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code, _, _ = run_cli(capsys, "sweep-beta", "--p-db", "15", "--restarts", "1",
                         "--out", str(out_path))
    assert code == cli.EXIT_OK
    lines = out_path.read_text().strip().splitlines()
    assert lines[0].startswith("p_db,")
    assert len(lines) == 4  # header + optimal + two fixed betas


def test_sweep_epsilon_json_output(tmp_path, capsys):
    out_path = tmp_path / "eps.json"
    code, _, _ = run_cli(capsys, "sweep-epsilon", "--restarts", "1",
                         "--format", "json", "--out", str(out_path))
    assert code == cli.EXIT_OK
    doc = json.loads(out_path.read_text())
    assert "metadata" in doc and "rows" in doc
    assert {r["csi_case"] for r in doc["rows"]} == {"000", "001", "110"}


def test_monte_carlo_stdout(capsys):
    code, out, _ = run_cli(capsys, "monte-carlo", "--p-db", "10",
                           "--trials", "2", "--restarts", "1")
    assert code == cli.EXIT_OK
    assert out.count("C_S=") == 2


def test_invalid_gains_exit_usage(capsys):
    code, _, err = run_cli(capsys, "solve", "--gains", "1.0,-2.0,3.0")
    assert code == cli.EXIT_USAGE
    assert "error" in err


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(["frobnicate"])
    assert exc.value.code == cli.EXIT_USAGE
