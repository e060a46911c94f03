"""Config parsing and the command-line entry points."""

import pytest

from ssp_seir.cli import main
from ssp_seir.config import DEFAULT_CONFIG_TEXT, ConfigError, load_config, parse_config


def test_default_config_values():
    cfg = parse_config(DEFAULT_CONFIG_TEXT)
    assert cfg.mu == 0.05
    assert cfg.sigma == 0.25
    assert cfg.gamma == 0.1867
    assert cfg.delta == 0.011
    assert cfg.incidence == "media"
    assert cfg.recruitments == ("choiceA", "choiceB", "choiceC")
    assert cfg.methods == ("euler", "ssprk22", "ssprk33", "ssprk104")
    assert (cfg.s0, cfg.e0, cfg.i0, cfg.r0) == (0.2, 0.6, 0.2, 0.0)
    assert cfg.tf == 1000.0


def test_config_setup_assembly():
    cfg = parse_config(DEFAULT_CONFIG_TEXT)
    setup = cfg.setup("choiceB")
    assert setup.incidence.key == "media"
    assert setup.recruitment.key == "choiceB"
    assert setup.x0.total == pytest.approx(1.0)


def test_config_rejects_unknown_key():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config(DEFAULT_CONFIG_TEXT + "bogus=1\n")


def test_config_rejects_duplicate_key():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config(DEFAULT_CONFIG_TEXT + "mu=0.1\n")


def test_config_requires_all_keys():
    with pytest.raises(ConfigError, match="missing keys"):
        parse_config("mu=0.05\n")


def test_config_rejects_bad_number():
    with pytest.raises(ConfigError, match="not a number"):
        parse_config(DEFAULT_CONFIG_TEXT.replace("mu=0.05", "mu=abc"))


def test_config_rejects_bad_line():
    with pytest.raises(ConfigError, match="key=value"):
        parse_config("mu 0.05\n")


def test_config_comments_and_blank_lines_ignored():
    text = "# leading comment\n\n" + DEFAULT_CONFIG_TEXT + "\n# trailing\n"
    assert parse_config(text) == parse_config(DEFAULT_CONFIG_TEXT)


def test_load_config_from_file(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text(DEFAULT_CONFIG_TEXT.replace("tf=1000.0", "tf=30.0"))
    assert load_config(path).tf == 30.0
    assert load_config(None).tf == 1000.0


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def test_cli_default_config_round_trips(capsys):
    assert main(["default-config"]) == 0
    printed = capsys.readouterr().out
    assert parse_config(printed) == parse_config(DEFAULT_CONFIG_TEXT)


def test_cli_simulate_writes_outputs(tmp_path, capsys):
    code = main([
        "--out", str(tmp_path), "simulate",
        "--method", "ssprk22", "--tau", "3.3", "--tf", "30", "--strict",
    ])
    assert code == 0
    assert "non-negativity: PASS" in capsys.readouterr().out
    lines = (tmp_path / "trajectory.csv").read_text().strip().splitlines()
    assert lines[0] == "t,S,E,I,R,N"
    # header, then ceil(30/3.3) = 10 steps plus the initial state
    assert len(lines) == 12
    assert "PASS" in (tmp_path / "verdict.txt").read_text()


def test_cli_simulate_strict_failure_exit_code(tmp_path, capsys):
    code = main([
        "--out", str(tmp_path), "simulate",
        "--method", "ssprk22", "--tau", "4.8", "--tf", "30", "--strict",
    ])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_simulate_deterministic_bytes(tmp_path):
    args = ["simulate", "--method", "euler", "--tau", "2.0", "--tf", "40"]
    main(["--out", str(tmp_path / "a")] + args)
    main(["--out", str(tmp_path / "b")] + args)
    assert (tmp_path / "a" / "trajectory.csv").read_bytes() == (
        tmp_path / "b" / "trajectory.csv"
    ).read_bytes()


def test_cli_counterexample(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "counterexample"]) == 0
    out = capsys.readouterr().out
    assert "4/3" in out and "2/3" in out
    assert (tmp_path / "counterexample.csv").exists()


def test_cli_check_small_sweep(capsys):
    assert main(["check", "--configs", "5"]) == 0
    assert "all guarantees held" in capsys.readouterr().out


def test_cli_unknown_method_is_reported(tmp_path, capsys):
    code = main([
        "--out", str(tmp_path), "simulate", "--method", "rk99", "--tau", "1.0",
    ])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_cli_bad_config_file(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense\n")
    code = main(["--config", str(bad), "default-config"])
    # default-config ignores the config, so use a real command instead
    code = main(["--config", str(bad), "counterexample"])
    assert code == 2
    assert "error" in capsys.readouterr().err
