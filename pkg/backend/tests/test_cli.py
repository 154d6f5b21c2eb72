import json

import pytest
from typer.testing import CliRunner

from app.api import commands
from app.api.commands import RunConfig, parse_config, run
from app.config.settings import RuntimeSettings
from app.main import app
from app.services.common import ConfigError

SETTINGS = RuntimeSettings(workers=1, log_level="WARNING", progress=False)


# ─────────────────────────────────────────────
# 설정 검증

def test_empty_document_uses_defaults():
    config = parse_config("{}")
    assert config.dt == 3e-3
    assert config.extinction_threshold == 1e-7
    assert config.horizon is None
    assert config.magnitudes() == (2.0, 2.0, 2.0)


def test_low_extinction_threshold_is_accepted():
    assert parse_config('{"extinction_threshold": 1e-70}').extinction_threshold == 1e-70


def test_negative_step_is_rejected():
    with pytest.raises(ConfigError, match="dt: dt must be positive"):
        parse_config('{"dt": -1}')


def test_unknown_key_is_rejected():
    with pytest.raises(ConfigError, match="bogus"):
        parse_config('{"bogus": 1}')


def test_malformed_json_is_rejected():
    with pytest.raises(ConfigError, match="malformed JSON"):
        parse_config('{"dt": ')
    with pytest.raises(ConfigError, match="expected a JSON object"):
        parse_config("[1, 2]")


def test_overrides_win_over_document():
    config = parse_config('{"beta": -3, "omega": 0.5}', {"beta": -7.0, "omega": None})
    assert config.beta == -7.0
    assert config.omega == 0.5


def test_nested_integrator_settings_are_checked():
    with pytest.raises(ConfigError, match="max_samples"):
        parse_config('{"max_samples": 4}')


def test_axis_domain_is_checked():
    with pytest.raises(ConfigError, match="beta_axis"):
        parse_config('{"beta_axis": {"lo": 0, "hi": -1, "count": 3}}')


def test_distinct_magnitudes():
    config = parse_config('{"alpha": 1.5, "alpha_ab": 3.0}')
    assert config.magnitudes() == (3.0, 1.5, 1.5)
    assert config.build_spec().alpha[0, 1] == 3.0


# ─────────────────────────────────────────────
# 명령 실행

def _run(command, tmp_path, name, **fields):
    config = RunConfig(out=str(tmp_path / name), **fields)
    return run(command, config, SETTINGS), tmp_path / name


def test_bifurcation_command_and_replay(tmp_path):
    status, out = _run("bifurcation", tmp_path, "first", alpha=2.0)
    assert status == 0
    record = json.loads((out / "bifurcation.json").read_text(encoding="utf-8"))
    assert record["beta_star"] == pytest.approx(-9.0, abs=1e-8)

    manifest = (out / "manifest.json").read_text(encoding="utf-8")
    assert json.loads(manifest)["command"] == "bifurcation"
    replay = parse_config(manifest, {"out": str(tmp_path / "second")})
    assert run("bifurcation", replay, SETTINGS) == 0
    assert (tmp_path / "second" / "bifurcation.json").read_bytes() == (out / "bifurcation.json").read_bytes()


def test_simulate_command_replays_byte_identically(tmp_path):
    status, out = _run("simulate", tmp_path, "first", beta=-3.0, horizon=30.0)
    assert status == 0
    outcome = json.loads((out / "outcome.json").read_text(encoding="utf-8"))
    assert outcome["termination"] == "horizon"
    assert outcome["survivors"] == 3

    replay = parse_config((out / "manifest.json").read_text(encoding="utf-8"), {"out": str(tmp_path / "second")})
    assert run("simulate", replay, SETTINGS) == 0
    for name in ("trajectory.csv", "outcome.json"):
        assert (tmp_path / "second" / name).read_bytes() == (out / name).read_bytes()


def test_equilibrium_command(tmp_path):
    status, out = _run("equilibrium", tmp_path, "eq", alpha=1.0, hoi_kind="asym-ab", beta=-2.0)
    assert status == 0
    record = json.loads((out / "equilibrium.json").read_text(encoding="utf-8"))
    assert record["n"] == pytest.approx([0.5, 1.0, 0.5], abs=1e-8)
    assert record["m"] == pytest.approx([0.0], abs=1e-8)
    assert record["regimes"] == ["nullified"]
    assert len(record["eigenvalues"]) == 4


def test_numerical_failure_exit_code(tmp_path):
    status, out = _run("bifurcation", tmp_path, "bad", alpha=-1.0)
    assert status == 2
    assert not (out / "manifest.json").exists()


def test_unknown_command_exit_code(tmp_path):
    status, _ = _run("plot", tmp_path, "plot")
    assert status == 1


def test_unwritable_output_exit_code(tmp_path):
    (tmp_path / "blocker").write_text("", encoding="utf-8")
    status, _ = _run("bifurcation", tmp_path, "blocker/run", alpha=2.0)
    assert status == 1


def test_unexpected_failure_exit_code(tmp_path, monkeypatch):
    def broken(config, out, workers, progress):
        raise RuntimeError("handler crashed")

    monkeypatch.setitem(commands._HANDLERS, "bifurcation", broken)
    status, out = _run("bifurcation", tmp_path, "crash", alpha=2.0)
    assert status == 2
    assert not (out / "manifest.json").exists()


# ─────────────────────────────────────────────
# 실행 환경 / 터미널

def test_runtime_settings_from_environment(monkeypatch):
    monkeypatch.setenv("HOI_WORKERS", "3")
    settings = RuntimeSettings()
    assert settings.resolved_workers() == 3
    assert settings.resolved_workers(2) == 2


def test_cli_bifurcation(tmp_path):
    result = CliRunner().invoke(app, ["--log-level", "WARNING", "bifurcation", "--alpha", "2", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "bifurcation.json").exists()
    assert (tmp_path / "manifest.json").exists()


def test_cli_rejects_invalid_step(tmp_path):
    result = CliRunner().invoke(app, ["simulate", "--dt", "-1", "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "dt must be positive" in result.output


def test_cli_reads_config_file(tmp_path):
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"alpha": 1.5}), encoding="utf-8")
    result = CliRunner().invoke(app, ["bifurcation", "--config", str(config_path), "--out", str(tmp_path / "out")])
    assert result.exit_code == 0, result.output
    record = json.loads((tmp_path / "out" / "bifurcation.json").read_text(encoding="utf-8"))
    assert record["beta_star"] == pytest.approx(-5.5, abs=1e-8)
