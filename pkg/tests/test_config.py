import logging

import pytest
from pydantic import ValidationError

from core.config_loader import env_seed, load_config, load_env, logging_settings
from core.profiles import SuiteConfig, TruncationProfile, default_suite, suite_from_config


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "absent.yaml"))


def test_unsupported_config_type(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("seed = 1\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(str(path))


def test_yaml_and_json_configs(tmp_path):
    empty = tmp_path / "empty.yaml"
    empty.write_text("", encoding="utf-8")
    assert load_config(str(empty)) == {}
    js = tmp_path / "config.json"
    js.write_text('{"suite": {"seed": 3}}', encoding="utf-8")
    assert load_config(str(js)) == {"suite": {"seed": 3}}


def test_project_config_loads():
    cfg = load_config()
    assert cfg["logging"]["level"] == "INFO"
    assert default_suite().lambdas == cfg["suite"]["lambdas"]


def test_seed_override_from_environment():
    cfg = {"suite": {"seed": 5}}
    assert suite_from_config(cfg).seed == 5
    assert suite_from_config(cfg, {"VIRASORO_SEED": "9"}).seed == 9


def test_profile_sections():
    cfg = {"profile": {"dmax": 1, "window": [-2, 2]}, "scan_profile": {"kmax": 1}}
    suite = suite_from_config(cfg)
    assert suite.profile == TruncationProfile(dmax=1, window=(-2, 2))
    assert suite.scan_profile == TruncationProfile(dmax=2, bmax=2, kmax=1)


def test_profile_validation():
    with pytest.raises(ValidationError):
        TruncationProfile(window=(3, 1))
    with pytest.raises(ValidationError):
        TruncationProfile(dmax=-1)
    assert list(TruncationProfile(window=(-1, 1)).indices()) == [-1, 0, 1]


@pytest.mark.parametrize("field, value", [
    ("lambdas", ["0"]),
    ("lambdas", ["0.5"]),
    ("ab_pairs", [("1/3", "x")]),
    ("specs", ["vac(r=1; 0)"]),
    ("samples", 0),
])
def test_suite_config_validation(field, value):
    with pytest.raises(ValidationError):
        SuiteConfig(**{field: value})


def test_config_must_be_a_mapping(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ValueError, match="mapping"):
        load_config(str(path))


def test_logging_settings_precedence():
    cfg = {"logging": {"file": "from_config.log", "level": "warning"}}
    assert logging_settings(cfg, {}) == ("from_config.log", logging.WARNING)
    env = {"VIRASORO_LOG_FILE": "from_env.log", "VIRASORO_LOG_LEVEL": "debug"}
    assert logging_settings(cfg, env) == ("from_env.log", logging.DEBUG)
    assert logging_settings({}, {"VIRASORO_LOG_LEVEL": "chatty"}) == ("virasoro_checks.log", logging.INFO)


def test_load_env_skips_empty_values(monkeypatch):
    monkeypatch.setenv("VIRASORO_SEED", "")
    monkeypatch.setenv("VIRASORO_LOG_LEVEL", "DEBUG")
    env = load_env()
    assert "VIRASORO_SEED" not in env
    assert env["VIRASORO_LOG_LEVEL"] == "DEBUG"


def test_bad_seed_in_environment():
    assert env_seed({}) is None
    with pytest.raises(ValueError, match="VIRASORO_SEED"):
        suite_from_config({}, {"VIRASORO_SEED": "twelve"})


def test_parity_settings():
    suite = suite_from_config({"parity_profile": {"dmax": 2}, "suite": {"parity_bprimes": ["-2"]}})
    assert suite.parity_profile == TruncationProfile(dmax=2, bmax=0, window=(-5, 5))
    assert suite.parity_bprimes == ["-2"]
    project = default_suite()
    assert project.parity_bprimes == ["1", "-2"]
    assert project.parity_profile.window == (-5, 5)
