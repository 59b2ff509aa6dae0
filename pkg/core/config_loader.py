import os, json, logging, yaml
from typing import Optional, Tuple
from dotenv import load_dotenv

load_dotenv()  # optional overrides from .env

# Calculate project root once
_PROJECT_ROOT = os.path.dirname(os.path.dirname(__file__))
_DEFAULT_CFG  = os.path.join(_PROJECT_ROOT, "config.yaml")

ENV_KEYS = ("VIRASORO_LOG_LEVEL", "VIRASORO_LOG_FILE", "VIRASORO_SEED")
CONFIG_SECTIONS = ("logging", "profile", "scan_profile", "parity_profile", "suite")

DEFAULT_LOG_FILE  = "virasoro_checks.log"
DEFAULT_LOG_LEVEL = "INFO"


def load_env() -> dict:
    """VIRASORO_* overrides; unset and empty variables are left out."""
    return {key: os.getenv(key) for key in ENV_KEYS if os.getenv(key)}


def load_config(file_path: Optional[str] = None) -> dict:
    """
    Load YAML or JSON config. If no path is given, default to
    project_root/config.yaml. An empty file yields an empty dict.
    """
    path = file_path or _DEFAULT_CFG
    if not os.path.exists(path):
        raise FileNotFoundError(f"Config file not found at {path}")
    with open(path, "r", encoding="utf-8") as f:
        if path.endswith((".yaml", ".yml")):
            cfg = yaml.safe_load(f) or {}
        elif path.endswith(".json"):
            cfg = json.load(f)
        else:
            raise ValueError("Unsupported config type (must be .yaml/.json)")
    if not isinstance(cfg, dict):
        raise ValueError(f"Config at {path} must be a mapping of sections")
    unknown = sorted(set(cfg) - set(CONFIG_SECTIONS))
    if unknown:
        logging.warning(f"Ignoring unknown config section(s): {', '.join(unknown)}")
    return cfg


def logging_settings(cfg: dict, env: dict) -> Tuple[str, int]:
    """Log file and numeric level: environment first, then the logging section."""
    section = cfg.get("logging", {}) or {}
    filename = env.get("VIRASORO_LOG_FILE") or section.get("file", DEFAULT_LOG_FILE)
    name = str(env.get("VIRASORO_LOG_LEVEL") or section.get("level", DEFAULT_LOG_LEVEL)).upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        level = logging.INFO
    return filename, level


def env_seed(env: dict) -> Optional[int]:
    text = env.get("VIRASORO_SEED")
    if not text:
        return None
    try:
        return int(text)
    except ValueError as e:
        raise ValueError(f"VIRASORO_SEED must be an integer, got {text!r}") from e
