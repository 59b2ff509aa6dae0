# profiles.py

import logging
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.config_loader import env_seed, load_config, load_env
from core.scalars import parse_scalar

# ─── Named checks understood by the suite ─────────────────────────────────────
CHECK_NAMES = (
    "bracket-laws",
    "module-axiom",
    "socle",
    "oracle-cm",
    "oracle-level1",
    "duality",
    "shift-identities",
    "extraction",
    "filtration",
    "lprime",
    "parity",
    "simplicity-evidence",
    "descent",
    "isomorphism",
    "probes",
    "classify-e",
)


# older check names, accepted on input
CHECK_ALIASES = {"oracle-example3": "oracle-level1"}


class TruncationProfile(BaseModel):
    """
    Desk-scale truncation of a loop module.

    dmax bounds the d_{-1}-exponent, bmax the total exponent of d_0 .. d_{r-1},
    window the loop indices, fuel the number of closure rounds and kmax the
    largest |k| of a generator d_k used by closure scans.
    """
    model_config = ConfigDict(frozen=True)

    dmax: int = Field(3, ge=0)
    bmax: int = Field(2, ge=0)
    window: Tuple[int, int] = (-3, 3)
    fuel: int = Field(4, ge=0)
    kmax: int = Field(3, ge=0)

    @field_validator("window")
    @classmethod
    def _window_ordered(cls, window):
        lo, hi = window
        if lo > hi:
            raise ValueError(f"window lower end {lo} exceeds upper end {hi}")
        return window

    def indices(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def in_window(self, n: int) -> bool:
        return self.window[0] <= n <= self.window[1]


PARITY_DEFAULTS = TruncationProfile(dmax=5, bmax=0, window=(-5, 5))


def _exact_literal(text: str) -> str:
    text = str(text).strip()
    parse_scalar(text)  # raises GrammarError (a ValueError) on decimals or junk
    return text


class SuiteConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    checks: List[str] = Field(default_factory=lambda: ["all"])
    seed: int = 2013
    samples: int = Field(2, ge=1)
    timings: bool = False
    output: Optional[str] = None
    lambdas: List[str] = Field(default_factory=lambda: ["2", "-1", "1/2", "i"])
    ab_pairs: List[Tuple[str, str]] = Field(default_factory=lambda: [("0", "0"), ("1/3", "1"), ("0", "2")])
    specs: List[str] = Field(default_factory=lambda: ["vac(r=0; 1)", "vac(r=0; -1)", "vac(r=1; 1, 1)", "vac(r=1; 0, 1)"])
    profile: TruncationProfile = Field(default_factory=TruncationProfile)
    scan_profile: TruncationProfile = Field(default_factory=lambda: TruncationProfile(dmax=2, bmax=2))
    parity_bprimes: List[str] = Field(default_factory=lambda: ["1", "-2"])
    parity_profile: TruncationProfile = Field(default_factory=lambda: PARITY_DEFAULTS)

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, checks):
        checks = [CHECK_ALIASES.get(name, name) for name in checks]
        unknown = [name for name in checks if name != "all" and name not in CHECK_NAMES]
        if unknown:
            raise ValueError(f"unknown check name(s): {', '.join(unknown)}")
        return checks

    @field_validator("lambdas")
    @classmethod
    def _nonzero_lambdas(cls, lambdas):
        lambdas = [_exact_literal(text) for text in lambdas]
        for text in lambdas:
            if not parse_scalar(text):
                raise ValueError("lambda must be nonzero")
        return lambdas

    @field_validator("parity_bprimes")
    @classmethod
    def _nonzero_bprimes(cls, bprimes):
        bprimes = [_exact_literal(text) for text in bprimes]
        for text in bprimes:
            if not parse_scalar(text):
                raise ValueError("parity splitting needs a nonzero highest weight b'")
        return bprimes

    @field_validator("ab_pairs")
    @classmethod
    def _exact_pairs(cls, pairs):
        return [(_exact_literal(a), _exact_literal(b)) for a, b in pairs]

    @model_validator(mode="after")
    def _specs_parse(self):
        # local import: grammar depends on profiles for profile literals
        from core.grammar import parse_spec
        for text in self.specs:
            parse_spec(text)
        return self

    def selected_checks(self) -> List[str]:
        if "all" in self.checks:
            return list(CHECK_NAMES)
        return [name for name in CHECK_NAMES if name in self.checks]


def _profile_from(section: dict, fallback: TruncationProfile) -> TruncationProfile:
    values = fallback.model_dump()
    values.update({k: v for k, v in (section or {}).items() if k in values})
    if isinstance(values.get("window"), list):
        values["window"] = tuple(values["window"])
    return TruncationProfile(**values)


def suite_from_config(cfg: dict, env: Optional[dict] = None) -> SuiteConfig:
    """Build a SuiteConfig from a loaded config dict; VIRASORO_SEED overrides the file seed."""
    env = env or {}
    section = dict(cfg.get("suite", {}) or {})
    section["profile"] = _profile_from(cfg.get("profile"), TruncationProfile())
    section["scan_profile"] = _profile_from(cfg.get("scan_profile"), TruncationProfile(dmax=2, bmax=2))
    section["parity_profile"] = _profile_from(cfg.get("parity_profile"), PARITY_DEFAULTS)
    seed = env_seed(env)
    if seed is not None:
        section["seed"] = seed
    if "ab_pairs" in section:
        section["ab_pairs"] = [tuple(pair) for pair in section["ab_pairs"]]
    return SuiteConfig(**section)


# ─── Load defaults from config.yaml ───────────────────────────────────────────
try:
    _config = load_config()
except FileNotFoundError:
    logging.warning("config.yaml not found; using built-in profile defaults.")
    _config = {}

DEFAULT_PROFILE = _profile_from(_config.get("profile"), TruncationProfile())
SCAN_PROFILE    = _profile_from(_config.get("scan_profile"), TruncationProfile(dmax=2, bmax=2))


def default_suite() -> SuiteConfig:
    """Suite settings from config.yaml and .env (built on demand, spec literals are parsed)."""
    return suite_from_config(_config, load_env())
