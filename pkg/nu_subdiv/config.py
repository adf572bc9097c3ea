from __future__ import annotations

import yaml
from collections.abc import Mapping
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any
from typing import Optional

_ORDER_NAMES = ("rho-len", "lex", "random")
_LENGTH_VARIANTS = ("span", "complement")
_BETA_MODES = ("full", "0")
_FORMATS = ("json", "dot", "text")


@dataclass
class ReductionConfig:
    """How polynomials are reduced."""

    order: str = "rho-len"  # rho-len, lex or random
    length_variant: str = "span"  # span: (j - i) mod n; complement: (i + n - j) mod n
    seed: Optional[int] = None  # required by the random order
    beta: str = "0"  # "0" drops the β branch, "full" keeps β-graded faces
    max_steps: int = 10_000  # upper bound on reduction steps


@dataclass
class GuardConfig:
    """Size guards on a + b; exceeding one raises unless ``force`` is set."""

    max_construct_size: int = 12  # graphs, polynomials, triangulations, tree enumeration
    max_verify_size: int = 8  # exhaustive certifications and sweeps
    max_enumeration_size: int = 24  # brute-force path enumeration
    force: bool = False  # run anyway, with a RuntimeWarning


@dataclass
class VerifyConfig:
    """Settings for geometric certification."""

    trials: int = 1000  # random rational probes per triangulation
    seed: int = 1  # seed for probes and for the random reduction orders
    random_orders: int = 5  # seeded random orders compared against ρ_len
    workers: int = 4  # threads for facet checks and sweeps


@dataclass
class OutputConfig:
    format: str = "text"  # json, dot or text


@dataclass
class Config:
    """Top-level configuration aggregating reduction, guard, verification and output settings."""

    reduction: ReductionConfig = field(default_factory=ReductionConfig)
    guards: GuardConfig = field(default_factory=GuardConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    output: OutputConfig = field(default_factory=OutputConfig)


@dataclass
class RunConfig:
    """One CLI invocation: the command, its path argument and the resolved config."""

    command: str
    path: str = ""
    config: Config = field(default_factory=Config)
    out: Optional[Path] = None


def load_config_from_dict(data: Mapping[str, Any] | None) -> Config:
    """Load config from an in-memory mapping using the same schema as YAML config files."""
    if data is None:
        return Config()
    if not isinstance(data, Mapping):
        raise TypeError("Config data must be a mapping (dict-like object).")

    # Copy to a plain dict so .get() behavior is predictable even for custom mappings.
    raw: dict[str, Any] = dict(data)
    return _build_config_from_mapping(raw)


def load_config(path: Optional[Path]) -> Config:
    """Load configuration from a YAML file, returning defaults if *path* is None or missing."""
    if path is None or not path.exists():
        return Config()

    with open(path, "r") as f:
        data = yaml.safe_load(f) or {}

    if not isinstance(data, dict):
        raise TypeError("Config YAML root must be a mapping/object.")

    return _build_config_from_mapping(data)


def _section(data: dict[str, Any], name: str, cls: type) -> Any:
    raw = data.get(name) or {}
    if not isinstance(raw, Mapping):
        raise TypeError(f"Config section '{name}' must be a mapping.")
    return cls(**{k: v for k, v in raw.items() if k in cls.__dataclass_fields__})


def _build_config_from_mapping(data: dict[str, Any]) -> Config:
    """Build Config from a parsed config mapping; unknown keys are ignored."""
    config = Config(
        reduction=_section(data, "reduction", ReductionConfig),
        guards=_section(data, "guards", GuardConfig),
        verify=_section(data, "verify", VerifyConfig),
        output=_section(data, "output", OutputConfig),
    )
    # YAML reads a bare 0 as an integer
    config.reduction.beta = str(config.reduction.beta)
    validate_config(config)
    return config


def merge_cli_overrides(config: Config, **overrides: Any) -> Config:
    """Return a copy of *config* with CLI flags applied; ``None`` values are skipped.

    Keys are field names of any sub-config (``order``, ``seed``, ``trials``,
    ``format``, ``force``, …).
    """
    sections = {
        "reduction": config.reduction,
        "guards": config.guards,
        "verify": config.verify,
        "output": config.output,
    }
    updated = {}
    for section_name, section in sections.items():
        names = {f.name for f in fields(section)}
        changes = {k: v for k, v in overrides.items() if k in names and v is not None}
        updated[section_name] = replace(section, **changes)
    merged = Config(**updated)
    validate_config(merged)
    return merged


def validate_config(config: Config) -> None:
    """Raise ``ValueError`` naming the first invalid field."""
    reduction = config.reduction
    if reduction.order not in _ORDER_NAMES:
        raise ValueError(
            f"reduction.order must be one of {list(_ORDER_NAMES)}, got '{reduction.order}'"
        )
    if reduction.length_variant not in _LENGTH_VARIANTS:
        raise ValueError(
            f"reduction.length_variant must be one of {list(_LENGTH_VARIANTS)}, "
            f"got '{reduction.length_variant}'"
        )
    if reduction.beta not in _BETA_MODES:
        raise ValueError(f"reduction.beta must be one of {list(_BETA_MODES)}, got '{reduction.beta}'")
    if reduction.order == "random" and reduction.seed is None:
        raise ValueError("reduction.seed is required for the random order")
    if reduction.max_steps < 1:
        raise ValueError("reduction.max_steps must be positive")
    if config.verify.trials < 0 or config.verify.random_orders < 0:
        raise ValueError("verify.trials and verify.random_orders must be nonnegative")
    if config.verify.workers < 1:
        raise ValueError("verify.workers must be at least 1")
    if config.output.format not in _FORMATS:
        raise ValueError(f"output.format must be one of {list(_FORMATS)}, got '{config.output.format}'")
