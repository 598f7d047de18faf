"""Experiment configuration files: INI-style sections, strict validation.

Unknown sections and keys are rejected; every probability and range is
checked at parse time. The digest of the canonicalized effective values (all
defaults applied) is recorded in every produced artifact.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

from .errors import ConfigError
from .lab.report import digest_of


def _prob(value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"probability must be in [0, 1], got {value}")


def _positive(value) -> None:
    if value < 1:
        raise ConfigError(f"value must be >= 1, got {value}")


def _fraction(value: float) -> None:
    if not 0.0 < value <= 1.0:
        raise ConfigError(f"fraction must be in (0, 1], got {value}")


def _nonneg(value: float) -> None:
    if value < 0:
        raise ConfigError(f"value must be >= 0, got {value}")


def _unit_interval_open(value: float) -> None:
    if not 0.0 <= value < 1.0:
        raise ConfigError(f"value must be in [0, 1), got {value}")


def _choice(*options):
    def check(value):
        if value not in options:
            raise ConfigError(f"must be one of {options}, got {value!r}")

    return check


def _any(_value) -> None:
    return None


# key -> (type, default, validator); default None means the key is required
_SCHEMAS: dict[str, dict[str, tuple]] = {
    "ea-run": {
        "representation": (str, "bits", _choice("bits")),
        "genome-length": (int, 16, _positive),
        "population-size": (int, 20, _positive),
        "fitness": (str, "onemax", _choice("onemax", "leading-ones")),
        "selection": (str, "truncation", _choice("truncation", "proportional", "tournament")),
        "keep-fraction": (float, 0.5, _fraction),
        "tournament-size": (int, 2, _positive),
        "elitist": (bool, True, _any),
        "flip-probability": (float, 1.0 / 16.0, _prob),
        "crossover-probability": (float, 0.0, _prob),
        "max-generations": (int, None, _positive),
        "target-fitness": (float, -1.0, _any),  # < 0 means "stop at known optimum"
        "seed": (int, 0, _any),
        "out": (str, "trace.csv", _any),
    },
    "convergence": {
        "genome-length": (int, 16, _positive),
        "population-size": (int, 20, _positive),
        "flip-probability": (float, 1.0 / 16.0, _prob),
        "keep-fraction": (float, 0.5, _fraction),
        "elitist-replicates": (int, 50, _positive),
        "nonelitist-replicates": (int, 100, _positive),
        "max-generations": (int, 2000, _positive),
        "base-seed": (int, 1000, _any),
    },
    "nfl": {
        "domain-size": (int, 4, _positive),
        "codomain-size": (int, 2, _positive),
        "shuffle-seed": (int, 97, _any),
    },
    "schema": {
        "pattern": (str, "1#########", _any),
        "genome-length": (int, 10, _positive),
        "population-size": (int, 200, _positive),
        "crossover-probability": (float, 0.6, _prob),
        "mutation-probability": (float, 0.01, _prob),
        "transitions": (int, 1000, _positive),
        "seed": (int, 202, _any),
    },
    "esrate": {
        "dimension": (int, 5, _positive),
        "iterations": (int, 2000, _positive),
        "sigma0": (float, 1.0, _any),
        "seed-count": (int, 50, _positive),
        "base-seed": (int, 3000, _any),
        "burn-in-fraction": (float, 0.1, _unit_interval_open),
        "min-r-squared": (float, 0.9, _prob),
        "min-passing": (int, 45, _positive),
        "window": (int, 10, _positive),
        "factor": (float, 0.82, _any),
        "sigma-floor": (float, 1e-12, _any),
    },
    "accept": {
        "efa": (str, "anbn", _any),
        "word": (str, "", _any),
        "levels": (int, 10, _positive),
        "steps": (int, 10_000, _positive),
        "seed": (int, 0, _any),
        "retarget-probability": (float, 0.3, _prob),
        "flip-accept-probability": (float, 0.15, _prob),
        "add-state-probability": (float, 0.1, _prob),
        "delete-state-probability": (float, 0.1, _prob),
    },
}

_BOOL_STATES = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


@dataclass(frozen=True)
class ExperimentConfig:
    """One validated section with all defaults applied."""

    kind: str
    values: dict
    digest: str

    def __getitem__(self, key: str):
        return self.values[key]


def _convert(kind: str, key: str, raw: str, target_type):
    try:
        if target_type is bool:
            state = raw.strip().lower()
            if state not in _BOOL_STATES:
                raise ValueError(raw)
            return _BOOL_STATES[state]
        return target_type(raw)
    except ValueError:
        raise ConfigError(
            f"[{kind}] {key}: cannot parse {raw!r} as {target_type.__name__}"
        ) from None


def _finalize(kind: str, provided: dict) -> ExperimentConfig:
    schema = _SCHEMAS[kind]
    values = {}
    for key, (_type, default, validator) in schema.items():
        if key in provided:
            value = provided[key]
        elif default is None:
            raise ConfigError(f"[{kind}] missing required key {key!r}")
        else:
            value = default
        try:
            validator(value)
        except ConfigError as exc:
            raise ConfigError(f"[{kind}] {key}: {exc}") from None
        values[key] = value
    _cross_validate(kind, values)
    digest = digest_of({f"{kind}.{key}": value for key, value in values.items()})
    return ExperimentConfig(kind, values, digest)


def _cross_validate(kind: str, values: dict) -> None:
    if kind == "schema":
        if len(values["pattern"]) != values["genome-length"]:
            raise ConfigError(
                f"[schema] pattern length {len(values['pattern'])} "
                f"!= genome-length {values['genome-length']}"
            )
        Schema_chars = set(values["pattern"]) - set("01#")
        if Schema_chars:
            raise ConfigError(f"[schema] pattern may only contain 0, 1, #")
    if kind == "nfl":
        if values["domain-size"] > 6:
            raise ConfigError("[nfl] domain-size must be <= 6")
        if values["codomain-size"] > 3:
            raise ConfigError("[nfl] codomain-size must be <= 3")
    if kind == "esrate" and not 0.0 < values["factor"] < 1.0:
        raise ConfigError("[esrate] factor must be in (0, 1)")


def default_config(kind: str) -> ExperimentConfig:
    if kind not in _SCHEMAS:
        raise ConfigError(f"unknown experiment kind {kind!r}")
    return _finalize(kind, {})


def parse_config(text: str) -> dict[str, ExperimentConfig]:
    """Parse the sections of a config file; returns kind -> validated config."""
    parser = configparser.ConfigParser(
        interpolation=None, delimiters=("=",), inline_comment_prefixes=("#",)
    )
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from None
    configs = {}
    for section in parser.sections():
        if section not in _SCHEMAS:
            raise ConfigError(f"unknown config section [{section}]")
        schema = _SCHEMAS[section]
        provided = {}
        for key, raw in parser.items(section):
            if key not in schema:
                raise ConfigError(f"[{section}] unknown key {key!r}")
            provided[key] = _convert(section, key, raw, schema[key][0])
        configs[section] = _finalize(section, provided)
    return configs


def load_config(path) -> dict[str, ExperimentConfig]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_config(handle.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
