"""Experiment configuration schema and the plain-text config file parser."""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Sequence

from .decision import CostMatrix, Priors
from .sprt import TargetRates

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "parse_overrides"]


class ConfigError(Exception):
    """Invalid configuration file or parameter combination."""


def _broadcast(value: float | Sequence[float], n: int, name: str) -> tuple[float, ...]:
    if isinstance(value, (int, float)):
        return (float(value),) * n
    out = tuple(float(v) for v in value)
    if len(out) != n:
        raise ConfigError(f"{name} needs exactly {n} values, got {len(out)}")
    return out


@dataclass(frozen=True)
class ExperimentConfig:
    """Network, peer, cost and sampling parameters for one experiment run.

    expertise and tau_p accept a scalar (applied to every node) or one value
    per node.
    """

    n_nodes: int = 10
    expertise: float | tuple[float, ...] = 0.5
    tau_p: float | tuple[float, ...] = 0.5
    difficulty: float = 0.5
    costs: CostMatrix = CostMatrix(false_alarm=1.0, miss=1.0)
    priors: Priors = Priors(no_intrusion=0.5, intrusion=0.5)
    targets: TargetRates = TargetRates(false_alarm_cap=0.1, detection_floor=0.95)
    lambda_f: float = 0.9
    lambda_d: float = 0.9
    replications: int = 100
    seed: int = 1
    trust_bootstrap_messages: int = 200

    def __post_init__(self) -> None:
        if self.n_nodes < 2:
            raise ConfigError("n_nodes must be at least 2")
        if self.replications < 1:
            raise ConfigError("replications must be at least 1")
        if self.trust_bootstrap_messages < 0:
            raise ConfigError("trust_bootstrap_messages must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not 0.0 <= self.difficulty <= 1.0:
            raise ConfigError("difficulty must lie in [0, 1]")
        for name in ("lambda_f", "lambda_d"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ConfigError(f"{name} must lie in (0, 1]")
        object.__setattr__(
            self, "expertise", _broadcast(self.expertise, self.n_nodes, "expertise")
        )
        object.__setattr__(
            self, "tau_p", _broadcast(self.tau_p, self.n_nodes, "tau_p")
        )
        for name in ("expertise", "tau_p"):
            for v in getattr(self, name):
                if not 0.0 <= v <= 1.0:
                    raise ConfigError(f"{name} values must lie in [0, 1]")


_SCALAR_INT = {"n_nodes", "replications", "seed", "trust_bootstrap_messages"}
_SCALAR_FLOAT = {"difficulty", "lambda_f", "lambda_d"}
_PER_NODE = {"expertise", "tau_p"}
_FIELD_NAMES = {f.name for f in fields(ExperimentConfig)}


def _parse_float_list(raw: str, key: str) -> list[float]:
    try:
        return [float(part.strip()) for part in raw.split(",")]
    except ValueError as exc:
        raise ConfigError(f"invalid number in {key!r}: {raw!r}") from exc


def _convert(key: str, raw: str):
    if key in _SCALAR_INT:
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"invalid integer for {key!r}: {raw!r}") from exc
    if key in _SCALAR_FLOAT:
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"invalid number for {key!r}: {raw!r}") from exc
    if key in _PER_NODE:
        values = _parse_float_list(raw, key)
        return values[0] if len(values) == 1 else tuple(values)
    if key == "costs":
        values = _parse_float_list(raw, key)
        if len(values) != 4:
            raise ConfigError(
                "costs needs 4 values: false_alarm,miss,true_alarm,true_clear"
            )
        try:
            return CostMatrix(*values)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if key == "priors":
        values = _parse_float_list(raw, key)
        if len(values) != 2:
            raise ConfigError("priors needs 2 values: no_intrusion,intrusion")
        try:
            return Priors(*values)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if key == "targets":
        values = _parse_float_list(raw, key)
        if len(values) != 2:
            raise ConfigError("targets needs 2 values: false_alarm_cap,detection_floor")
        try:
            return TargetRates(*values)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown configuration key {key!r}")


def parse_overrides(text: str) -> dict:
    """Parse `key = value` lines into a constructor-ready override dict.

    Blank lines and lines starting with # are skipped.  Unknown keys and
    malformed values are errors.
    """
    overrides: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _FIELD_NAMES:
            raise ConfigError(f"line {lineno}: unknown configuration key {key!r}")
        if not raw:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        overrides[key] = _convert(key, raw)
    return overrides


def load_config(path: str | None = None, **extra) -> ExperimentConfig:
    """Build a config from defaults, an optional file, and keyword overrides."""
    overrides: dict = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        overrides.update(parse_overrides(text))
    overrides.update({k: v for k, v in extra.items() if v is not None})
    try:
        return ExperimentConfig(**overrides)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
