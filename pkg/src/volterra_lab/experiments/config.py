"""Run configuration: flat key = value text with # comments.

A config file fully determines a run. Values stay strings until a
command asks for them with a typed getter, so unknown keys are only an
error where a command would silently ignore a typo otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from ..arith.rational import Rational, rat
from ..arith.simplex import SimplexPoint, make_simplex
from ..arith.verdict import EscalationPolicy
from ..errors import BadConfig

_RESERVED = ("seed", "backend", "precision_start", "precision_cap", "out")

COMMANDS = ("orbit", "plot", "verify-props", "rpt", "sixpoints", "theorem-demo")


def parse_kv(text: str) -> Dict[str, str]:
    """Parse flat key = value lines; # starts a comment, blank lines skipped."""
    out: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadConfig(f"line {lineno}: expected key = value, got {raw!r}")
        key, val = line.split("=", 1)
        key = key.strip()
        val = val.strip()
        if not key:
            raise BadConfig(f"line {lineno}: empty key")
        if key in out:
            raise BadConfig(f"line {lineno}: duplicate key {key!r}")
        out[key] = val
    return out


@dataclass
class RunConfig:
    """Everything a subcommand needs; identical configs give identical outputs."""

    command: str
    params: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    backend: str = "interval"
    precision_start: int = 128
    precision_cap: int = 1 << 20
    out_dir: str = "out"

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise BadConfig(f"unknown command {self.command!r}")
        if self.backend not in ("exact", "interval"):
            raise BadConfig(f"backend must be exact or interval, got {self.backend!r}")
        if self.precision_start < 4 or self.precision_cap < self.precision_start:
            raise BadConfig("precision ladder must satisfy 4 <= start <= cap")

    def policy(self) -> EscalationPolicy:
        return EscalationPolicy(start_bits=self.precision_start,
                                cap_bits=self.precision_cap)

    # -- typed getters over params -------------------------------------

    def get_str(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.params.get(key, default)

    def get_int(self, key: str, default: int) -> int:
        raw = self.params.get(key)
        if raw is None:
            return default
        try:
            return int(raw, 0)
        except ValueError:
            raise BadConfig(f"{key}: expected an integer, got {raw!r}")

    def get_rat(self, key: str, default) -> Rational:
        raw = self.params.get(key)
        if raw is None:
            return rat(default)
        try:
            return rat(raw)
        except (ValueError, ZeroDivisionError):
            raise BadConfig(f"{key}: expected a rational like 3/10 or 0.3, got {raw!r}")

    def get_bool(self, key: str, default: bool) -> bool:
        raw = self.params.get(key)
        if raw is None:
            return default
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise BadConfig(f"{key}: expected a boolean, got {raw!r}")

    def get_point(self, key: str, default: Sequence[str]) -> SimplexPoint:
        raw = self.params.get(key)
        parts = [s for s in raw.replace(",", " ").split()] if raw is not None else list(default)
        try:
            return make_simplex([rat(s) for s in parts])
        except Exception as e:
            raise BadConfig(f"{key}: not a simplex point ({e})")

    def get_rat_list(self, key: str, default: Sequence[str]):
        raw = self.params.get(key)
        parts = [s for s in raw.replace(",", " ").split()] if raw is not None else list(default)
        try:
            return tuple(rat(s) for s in parts)
        except (ValueError, ZeroDivisionError):
            raise BadConfig(f"{key}: expected rationals, got {raw!r}")


def load_config(
    command: str,
    path: Optional[str] = None,
    seed: Optional[int] = None,
    backend: Optional[str] = None,
    precision_start: Optional[int] = None,
    precision_cap: Optional[int] = None,
    out_dir: Optional[str] = None,
) -> RunConfig:
    """Read a config file and apply command-line overrides on top of it."""
    params: Dict[str, str] = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                params = parse_kv(fh.read())
        except OSError as e:
            raise BadConfig(f"cannot read config {path}: {e}")

    def picked(flag, key, fallback, cast):
        raw = params.pop(key, None)
        if flag is not None:
            return flag
        if raw is not None:
            try:
                return cast(raw)
            except ValueError:
                raise BadConfig(f"{key}: bad value {raw!r}")
        return fallback

    seed = picked(seed, "seed", 0, lambda s: int(s, 0))
    backend = picked(backend, "backend", "interval", str)
    pstart = picked(precision_start, "precision_start", 128, lambda s: int(s, 0))
    pcap = picked(precision_cap, "precision_cap", 1 << 20, lambda s: int(s, 0))
    out = picked(out_dir, "out", "out", str)
    return RunConfig(command=command, params=params, seed=seed, backend=backend,
                     precision_start=pstart, precision_cap=pcap, out_dir=out)
