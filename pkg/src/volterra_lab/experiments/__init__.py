"""Experiment drivers behind the command-line interface."""

from .config import RunConfig, load_config, parse_kv
from .runners import (
    cmd_orbit,
    cmd_rpt,
    cmd_sixpoints,
    cmd_theorem_demo,
    cmd_verify_props,
)

__all__ = [
    "RunConfig", "load_config", "parse_kv",
    "cmd_orbit", "cmd_rpt", "cmd_sixpoints", "cmd_theorem_demo", "cmd_verify_props",
]
