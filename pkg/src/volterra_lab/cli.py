"""Command-line entry point.

Exit codes: 0 all checks passed, 1 a certified property violation,
2 a verdict stayed undecided at the precision cap, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .errors import BadConfig, UndecidedAtCap, VolterraLabError
from .experiments.config import COMMANDS, load_config
from .experiments.runners import (
    cmd_orbit,
    cmd_rpt,
    cmd_sixpoints,
    cmd_theorem_demo,
    cmd_verify_props,
)

_RUNNERS = {
    "orbit": cmd_orbit,
    "plot": cmd_orbit,
    "verify-props": cmd_verify_props,
    "rpt": cmd_rpt,
    "sixpoints": cmd_sixpoints,
    "theorem-demo": cmd_theorem_demo,
}

_EXIT = {"pass": 0, "violation": 1, "undecided": 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits with 2
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="volterra-lab",
                description="voting trees, quadratic operators, certified orbits")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="flat key = value file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--backend", choices=("exact", "interval"), default=None)
    p.add_argument("--precision-start", type=int, default=None, metavar="BITS")
    p.add_argument("--precision-cap", type=int, default=None, metavar="BITS")
    p.add_argument("--out", default=None, metavar="DIR")
    return p


def _summary(report: dict) -> str:
    cmd = report.get("command", "?")
    bits = [f"{cmd}: {report['status']}"]
    if cmd == "orbit":
        bits.append(f"steps={report['steps']} phi {report['phi_first']} -> {report['phi_last']}")
    elif cmd == "verify-props":
        bits.append(f"sweeps={len(report['sweeps'])} violations={report['violations']} "
                    f"undecided={report['undecided']}")
    elif cmd == "rpt":
        bits.append(f"n={report['n']} d={report['d']} tv={report['tv_decimal']}")
    elif cmd == "sixpoints":
        frac = report["covered_fraction"]
        bits.append(f"d0={report['d0']} covered={frac['num']}/{frac['den']}")
    elif cmd == "theorem-demo":
        bits.append(f"d0={report['d0']} meets={report['meets']}"
                    f" fraction={report['fraction_meeting']['decimal']}")
    if report.get("files"):
        bits.append("wrote " + ", ".join(report["files"]))
    return "  ".join(bits)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(
            command=args.command,
            path=args.config,
            seed=args.seed,
            backend=args.backend,
            precision_start=args.precision_start,
            precision_cap=args.precision_cap,
            out_dir=args.out,
        )
        if cfg.command == "plot":
            cfg.params.setdefault("svg", "true")
        report = _RUNNERS[cfg.command](cfg)
    except BadConfig as e:
        print(f"volterra-lab: config error: {e}", file=sys.stderr)
        return 3
    except UndecidedAtCap as e:
        print(f"volterra-lab: undecided at precision cap: {e}", file=sys.stderr)
        return 2
    except VolterraLabError as e:
        print(f"volterra-lab: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    print(_summary(report))
    return _EXIT[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
