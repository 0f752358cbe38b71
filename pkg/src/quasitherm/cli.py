"""Command-line interface.

Subcommands:
  sweep <config.json> [--out file.csv]     q-sweep, CSV to stdout or file
  crossings <config.json> --target r1|tau1 refined q values where r or the
                                           inverse quasitemperature crosses 1
  mode-dump <config.json> --q <value>      Floquet-mode JSON at one q
  validate                                 run the invariant suite

Exit codes: 0 success, 1 configuration error, 2 internal invariant failure.
Every configuration field can be overridden with --set key=value (dotted
paths reach into nested objects, values are parsed as JSON when possible).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, InvariantViolation, QuasithermError
from .hill import SpringParams
from .modes import solve_mode
from .sweep import SweepConfig, locate_crossings, rows_to_csv, run_sweep
from . import validate as validate_mod

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INVARIANT = 2


def _apply_override(config: dict, assignment: str) -> None:
    if "=" not in assignment:
        raise ConfigError(f"--set expects key=value (got {assignment!r})")
    path, raw_value = assignment.split("=", 1)
    try:
        value = json.loads(raw_value)
    except json.JSONDecodeError:
        value = raw_value
    keys = path.split(".")
    node = config
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigError(f"cannot descend into {key!r} in {path!r}")
    node[keys[-1]] = value


def _load_config(path: str, overrides: list[str]) -> SweepConfig:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path!r}: {exc}") from exc
    for assignment in overrides:
        _apply_override(raw, assignment)
    return SweepConfig.from_dict(raw)


def _cmd_sweep(args) -> int:
    config = _load_config(args.config, args.set)
    text = rows_to_csv(run_sweep(config), config)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_crossings(args) -> int:
    config = _load_config(args.config, args.set)
    for q in locate_crossings(config, args.target):
        print(f"{q:.12g}")
    return EXIT_OK


def _cmd_mode_dump(args) -> int:
    config = _load_config(args.config, args.set)
    params = SpringParams(config.a, args.q)
    _, _, mode = solve_mode(params, n_samples=config.n_samples)
    payload = {
        "nu_over_omega": mode.nu,
        "coefficients": [[int(l), float(c.real), float(c.imag)]
                         for l, c in zip(mode.ells, mode.coefficients)],
        "tail_mass": mode.tail_mass,
    }
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_validate(_args) -> int:
    results = validate_mod.run_all()
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        failed += 0 if result.passed else 1
        print(f"{status} {result.name}: {result.detail}")
    if failed:
        print(f"{failed}/{len(results)} checks failed")
        return EXIT_INVARIANT
    print(f"all {len(results)} checks passed")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for invariant failures; usage errors are config errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="quasitherm",
        description="Quasistationary Floquet-state thermodynamics of the "
                    "parametrically driven oscillator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="evaluate a q-sweep, emit CSV")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--out", help="output file (default stdout)")
    p_sweep.add_argument("--set", action="append", default=[],
                         metavar="KEY=VALUE", help="override a config field")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_cross = sub.add_parser("crossings",
                             help="locate r = 1 or inverse-quasitemperature = 1")
    p_cross.add_argument("config")
    p_cross.add_argument("--target", required=True, choices=("r1", "tau1"))
    p_cross.add_argument("--set", action="append", default=[],
                         metavar="KEY=VALUE")
    p_cross.set_defaults(func=_cmd_crossings)

    p_dump = sub.add_parser("mode-dump", help="dump one Floquet mode as JSON")
    p_dump.add_argument("config")
    p_dump.add_argument("--q", type=float, required=True)
    p_dump.add_argument("--set", action="append", default=[],
                        metavar="KEY=VALUE")
    p_dump.set_defaults(func=_cmd_mode_dump)

    p_val = sub.add_parser("validate", help="run the invariant suite")
    p_val.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except QuasithermError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
