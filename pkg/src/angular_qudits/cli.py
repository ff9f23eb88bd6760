"""Command-line front end for concurrence-vs-aperture sweeps.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 numerical
convergence failure on more than 10% of the emitted rows.

A flat key-value config file (``key = value`` per line, ``#`` comments)
may supply any flag; explicit flags override file values and unknown
keys are rejected.
"""

from __future__ import annotations

import argparse
import math
import sys

from .sweep import (
    PRESETS,
    SweepConfig,
    SweepConfigError,
    emit,
    run_config,
    run_preset,
)

USAGE_EXIT = 2
IO_EXIT = 3
CONVERGENCE_EXIT = 4

_FILE_KEYS = {
    "mode": str,
    "dimension": int,
    "n_signal": int,
    "n_idler": int,
    "l0": int,
    "correlation_model": str,
    "alpha_min": float,
    "alpha_max": float,
    "steps": int,
    "truncation": int,
    "preset": str,
    "output": str,
    "format": str,
    "parallelism": int,
}


class _UsageError(Exception):
    pass


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise _UsageError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key == "slits":
            parts = value.split()
            if len(parts) != 2:
                raise _UsageError(f"{path}:{lineno}: slits expects two integers")
            values["n_signal"], values["n_idler"] = int(parts[0]), int(parts[1])
            continue
        if key not in _FILE_KEYS:
            raise _UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _FILE_KEYS[key](value)
        except ValueError as exc:
            raise _UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="angular-qudits",
        description="Concurrence-vs-aperture sweeps for OAM and path entanglement.",
    )
    parser.add_argument("--config", metavar="FILE", help="flat key-value config file")
    parser.add_argument("--mode", choices=["oam", "path"])
    parser.add_argument("--dimension", type=int, help="odd OAM dimension D = 2N+1 (mode oam)")
    parser.add_argument("--slits", type=int, nargs=2, metavar=("N", "M"),
                        help="signal and idler slit counts (mode path)")
    parser.add_argument("--l0", type=int, help="initial OAM order of the path input state")
    parser.add_argument("--correlation-model", choices=["constant", "overlap", "diagonal"])
    parser.add_argument("--alpha-min", type=float)
    parser.add_argument("--alpha-max", type=float)
    parser.add_argument("--steps", type=int)
    parser.add_argument("--truncation", type=int, help="override the OAM truncation bound")
    parser.add_argument("--preset", choices=sorted(PRESETS))
    parser.add_argument("--output", metavar="PATH")
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--parallelism", type=int)
    return parser


def parse_config(argv: list[str]) -> SweepConfig:
    """Resolve flags (and an optional config file) into a validated SweepConfig."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed the message; normalize the exit code
        raise _UsageError("invalid arguments") if exc.code not in (0, None) else exc

    values: dict = {}
    if args.config:
        values.update(_parse_config_file(args.config))

    flag_map = {
        "mode": args.mode,
        "dimension": args.dimension,
        "l0": args.l0,
        "correlation_model": args.correlation_model,
        "alpha_min": args.alpha_min,
        "alpha_max": args.alpha_max,
        "steps": args.steps,
        "truncation": args.truncation,
        "preset": args.preset,
        "output": args.output,
        "format": args.format,
        "parallelism": args.parallelism,
    }
    for key, value in flag_map.items():
        if value is not None:
            values[key] = value
    if args.slits is not None:
        values["n_signal"], values["n_idler"] = args.slits

    if values.get("preset") is not None:
        for key in ("mode", "dimension", "n_signal", "n_idler", "correlation_model"):
            if values.get(key) is not None:
                raise SweepConfigError(f"--preset conflicts with explicit --{key.replace('_', '-')}")

    config = SweepConfig(
        mode=values.get("mode", "oam"),
        dimension=values.get("dimension"),
        n_signal=values.get("n_signal"),
        n_idler=values.get("n_idler"),
        l0=values.get("l0", 0),
        correlation_model=values.get("correlation_model"),
        alpha_min=values.get("alpha_min", 0.0),
        alpha_max=values.get("alpha_max", 2.0 * math.pi),
        steps=values.get("steps", 200),
        l_trunc=values.get("truncation"),
        output_path=values.get("output"),
        format=values.get("format", "csv"),
        parallelism=values.get("parallelism"),
        preset=values.get("preset"),
    )
    if config.preset is None:
        config.validate()
    return config


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except (_UsageError, SweepConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except SystemExit as exc:  # argparse --help
        return 0 if exc.code in (0, None) else USAGE_EXIT

    try:
        if config.preset is not None:
            rows, configs = run_preset(config.preset, overrides=config)
        else:
            rows, configs = run_config(config), [config]
    except SweepConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT

    out_path = config.output_path
    if out_path is None:
        out_path = f"sweep_{config.preset or config.mode}.{config.format}"
    try:
        emit(rows, config.format, out_path, configs)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return IO_EXIT

    failed = sum(1 for r in rows if not r.converged)
    print(f"wrote {len(rows)} rows to {out_path} ({failed} unconverged)")
    if failed > 0.10 * len(rows):
        print("error: numerical convergence failure on more than 10% of rows",
              file=sys.stderr)
        return CONVERGENCE_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
