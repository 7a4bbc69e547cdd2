"""Command-line frontend: custom sweeps, bundled presets, the validation
suite, and single-point oracle reports."""

from __future__ import annotations

import argparse
import json
import os
import sys

from ._version import __version__
from .channels import CHANNEL_FAMILIES, evolve
from .linalg import make_bell_state
from .measures import GdConvention, RAW_CONVENTION, gd_lower_bound, negativity
from .oracle import gd_exact
from .sweeps import (ConfigError, ExperimentConfig, PRESET_NAMES, SweepDataset,
                     SweepRange, infer_sweep_mode, rate_grid, run_preset, time_sweep)
from .validation import run_validation

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

OUTDIR_ENV = "QUTRITCORR_OUTDIR"


class OutputError(Exception):
    """File output failed or was refused."""


def parse_axis(text: str):
    """Scalar or min:max:steps range."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"range must be min:max:steps, got {text!r}")
        try:
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise argparse.ArgumentTypeError(f"range must be min:max:steps, got {text!r}") from None
        try:
            return SweepRange(start, stop, steps)
        except ConfigError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def parse_scalar(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qutritcorr",
        description="Negativity and geometric-discord dynamics of a qutrit pair "
                    "under local noise channels.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="custom sweep over time and decay rates")
    run_p.add_argument("--channel-a", required=True, choices=CHANNEL_FAMILIES)
    run_p.add_argument("--channel-b", required=True, choices=CHANNEL_FAMILIES)
    run_p.add_argument("--qa", required=True, type=parse_axis, metavar="Q|MIN:MAX:STEPS",
                       help="A-side decay rate, scalar or range")
    run_p.add_argument("--qb", required=True, type=parse_axis, metavar="Q|MIN:MAX:STEPS",
                       help="B-side decay rate, scalar or range")
    run_p.add_argument("--t", required=True, type=parse_axis, metavar="T|MIN:MAX:STEPS",
                       help="evolution time, scalar or range")
    run_p.add_argument("--gd-convention", choices=("paper", "raw"), default="paper")
    run_p.add_argument("--oracle", action="store_true",
                       help="add a gd_exact column (slow)")
    run_p.add_argument("--restarts", type=int, default=32,
                       help="oracle restarts when --oracle is set")
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--format", choices=("csv", "json"), default="csv")
    run_p.add_argument("--output", default="-", help="output file, or - for stdout")
    run_p.add_argument("--force", action="store_true",
                       help="overwrite an existing output file")

    preset_p = sub.add_parser("preset", help="run a bundled figure preset")
    preset_p.add_argument("--name", required=True, choices=PRESET_NAMES)
    preset_p.add_argument("--outdir", default=None,
                          help=f"output directory (default ${OUTDIR_ENV} or the current dir)")
    preset_p.add_argument("--gd-convention", choices=("paper", "raw"), default="paper")
    preset_p.add_argument("--seed", type=int, default=0)
    preset_p.add_argument("--format", choices=("csv", "json"), default="csv")
    preset_p.add_argument("--force", action="store_true")

    val_p = sub.add_parser("validate", help="run the cross-module consistency suite")
    val_p.add_argument("--seed", type=int, default=0)
    val_p.add_argument("--restarts", type=int, default=32)
    val_p.add_argument("--oracle-states", type=int, default=12,
                       help="random states for the bound-vs-oracle check")
    val_p.add_argument("--unnormalized-trit-flip", action="store_true",
                       help="swap in the sqrt(gamma)-weighted trit-flip variant, which "
                            "fails the completeness check")

    oracle_p = sub.add_parser("oracle",
                              help="single-point report with the brute-force discord value")
    oracle_p.add_argument("--channel-a", required=True, choices=CHANNEL_FAMILIES)
    oracle_p.add_argument("--channel-b", required=True, choices=CHANNEL_FAMILIES)
    oracle_p.add_argument("--qa", required=True, type=parse_scalar)
    oracle_p.add_argument("--qb", required=True, type=parse_scalar)
    oracle_p.add_argument("--t", required=True, type=parse_scalar)
    oracle_p.add_argument("--restarts", type=int, default=32)
    oracle_p.add_argument("--seed", type=int, default=0)
    oracle_p.add_argument("--output", default="-", help="output file, or - for stdout")
    oracle_p.add_argument("--force", action="store_true")
    return parser


def _meta_value(value) -> str:
    return value if isinstance(value, str) else json.dumps(value)


def format_dataset_csv(ds: SweepDataset) -> str:
    lines = [f"# {key}: {_meta_value(val)}" for key, val in ds.meta.items()]
    names = list(ds.columns)
    lines.append(",".join(names))
    cols = [ds.columns[name] for name in names]
    for i in range(len(ds)):
        lines.append(",".join(format(col[i], ".12g") for col in cols))
    return "\n".join(lines) + "\n"


def format_dataset_json(ds: SweepDataset) -> str:
    payload = {
        "meta": dict(ds.meta),
        "columns": {name: [float(x) for x in col] for name, col in ds.columns.items()},
    }
    return json.dumps(payload, indent=2) + "\n"


def write_text(text: str, path: str, force: bool = False) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    if os.path.exists(path) and not force:
        raise OutputError(f"refusing to overwrite {path} (pass --force)")
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def write_dataset(ds: SweepDataset, fmt: str, path: str, force: bool = False) -> None:
    text = format_dataset_csv(ds) if fmt == "csv" else format_dataset_json(ds)
    write_text(text, path, force)


def _cmd_run(args) -> int:
    mode = infer_sweep_mode(args.qa, args.qb, args.t)
    cfg = ExperimentConfig(
        family_a=args.channel_a, family_b=args.channel_b,
        q_a=args.qa, q_b=args.qb, t=args.t, sweep_mode=mode,
        gd_convention=GdConvention(args.gd_convention),
        oracle_enabled=args.oracle, oracle_restarts=args.restarts, seed=args.seed)
    ds = rate_grid(cfg) if mode == "rate_grid" else time_sweep(cfg)
    write_dataset(ds, args.format, args.output, args.force)
    return EXIT_OK


def _cmd_preset(args) -> int:
    outdir = args.outdir or os.environ.get(OUTDIR_ENV) or "."
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create {outdir}: {exc}") from exc
    datasets = run_preset(args.name, gd_convention=GdConvention(args.gd_convention),
                          seed=args.seed)
    for key, ds in datasets.items():
        path = os.path.join(outdir, f"{args.name}_{key}.{args.format}")
        write_dataset(ds, args.format, path, args.force)
        print(path)
    return EXIT_OK


def _cmd_validate(args) -> int:
    checks = run_validation(seed=args.seed, restarts=args.restarts,
                            oracle_states=args.oracle_states,
                            unnormalized_trit_flip=args.unnormalized_trit_flip)
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "pass" if c.passed else "FAIL"
        print(f"{c.name:<{width}}  tol {c.tolerance:<8.1e}  max dev {c.max_deviation:<12.3e}  {status}")
    failed = [c for c in checks if not c.passed]
    if failed:
        names = ", ".join(c.name for c in failed)
        print(f"failed: {names}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_oracle(args) -> int:
    rho = evolve(make_bell_state(3), args.channel_a, args.channel_b,
                 args.qa, args.qb, args.t)
    result = gd_exact(rho, restarts=args.restarts, seed=args.seed)
    payload = {
        "channel_a": args.channel_a,
        "channel_b": args.channel_b,
        "q_a": args.qa,
        "q_b": args.qb,
        "t": args.t,
        "negativity": negativity(rho),
        "gd_lower_paper": gd_lower_bound(rho),
        "gd_lower_raw": gd_lower_bound(rho, RAW_CONVENTION),
        "gd_exact": result.value,
        "residual": result.residual,
        "restarts": result.restarts_used,
        "seed": result.seed,
    }
    write_text(json.dumps(payload, indent=2) + "\n", args.output, args.force)
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "preset": _cmd_preset,
    "validate": _cmd_validate,
    "oracle": _cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
