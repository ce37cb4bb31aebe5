"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on input
errors (unreadable or invalid model, wrong model kind, bad flags).
"""

from __future__ import annotations

import argparse
import json
import sys

from .commands import COMMANDS, Flags, InputError, run_command
from .modelfile import ModelError, load_model, model_from_data, serialize_model

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omnilie", description="Exact checks for omni-Lie algebroids, "
                                "Dirac structures and projective Lie algebroids.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--model", metavar="FILE", help="model file (JSON, schema omnilie/1)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--d", type=int, default=2, help="base dimension for generated corpora")
    p.add_argument("--r", type=int, default=2, help="rank for generated corpora")
    p.add_argument("--deg", type=int, default=2, help="polynomial degree for generated corpora")
    p.add_argument("--count", type=int, help="corpus size (command-specific default)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--name", help="catalog: restrict to one entry and include its model document")
    p.add_argument("--emit", metavar="FILE",
                   help="write the model produced by lift, reduce or catalog --name to FILE")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.count is not None and args.count < 0:
            raise InputError("--count must be non-negative")
        if min(args.d, args.r, args.deg + 1) < 1:
            raise InputError("--d and --r must be positive and --deg non-negative")
        model = load_model(args.model) if args.model else None
        flags = Flags(seed=args.seed, d=args.d, r=args.r, deg=args.deg, count=args.count, name=args.name)
        report = run_command(args.command, model, flags)
    except (InputError, ModelError, OSError, UnicodeDecodeError) as e:
        print(f"omnilie: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = report.dumps() if args.format == "json" else report.text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.emit:
        if not (isinstance(report.payload, dict) and "schema" in report.payload):
            print(f"omnilie: error: {args.command} produced no model to emit", file=sys.stderr)
            return EXIT_INPUT
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(serialize_model(model_from_data(json.loads(json.dumps(report.payload)))))
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
