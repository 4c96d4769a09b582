"""zariski-kit command line.

    zariski-kit <command> --input FILE [names...] [--search-bound N]
                [--max-subset K] [--json | --text]

Exit codes: 0 all checks pass, 1 some verdict failed, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .errors import ZariskiKitError
from .report import COMMANDS, EXIT_INPUT, Options, run_command
from .surface_file import parse_surface_file


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zariski-kit", description="Exact Zariski decomposition and integrality checks")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("names", nargs="*", help="divisor names for decompose, fiber names for fiber")
    p.add_argument("--input", "-i", required=True, help="surface description (TOML)")
    p.add_argument("--search-bound", type=int, default=None,
                   help="check-d1/report: search effective divisors with coefficients up to N for a non-integral decomposition")
    p.add_argument("--max-subset", type=int, default=20,
                   help="largest matrix tested for semidefiniteness by principal minors (default 20)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="machine-readable report")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable report (default)")
    p.set_defaults(fmt="text")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    if args.search_bound is not None and args.search_bound < 1:
        print("zariski-kit: --search-bound must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.max_subset < 1:
        print("zariski-kit: --max-subset must be positive", file=sys.stderr)
        return EXIT_INPUT
    opts = Options(search_bound=args.search_bound, max_subset=args.max_subset)
    try:
        sf = parse_surface_file(args.input)
        doc = run_command(args.command, sf, args.names, opts)
    except ZariskiKitError as exc:
        print(f"zariski-kit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(doc.to_json() if args.fmt == "json" else doc.to_text())
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
