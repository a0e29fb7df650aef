"""Figure rendering CLI: ``epifront-plot <kind> <inputs...> -o out.png``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_KINDS, EmptyInput, FigureJob, SchemaMismatch, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epifront-plot", description=__doc__)
    parser.add_argument("kind", choices=FIGURE_KINDS, help="figure kind")
    parser.add_argument("inputs", nargs="+", help="CSV tables and JSON summaries")
    parser.add_argument("-o", "--output", required=True, help="output image path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = FigureJob(kind=args.kind, inputs=tuple(Path(p) for p in args.inputs), output=Path(args.output))
    try:
        out = render(job)
    except (SchemaMismatch, EmptyInput, FileNotFoundError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    sys.stdout.write(f"{out}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
