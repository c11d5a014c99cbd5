"""Command line figure rendering.

    plot <figure-kind> --trace <dir> [--trace <dir> ...] --out <png>
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import PlotError
from .figures import KINDS, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render figures from fleet-simulator trace directories.")
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument("--trace", action="append", required=True,
                        metavar="DIR", help="trace directory, repeatable")
    parser.add_argument("--out", required=True, metavar="PNG",
                        help="output image path")
    args = parser.parse_args(argv)

    try:
        out = render(FigureSpec(kind=args.kind,
                                traces=tuple(Path(t) for t in args.trace),
                                out=Path(args.out)))
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


def console_entry():
    sys.exit(main())
