"""Render one figure from a stats CSV.

Exit codes: 0 success, 1 runtime/IO failure, 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURE_IDS, FigureError, FigureSpec, render
from .statsfile import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gemsurf-plots",
        description="Regenerate figures from gemsurf stats CSV exports.",
    )
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS)
    parser.add_argument("--input", required=True, help="stats CSV path")
    parser.add_argument("--output", required=True, help="image path (.svg or .png)")
    parser.add_argument("--fit", help="fit JSON (required for mean_estimate)")
    parser.add_argument("--asymptote", type=float, default=1.5,
                        help="asymptote for the std-deviation hypothesis panel")
    parser.add_argument("--decay-fit-max-n", type=int, default=23,
                        help="largest n used for the symmetry-decay line fit")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        figure_id=args.figure,
        input=args.input,
        output=args.output,
        fit_input=args.fit,
        asymptote=args.asymptote,
        decay_fit_max_n=args.decay_fit_max_n,
    )
    try:
        out = render(spec)
    except (FigureError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
