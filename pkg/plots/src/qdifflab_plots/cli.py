"""One recipe per invocation: qdifflab-plots --figure 2 --csv f2.csv -o f2.png"""

import argparse
import sys

from . import __version__
from .errors import RecipeError, SchemaError
from .render import AXIS_MODES, FIGURE_IDS, FigureRecipe, render

_USAGE_EXIT = 2
_DATA_EXIT = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdifflab-plots",
        description="Render a qdifflab CSV table as a figure file.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--figure", type=int, required=True,
                        choices=FIGURE_IDS, help="which figure to draw")
    parser.add_argument("--csv", action="append", required=True,
                        metavar="PATH",
                        help="input table; repeat to overlay several")
    parser.add_argument("--axis-mode", default="", choices=("",) + AXIS_MODES,
                        help="axis scaling (default: the figure's own)")
    parser.add_argument("-o", "--output", required=True,
                        help="output image (.png or .svg)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        recipe = FigureRecipe(figure_id=args.figure,
                              csv_paths=tuple(args.csv),
                              output=args.output,
                              axis_mode=args.axis_mode)
        out = render(recipe)
    except RecipeError as err:
        print(f"error: {err}", file=sys.stderr)
        return _USAGE_EXIT
    except (SchemaError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return _DATA_EXIT
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
