"""
Figure data command: figure.
"""
import logging
from typing import Any, Dict, List

from app.exceptions import UsageError
from app.routes import grid, json_arg
from app.utils.curve_writer import CurveWriter
from app.utils.figures import FIGURES, figure_sweep

logger = logging.getLogger(__name__)

# overrides that are parameter grids rather than scalars
_GRID_KEYS = {"ts", "taus", "rs", "lambdas", "p_cs", "qs"}


def parse_overrides(items: List[str]) -> Dict[str, Any]:
    """KEY=VALUE pairs; grids take start:stop:num or a comma list, the rest JSON."""
    overrides: Dict[str, Any] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"Override must look like key=value, got '{item}'")
        overrides[key] = grid(value).tolist() if key in _GRID_KEYS else json_arg(value)
    return overrides


def figure_command(args) -> dict:
    curves = figure_sweep(args.which, **parse_overrides(args.set))
    files = CurveWriter(args.output_dir).write_all(curves, args.format)
    return {
        "figure": args.which,
        "files": files,
        "series": [{"name": c.name, "points": len(c.x), "metadata": c.metadata} for c in curves],
    }


def register(subparsers) -> None:
    p = subparsers.add_parser("figure", help="Emit the curve data of a figure sweep")
    p.add_argument("--which", choices=list(FIGURES), required=True)
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="Override a sweep parameter, repeatable")
    p.set_defaults(handler=figure_command)
