"""
Command line entry point.
Builds the parser from the command groups in app.routes and dispatches one
subcommand, printing JSON on stdout and logging on stderr.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app import __version__
from app.config import get_settings
from app.exceptions import DisentropyError, UsageError
from app.models import RunConfig
from app.routes import applications, figures, functions, information, jsonable, operators, quantum, wigner

logger = logging.getLogger(__name__)

COMMAND_GROUPS = (functions, information, quantum, operators, wigner, applications, figures)


class ArgumentParser(argparse.ArgumentParser):
    """Parser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="disentropy", description=get_settings().app_name)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    for sub in subparsers.choices.values():
        sub.add_argument("--seed", type=int, default=None, help="Seed for randomized checks")
        sub.add_argument("--format", choices=["json", "csv"], default=None, help="Curve file format")
        sub.add_argument("--output-dir", default=None, help="Directory for curve files")
    return parser


def configure_logging() -> None:
    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if settings.debug else settings.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def _emit(payload: dict) -> None:
    print(json.dumps(jsonable(payload), sort_keys=True))


def dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        int: 0 on success, otherwise the exit code of the raised error class
            (UsageError 1, DomainError 2, IoError 3)
    """
    try:
        args = build_parser().parse_args(argv)
        params = {k: v for k, v in vars(args).items() if k not in ("handler", "command")}
        settings = get_settings()
        cfg = RunConfig(
            subcommand=args.command,
            params=params,
            output_format=args.format or settings.output_format,
            output_path=args.output_dir or settings.output_dir,
            seed=settings.seed if args.seed is None else args.seed,
        )
        # handlers read the resolved values
        args.seed, args.format, args.output_dir = cfg.seed, cfg.output_format, cfg.output_path
        logger.debug(f"Dispatching {cfg.subcommand} with {cfg.params}")
        result = args.handler(args)
        _emit(result)
        return 0
    except ValidationError as e:
        err = UsageError(f"Invalid parameters: {e.errors(include_url=False)}")
        logger.debug(f"Validation failed: {str(e)}", exc_info=True)
        _emit({"error": err.name, "message": str(err)})
        return err.exit_code
    except DisentropyError as e:
        logger.debug(f"{e.name}: {str(e)}", exc_info=True)
        payload = {"error": e.name, "message": str(e)}
        if e.details:
            payload["details"] = e.details
        _emit(payload)
        return e.exit_code


def main() -> None:
    configure_logging()
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
