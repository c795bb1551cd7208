"""
germkit command line

    python -m cli classify --field "x^2+x^3"
    python -m cli verify --f "x" --g "2*x" --map builtin:signed-square
    python -m cli unfold --family F --k 2 --d 0 --axis=-1,0,1 --format csv

Exit codes: 0 success, 1 usage error, 2 mathematical failure.
"""

from typing import List, Optional
import argparse
import logging
import sys

from rich.markup import escape

from utils.config import load_settings
from utils.errors import GermKitError, UsageError
from utils.io import write_text
from .commands import FORMATS, CommandRequest
from .dispatcher import CommandDispatcher
from .verbs import COMMANDS, parse_pair

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# flag -> Settings field
SETTING_FLAGS = {
    'zero_tol': float,
    'max_order': int,
    'sign_rule': str,
    'quad_abs_tol': float,
    'quad_rel_tol': float,
    'quad_limit': int,
    'invert_tol': float,
    'eps': float,
    'flow_rel_tol': float,
    'flow_abs_tol': float,
    'x_max': float,
    'min_step': float,
    'multiplicity_tol': float,
    'root_tol': float,
    'grid_cap': int,
    'workers': int,
}
RENAMED = {'sign_rule': 'cinf_sign_rule', 'workers': 'sweep_workers'}


class CommandLineParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    common = CommandLineParser(add_help=False)
    common.add_argument("--config", help="Settings file (KEY=VALUE lines)")
    common.add_argument("--out", help="Output path (default stdout)")
    common.add_argument("--format", default="json", choices=FORMATS)
    common.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    common.add_argument("--debug", action="store_true", help="Log numeric detail to stderr")
    tol = common.add_argument_group("tolerances (defaults echoed in every output)")
    for name, kind in SETTING_FLAGS.items():
        tol.add_argument("--" + name.replace("_", "-"), type=kind, dest=f"setting_{name}")
    tol.add_argument("--window", dest="setting_window", help="lo,hi equilibrium window")
    return common


def build_parser(dispatcher: CommandDispatcher) -> CommandLineParser:
    parser = CommandLineParser(prog="germkit", description="Local classification of 1-d vector-field germs")
    sub = parser.add_subparsers(dest="verb", parser_class=CommandLineParser)
    common = _common_options()
    for command in dispatcher.commands.values():
        p = sub.add_parser(command.name, parents=[common], help=command.description, description=command.description)
        command.configure_parser(p)
    return parser


def build_dispatcher() -> CommandDispatcher:
    dispatcher = CommandDispatcher()
    for command_class in COMMANDS:
        dispatcher.register(command_class())
    return dispatcher


def _configure_logging(args: argparse.Namespace):
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def request_from_args(args: argparse.Namespace) -> CommandRequest:
    """Split a namespace into settings overrides and verb options"""
    overrides = {}
    options = {}
    for key, value in vars(args).items():
        if key.startswith("setting_"):
            name = key[len("setting_"):]
            if name == "window" and value is not None:
                value = parse_pair(value, "--window")
            overrides[RENAMED.get(name, name)] = value
        elif key not in ("verb", "config", "out", "format", "verbose", "debug"):
            options[key] = value
    settings = load_settings(args.config, **overrides)
    return CommandRequest(verb=args.verb, options=options, settings=settings, out=args.out, format=args.format)


def main(argv: Optional[List[str]] = None) -> int:
    dispatcher = build_dispatcher()
    parser = build_parser(dispatcher)
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError(f"a verb is required: {', '.join(dispatcher.commands)}")
        _configure_logging(args)
        request = request_from_args(args)
    except GermKitError as e:
        dispatcher.console.print(f"[red]error[/red]: {escape(str(e))}")
        return e.exit_code

    code, text = dispatcher.dispatch(request)
    if text is not None:
        try:
            write_text(text, request.out)
        except OSError as e:
            dispatcher.console.print(f"[red]error[/red]: cannot write {escape(str(request.out))}: {escape(str(e))}")
            return UsageError.exit_code
    return code


if __name__ == "__main__":
    sys.exit(main())
