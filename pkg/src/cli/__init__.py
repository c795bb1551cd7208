"""
Command-line front-end

One command object per verb, registered with a dispatcher that maps
failures onto exit codes (0 success, 1 usage, 2 mathematical failure).
"""

from .commands import BaseCommand, CommandRequest, CommandResult, FORMATS
from .dispatcher import CommandDispatcher
from .main import build_dispatcher, build_parser, main, request_from_args
from .verbs import (
    COMMANDS,
    ClassifyCommand,
    NormalFormCommand,
    ConjugateCommand,
    VerifyCommand,
    HomologicalCommand,
    FlowCommand,
    UnfoldCommand,
)

__all__ = [
    'BaseCommand',
    'CommandRequest',
    'CommandResult',
    'FORMATS',
    'CommandDispatcher',
    'build_dispatcher',
    'build_parser',
    'main',
    'request_from_args',
    'COMMANDS',
    'ClassifyCommand',
    'NormalFormCommand',
    'ConjugateCommand',
    'VerifyCommand',
    'HomologicalCommand',
    'FlowCommand',
    'UnfoldCommand',
]
