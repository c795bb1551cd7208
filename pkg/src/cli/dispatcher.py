"""
Command dispatcher

Routes a CommandRequest to its registered command, converts failures into
exit codes and renders the output document.
"""

from typing import Dict, Optional, Tuple
import logging
import time

from rich.console import Console
from rich.markup import escape

from utils.errors import GermKitError, UsageError
from utils.io import render_csv, render_json
from .commands import FORMATS, BaseCommand, CommandRequest, CommandResult

logger = logging.getLogger(__name__)

INTERNAL_ERROR_EXIT = 2


class CommandDispatcher:
    """
    Holds one command per verb.

    dispatch() never raises: GermKit errors become failure results carrying
    the error's exit code, and unexpected exceptions are reported the same
    way with exit code 2.
    """

    def __init__(self, console: Optional[Console] = None):
        self.commands: Dict[str, BaseCommand] = {}
        self.console = console or Console(stderr=True, soft_wrap=True)
        self.logger = logging.getLogger("CommandDispatcher")

    def register(self, command: BaseCommand):
        self.commands[command.name] = command
        self.logger.debug(f"Registered command: {command.name}")

    def run(self, request: CommandRequest) -> CommandResult:
        command = self.commands.get(request.verb)
        if command is None:
            return CommandResult(
                verb=request.verb,
                status="failure",
                errors=[f"Unknown verb {request.verb!r}"],
                exit_code=UsageError.exit_code,
            )
        start = time.time()
        try:
            if request.format not in FORMATS:
                raise UsageError(f"Unknown format {request.format!r}; expected one of {FORMATS}")
            result = command.execute(request)
        except GermKitError as e:
            self.logger.debug(f"{request.verb} failed", exc_info=True)
            result = CommandResult(
                verb=request.verb,
                status="failure",
                errors=[f"{type(e).__name__}: {e}"],
                exit_code=e.exit_code,
            )
        except Exception as e:
            self.logger.error(f"{request.verb} crashed: {e}", exc_info=True)
            result = CommandResult(
                verb=request.verb,
                status="failure",
                errors=[f"internal error: {e}"],
                exit_code=INTERNAL_ERROR_EXIT,
            )
        if not result.execution_time:
            result.execution_time = time.time() - start
        self.logger.info(f"{request.verb} finished with status {result.status} in {result.execution_time:.2f}s")
        return result

    def render(self, request: CommandRequest, result: CommandResult) -> Optional[str]:
        """Output text for the result, or None when there is nothing to write"""
        if result.status != "success" and not result.data:
            return None
        if request.format == "csv":
            if result.table is None:
                raise UsageError(f"{request.verb} has no tabular output; use --format json")
            provenance = {'verb': request.verb, 'settings': request.settings.to_dict()}
            provenance.update({f"option.{k}": v for k, v in request.options.items() if v is not None})
            return render_csv(result.table, provenance)
        return render_json(result.document(request.settings))

    def report(self, result: CommandResult):
        """Diagnostics on stderr"""
        for warning in result.warnings:
            self.console.print(f"[yellow]warning[/yellow]: {escape(warning)}")
        for error in result.errors:
            self.console.print(f"[red]error[/red]: {escape(error)}")

    def dispatch(self, request: CommandRequest) -> Tuple[int, Optional[str]]:
        """Run, report and render; returns (exit code, output text)"""
        result = self.run(request)
        self.report(result)
        try:
            text = self.render(request, result)
        except GermKitError as e:
            self.console.print(f"[red]error[/red]: {escape(str(e))}")
            return e.exit_code, None
        return result.exit_code, text
