"""
Command base class

Every verb is a BaseCommand that turns a CommandRequest into a
CommandResult. Failures are recorded on the result, never raised past the
dispatcher.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import logging

import pandas as pd

from utils.config import Settings
from utils.errors import UsageError

FORMATS = ("json", "csv")


@dataclass
class CommandRequest:
    """Parsed invocation: verb, its options and the effective settings"""

    verb: str
    options: Dict[str, Any] = field(default_factory=dict)
    settings: Settings = field(default_factory=Settings)
    out: Optional[str] = None
    format: str = "json"  # json, csv

    def get(self, key: str, default: Any = None) -> Any:
        value = self.options.get(key)
        return default if value is None else value

    def require(self, *keys: str) -> None:
        missing = [k for k in keys if self.options.get(k) is None]
        if missing:
            flags = ", ".join("--" + k.replace("_", "-") for k in missing)
            raise UsageError(f"{self.verb} needs {flags}")


@dataclass
class CommandResult:
    """Outcome of one command"""

    verb: str
    status: str  # success, failure
    data: Dict[str, Any] = field(default_factory=dict)
    table: Optional[pd.DataFrame] = field(default=None, repr=False)
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    exit_code: int = 0
    execution_time: float = 0.0

    def document(self, settings: Settings) -> Dict[str, Any]:
        """Output document: data plus verb, status, settings and diagnostics"""
        doc = dict(self.data)
        doc['verb'] = self.verb
        doc['status'] = self.status
        doc['settings'] = settings.to_dict()
        if self.warnings:
            doc['warnings'] = list(self.warnings)
        if self.errors:
            doc['errors'] = list(self.errors)
        return doc


class BaseCommand(ABC):
    """
    Abstract base class for all verbs.

    Subclasses implement execute() and may raise any GermKitError; the
    dispatcher maps it onto the exit code.
    """

    name: str = ""
    description: str = ""

    def __init__(self):
        self.logger = logging.getLogger(f"Command.{self.name}")

    @abstractmethod
    def execute(self, request: CommandRequest) -> CommandResult:
        """
        Run the verb.

        Args:
            request: parsed request

        Returns:
            CommandResult with data and, for tabular verbs, a table
        """
        pass

    def configure_parser(self, parser) -> None:
        """Add verb-specific options to the argparse subparser"""

    def log_step(self, step_name: str, details: str = ""):
        self.logger.info(f"[{self.name}] {step_name}: {details}")

    def __repr__(self):
        return f"<{self.__class__.__name__}(name='{self.name}')>"
