"""
Error hierarchy shared by every GermKit package.

Each error carries an ``exit_code`` used by the command-line dispatcher:
1 for malformed requests, 2 for mathematically meaningful failures.
"""

from typing import Optional, Sequence


class GermKitError(Exception):
    """Base class for all GermKit failures"""

    exit_code = 2


class UsageError(GermKitError, ValueError):
    """Malformed command-line request"""

    exit_code = 1


class ParseError(GermKitError, ValueError):
    """Syntax error in a field expression"""

    exit_code = 1

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class DomainError(GermKitError, ArithmeticError):
    """Evaluation outside the natural domain of an expression"""

    def __init__(self, message: str, node: str = ""):
        self.node = node
        detail = f" in '{node}'" if node else ""
        super().__init__(f"{message}{detail}")


class SingularSeriesError(GermKitError, ArithmeticError):
    """No Taylor expansion exists at the origin"""


class InsufficientOrderError(GermKitError, ValueError):
    """Truncation order too low for the requested jet computation"""


class NotFinitelyDeterminedError(GermKitError, ValueError):
    """Flat or zero germs have no finite normal form"""


class ZeroFieldError(NotFinitelyDeterminedError):
    """The field vanishes identically near the origin"""


class ConjugacyError(GermKitError, ValueError):
    """No conjugacy of the requested kind can be built"""

    def __init__(self, message: str, quotients: Optional[Sequence[float]] = None):
        self.quotients = list(quotients) if quotients is not None else []
        super().__init__(message)


class QuadratureError(GermKitError, RuntimeError):
    """Adaptive quadrature failed or met a zero of the integrand's denominator"""


class IntegrationError(GermKitError, RuntimeError):
    """ODE integration failed (step-size floor reached)"""


class GridCapError(GermKitError, ValueError):
    """Parameter sweep exceeds the configured node cap"""


class LeadingOrderError(GermKitError, ValueError):
    """Requested order does not carry the first nonvanishing coefficient"""


class JetConditionError(GermKitError, ValueError):
    """Inputs violate a required vanishing condition at the origin"""

    exit_code = 1
