"""
Numerical flows of x' = f(x)

Integration uses scipy's embedded Runge-Kutta (DOP853) with a terminal
event at |x| = X_MAX for finite-time blow-up and optional events at the
edges of a domain interval. Negative times integrate the reversed field.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union
import logging
import math

import numpy as np
from scipy.integrate import solve_ivp

from expr import Expression, as_expression
from utils.config import Settings
from utils.errors import IntegrationError, UsageError

logger = logging.getLogger(__name__)

OK = "ok"
BLOWUP = "blowup"
LEFT_DOMAIN = "left_domain"


@dataclass
class FlowResult:
    """State f^t(x0) and how the integration ended"""

    value: float
    status: str  # ok, blowup, left_domain
    t_reached: float
    t_escape: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status == OK

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'value': self.value,
            'status': self.status,
            't_reached': self.t_reached,
        }
        if self.t_escape is not None:
            doc['t_escape'] = self.t_escape
        return doc


def _escape_event(x_max: float):
    def event(_, y):
        return x_max - abs(y[0])
    event.terminal = True
    event.direction = -1
    return event


def _edge_event(edge: float, upper: bool):
    def event(_, y):
        return (edge - y[0]) if upper else (y[0] - edge)
    event.terminal = True
    event.direction = -1
    return event


def flow(
    f: Union[str, Expression],
    x0: float,
    t: float,
    settings: Optional[Settings] = None,
    domain: Optional[Tuple[float, float]] = None,
) -> FlowResult:
    """
    Integrate x' = f(x), x(0) = x0 up to time t.

    Args:
        f: field coefficient
        x0: initial state, |x0| <= X_MAX
        t: final time (either sign)
        settings: tolerances, X_MAX and the step floor
        domain: optional (lo, hi); leaving it ends the integration

    Returns:
        FlowResult with status ok, blowup (t_escape set) or left_domain

    Raises:
        DomainError: the field left its natural domain during integration
        IntegrationError: the step size fell below the floor
    """
    settings = settings or Settings()
    e = as_expression(f)
    x0 = float(x0)
    t = float(t)
    if not math.isfinite(x0) or abs(x0) > settings.x_max:
        raise UsageError(f"Initial state {x0!r} exceeds X_MAX={settings.x_max:g}")
    if domain is not None and not (domain[0] <= x0 <= domain[1]):
        raise UsageError(f"Initial state {x0!r} lies outside the domain {domain}")

    if t == 0.0:
        return FlowResult(x0, OK, 0.0)

    direction = 1.0 if t > 0 else -1.0
    if e.evaluate(x0) == 0.0:
        return FlowResult(x0, OK, t)

    def rhs(_, y):
        return [direction * e.evaluate(y[0])]

    events = [_escape_event(settings.x_max)]
    if domain is not None:
        events.append(_edge_event(domain[0], upper=False))
        events.append(_edge_event(domain[1], upper=True))

    sol = solve_ivp(
        rhs,
        (0.0, abs(t)),
        [x0],
        method="DOP853",
        rtol=settings.flow_rel_tol,
        atol=settings.flow_abs_tol,
        events=events,
    )

    if sol.status == -1:
        raise IntegrationError(f"Integration of {e} from {x0!r} failed: {sol.message}")

    value = float(sol.y[0, -1])
    reached = direction * float(sol.t[-1])

    if sol.status == 1:
        if len(sol.t_events[0]):
            t_escape = direction * float(sol.t_events[0][0])
            logger.debug(f"Flow of {e} from {x0!r} escapes |x| > {settings.x_max:g} at t={t_escape:.6g}")
            return FlowResult(value, BLOWUP, reached, t_escape=t_escape)
        return FlowResult(value, LEFT_DOMAIN, reached)

    steps = np.diff(sol.t)[:-1]
    if steps.size and steps.min() < settings.min_step:
        raise IntegrationError(f"Step size fell below {settings.min_step:g} integrating {e}")

    return FlowResult(value, OK, t)
