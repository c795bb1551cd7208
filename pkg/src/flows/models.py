"""
Closed-form flows of the local models
"""

from typing import Any, Mapping
import math

from utils.errors import DomainError, UsageError

MODELS = ("ax", "x^k", "const")


def model_flow(model: str, params: Mapping[str, Any], x0: float, t: float) -> float:
    """
    Exact flow of a model field.

    ax:    x' = a*x,  x0*exp(a*t)
    x^k:   x' = x^k,  x0*(1 - (k-1)*t*x0^(k-1))^(-1/(k-1)),  k >= 2
    const: x' = a,    x0 + a*t

    Raises:
        DomainError: t lies past the blow-up time of the x^k flow
    """
    x0 = float(x0)
    t = float(t)
    if model == "ax":
        return x0 * math.exp(float(params["a"]) * t)
    if model == "const":
        return x0 + float(params.get("a", 1.0)) * t
    if model == "x^k":
        k = int(params["k"])
        if k < 2:
            raise UsageError("The x^k model needs k >= 2; use 'ax' for k = 1")
        if x0 == 0.0:
            return 0.0
        base = 1.0 - (k - 1) * t * x0 ** (k - 1)
        if base <= 0.0:
            raise DomainError(f"Flow of x^{k} from {x0!r} does not reach t={t!r} (blow-up)")
        return x0 * base ** (-1.0 / (k - 1))
    raise UsageError(f"Unknown model {model!r}; expected one of {MODELS}")
