"""
Closed-form maps used as verification baselines (`--map builtin:<name>`)
"""

from typing import Callable, Dict
import math

from utils.errors import UsageError
from .witness import ConjugacyWitness

INF = math.inf


def _square_cube_denominator(x: float) -> float:
    return 1.0 + x * math.log(abs(x)) - x * math.log1p(x)


def _square_cube_phi(x: float) -> float:
    """x / (1 + x log|x| - x log(1+x)), conjugating x^2 + x^3 to x^2"""
    if x == 0.0:
        return 0.0
    return x / _square_cube_denominator(x)


def _square_cube_dphi(x: float) -> float:
    if x == 0.0:
        return 1.0
    return 1.0 / ((1.0 + x) * _square_cube_denominator(x) ** 2)


def identity() -> ConjugacyWitness:
    return ConjugacyWitness(
        forward=lambda x: float(x),
        derivative=lambda x: 1.0,
        domain=(-INF, INF),
        smoothness_claim="Cinf",
        orientation="preserving",
        tangent_to_identity=True,
        source="builtin:identity",
    )


def signed_square() -> ConjugacyWitness:
    """x|x|, a global homeomorphism conjugating x to 2x (not C1 invertible at 0)"""
    return ConjugacyWitness(
        forward=lambda x: float(x) * abs(float(x)),
        derivative=lambda x: 2.0 * abs(float(x)),
        domain=(-INF, INF),
        smoothness_claim="C0",
        orientation="preserving",
        source="builtin:signed-square",
    )


def square_cube_phi() -> ConjugacyWitness:
    return ConjugacyWitness(
        forward=_square_cube_phi,
        derivative=_square_cube_dphi,
        domain=(-0.4, 0.4),
        smoothness_claim="C1",
        orientation="preserving",
        tangent_to_identity=True,
        source="builtin:square-cube",
    )


def negation() -> ConjugacyWitness:
    """-x, conjugating x^2 to -x^2"""
    return ConjugacyWitness(
        forward=lambda x: -float(x),
        derivative=lambda x: -1.0,
        domain=(-INF, INF),
        smoothness_claim="Cinf",
        orientation="reversing",
        source="builtin:negation",
    )


BUILTIN_MAPS: Dict[str, Callable[[], ConjugacyWitness]] = {
    "identity": identity,
    "signed-square": signed_square,
    "square-cube": square_cube_phi,
    "negation": negation,
}


def get_builtin(name: str) -> ConjugacyWitness:
    """Look up 'name' or 'builtin:name'"""
    key = name.split(":", 1)[1] if name.startswith("builtin:") else name
    if key not in BUILTIN_MAPS:
        raise UsageError(f"Unknown builtin map {key!r}; available: {', '.join(sorted(BUILTIN_MAPS))}")
    return BUILTIN_MAPS[key]()
