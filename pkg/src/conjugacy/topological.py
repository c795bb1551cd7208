"""
C0 conjugacy by gluing time maps

For fields fixing 0, each semi-axis of f is paired with a semi-axis of g of
the same dynamical type (attracting or repelling). On a paired side the
witness is phi = tau_g^-1 o tau_f, and phi(0) = 0 glues the sides. The
same-side pairing is tried first; the cross pairing gives an
orientation-reversing witness.
"""

from typing import Dict, Optional, Tuple, Union
import logging
import math

import numpy as np

from expr import Expression, as_expression
from utils.config import Settings
from utils.errors import ConjugacyError, DomainError
from .timemap import NEGATIVE, POSITIVE, RectifyingMap, normalized_time_map
from .witness import ConjugacyWitness

logger = logging.getLogger(__name__)

SIGN_SAMPLES = 60


def side_signs(f: Expression, eps: float) -> Dict[int, int]:
    """
    Sign of f on (0, eps) and on (-eps, 0).

    Raises:
        ConjugacyError: f vanishes or changes sign on a sampled side
    """
    xs = np.geomspace(eps * 1e-6, eps * (1.0 - 1e-9), SIGN_SAMPLES)
    signs = {}
    for side in (POSITIVE, NEGATIVE):
        seen = set()
        for x in xs:
            try:
                v = f.evaluate(side * float(x))
            except DomainError as e:
                raise ConjugacyError(f"{f} is undefined near 0 on the {side:+d} side: {e}")
            if v == 0.0:
                raise ConjugacyError(f"{f} vanishes at {side * float(x)!r} inside the neighbourhood")
            seen.add(1 if v > 0 else -1)
        if len(seen) != 1:
            raise ConjugacyError(f"{f} changes sign on the {side:+d} side of 0")
        signs[side] = seen.pop()
    return signs


def attracting_sides(signs: Dict[int, int]) -> Dict[int, bool]:
    """A side attracts when the flow on it points toward 0"""
    return {side: side * s < 0 for side, s in signs.items()}


def choose_pairing(f_attr: Dict[int, bool], g_attr: Dict[int, bool]) -> Optional[Dict[int, int]]:
    """Side map f-side -> g-side, same-side first; None when neither pairing matches"""
    same = {POSITIVE: POSITIVE, NEGATIVE: NEGATIVE}
    cross = {POSITIVE: NEGATIVE, NEGATIVE: POSITIVE}
    for pairing in (same, cross):
        if all(f_attr[s] == g_attr[pairing[s]] for s in (POSITIVE, NEGATIVE)):
            return pairing
    return None


def _regular_witness(f: Expression, g: Expression, eps: float, settings: Settings) -> ConjugacyWitness:
    hf = RectifyingMap(f, 1.0, settings)
    hg = RectifyingMap(g, 1.0, settings)
    orientation = "preserving" if hf.f0 * hg.f0 > 0 else "reversing"

    def forward(x: float) -> float:
        return hg.invert(hf.evaluate(x))

    def derivative(x: float) -> float:
        return g.evaluate(forward(x)) / f.evaluate(float(x))

    return ConjugacyWitness(
        forward=forward,
        derivative=derivative,
        domain=(-eps, eps),
        smoothness_claim="C0",
        orientation=orientation,
        source="c0:rectifying",
    )


def c0_conjugacy(
    f: Union[str, Expression],
    g: Union[str, Expression],
    eps: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> ConjugacyWitness:
    """
    Topological conjugacy from f to g near 0.

    Args:
        f, g: field coefficients
        eps: half-width of the neighbourhood; time maps are based at +-eps/2

    Returns:
        ConjugacyWitness with smoothness_claim C0

    Raises:
        ConjugacyError: only one field fixes 0, a field vanishes or changes
            sign near 0, or no pairing of semi-axes matches
    """
    settings = settings or Settings()
    eps = eps if eps is not None else settings.eps
    fe, ge = as_expression(f), as_expression(g)

    f0, g0 = fe.evaluate(0.0), ge.evaluate(0.0)
    if f0 != 0.0 and g0 != 0.0:
        logger.info(f"Both {fe} and {ge} are regular at 0; rectifying")
        return _regular_witness(fe, ge, eps, settings)
    if (f0 == 0.0) != (g0 == 0.0):
        raise ConjugacyError("Only one of the fields fixes the origin; they are not conjugate near 0")

    f_attr = attracting_sides(side_signs(fe, eps))
    g_attr = attracting_sides(side_signs(ge, eps))
    pairing = choose_pairing(f_attr, g_attr)
    if pairing is None:
        raise ConjugacyError(
            f"No admissible pairing of semi-axes: {fe} has attracting sides {f_attr}, {ge} has {g_attr}"
        )
    orientation = "preserving" if pairing[POSITIVE] == POSITIVE else "reversing"
    logger.info(f"Pairing semi-axes of {fe} and {ge}: orientation {orientation}")

    maps: Dict[int, Tuple] = {}
    for side in (POSITIVE, NEGATIVE):
        maps[side] = (
            normalized_time_map(fe, side, eps, settings),
            normalized_time_map(ge, pairing[side], eps, settings),
        )

    def forward(x: float) -> float:
        x = float(x)
        if x == 0.0:
            return 0.0
        tau_f, tau_g = maps[POSITIVE if x > 0 else NEGATIVE]
        return tau_g.invert(tau_f.evaluate(x))

    def derivative(x: float) -> float:
        x = float(x)
        if x == 0.0:
            return math.nan
        return ge.evaluate(forward(x)) / fe.evaluate(x)

    witness = ConjugacyWitness(
        forward=forward,
        derivative=derivative,
        domain=(-eps, eps),
        smoothness_claim="C0",
        orientation=orientation,
        source="c0:time-maps",
    )
    if not all(m[0].normalized and m[1].normalized for m in maps.values()):
        witness.warnings.append("base-point matching used for a field without a finite jet")
    return witness
