"""
C1 conjugacies to the local models

rectify_regular handles f(0) != 0, scale_conjugacy relates monomial models,
and c1_conjugator glues normalized time maps of f with the closed-form time
map of its tangent-to-identity model, then checks differentiability at 0 on
difference quotients.
"""

from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import math

from classify import DEGENERATE, REGULAR, classify_germ, normal_form
from expr import Expression, as_expression
from utils.config import Settings
from utils.errors import ConjugacyError, UsageError
from .timemap import NEGATIVE, POSITIVE, MonomialTimeMap, RectifyingMap, normalized_time_map
from .witness import ConjugacyWitness

logger = logging.getLogger(__name__)

# difference quotients closer than this count as equal
QUOTIENT_NOISE = 1e-9
TARGETS = ("general", "tti")


def rectify_regular(
    f: Union[str, Expression],
    target: str = "general",
    eps: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> ConjugacyWitness:
    """
    Rectify a field with f(0) = a != 0.

    general: psi(x) = integral_0^x dt/f(t), conjugating f to 1
    tti:     psi(x) = integral_0^x a/f(t) dt, conjugating f to the constant a
    """
    settings = settings or Settings()
    eps = eps if eps is not None else settings.eps
    if target not in TARGETS:
        raise UsageError(f"Unknown target {target!r}; expected one of {TARGETS}")
    e = as_expression(f)
    a = e.evaluate(0.0)
    if a == 0.0:
        raise ConjugacyError(f"{e} vanishes at 0; rectification needs a regular point")
    scale = 1.0 if target == "general" else a
    h = RectifyingMap(e, scale, settings)
    logger.info(f"Rectifying {e} to the constant {scale:.12g}")
    return ConjugacyWitness(
        forward=h.evaluate,
        derivative=h.derivative,
        domain=(-eps, eps),
        smoothness_claim="Cinf",
        orientation="preserving" if scale / a > 0 else "reversing",
        tangent_to_identity=(target == "tti"),
        source=f"rectify:{target}",
    )


def scale_conjugacy(a: float, b: float, k: int) -> ConjugacyWitness:
    """
    Linear psi(x) = (a/b)^(1/(1-k)) * x with (1/psi') * a * psi^k = b * x^k.

    Raises:
        ConjugacyError: k = 1 with a != b (the hyperbolic coefficient is an
            invariant), or odd k with a/b < 0
    """
    if a == 0.0 or b == 0.0:
        raise UsageError("Scaling needs nonzero coefficients")
    if k < 1:
        raise UsageError(f"Scaling needs k >= 1, got {k}")
    if k == 1:
        if a != b:
            raise ConjugacyError(f"Hyperbolic coefficients {a!r} and {b!r} differ; a*x and b*x are not C1 conjugate")
        factor = 1.0
    else:
        ratio = a / b
        if k % 2 == 1 and ratio < 0:
            raise ConjugacyError(f"For odd k={k}, {a!r}*x^k and {b!r}*x^k have opposite stability")
        factor = math.copysign(abs(ratio) ** (1.0 / (1 - k)), ratio)

    return ConjugacyWitness(
        forward=lambda x: factor * float(x),
        derivative=lambda x: factor,
        domain=(-math.inf, math.inf),
        smoothness_claim="Cinf",
        orientation="preserving" if factor > 0 else "reversing",
        tangent_to_identity=(factor == 1.0),
        source=f"scale:{factor:.12g}",
    )


def c1_limit_check(
    quotients: Dict[str, List[float]],
    tangent_to_identity: bool,
    floor: float = QUOTIENT_NOISE,
) -> Tuple[bool, str]:
    """
    Judge differentiability at 0 from phi(h)/h at decreasing h.

    Each side must settle (successive changes do not grow), both sides must
    agree within the remaining change, and a tangent-to-identity claim needs
    |phi(h)/h - 1| to shrink.
    """
    right, left = quotients['right'], quotients['left']
    tails = []
    for name, q in (('right', right), ('left', left)):
        d1, d2 = abs(q[0] - q[1]), abs(q[1] - q[2])
        if d2 > d1 + floor:
            return False, f"{name} difference quotients do not settle: {q}"
        tails.append(d2)
    if abs(right[-1] - left[-1]) > 2.0 * sum(tails) + floor:
        return False, f"one-sided slopes differ: {right[-1]!r} vs {left[-1]!r}"
    if tangent_to_identity:
        for name, q in (('right', right), ('left', left)):
            gaps = [abs(v - 1.0) for v in q]
            if any(later > earlier + floor for earlier, later in zip(gaps, gaps[1:])):
                return False, f"{name} quotients do not approach 1: {q}"
    return True, ""


def _flatten(quotients: Dict[str, Sequence[float]]) -> List[float]:
    return list(quotients['right']) + list(quotients['left'])


def c1_conjugator(
    f: Union[str, Expression],
    eps: Optional[float] = None,
    tti: bool = False,
    settings: Optional[Settings] = None,
    strict: bool = False,
) -> ConjugacyWitness:
    """
    Witness conjugating f to its C1 model.

    Regular germs are rectified. Otherwise, with k and a from the
    classification, phi1 = T^-1 o tau_f on each side, where tau_f is the
    normalized time map of f and T the closed-form time map of a*x^k; in the
    general case phi1 is followed by the linear scaling onto the monic model.

    Args:
        f: field coefficient
        eps: neighbourhood half-width
        tti: target the tangent-to-identity model a*x^k
        strict: raise instead of downgrading when the C1 check fails

    Raises:
        NotFinitelyDeterminedError / ZeroFieldError: no finite model
        ConjugacyError: strict mode and the C1 check failed
    """
    settings = settings or Settings()
    eps = eps if eps is not None else settings.eps
    e = as_expression(f)
    c = classify_germ(e, settings=settings)
    model = normal_form(c, "C1", tti)  # raises for Flat / ZeroField

    if c.kind == REGULAR:
        return rectify_regular(e, "tti" if tti else "general", eps, settings)

    k, a = c.k, c.a
    maps = {
        side: (normalized_time_map(e, side, eps, settings), MonomialTimeMap(a, k, side))
        for side in (POSITIVE, NEGATIVE)
    }

    def phi1(x: float) -> float:
        x = float(x)
        if x == 0.0:
            return 0.0
        tau_f, tau_model = maps[POSITIVE if x > 0 else NEGATIVE]
        return tau_model.invert(tau_f.evaluate(x))

    def dphi1(x: float) -> float:
        x = float(x)
        if x == 0.0:
            return 1.0
        y = phi1(x)
        return a * y ** k / e.evaluate(x)

    forward, derivative = phi1, dphi1
    orientation = "preserving"
    source = "c1:time-maps"
    if not tti and c.kind == DEGENERATE:
        lead = model.terms[0].coefficient
        if lead != a:
            psi = scale_conjugacy(lead, a, k)
            factor = psi.derivative(0.0)

            def forward(x: float) -> float:
                return factor * phi1(x)

            def derivative(x: float) -> float:
                return factor * dphi1(x)

            orientation = psi.orientation
            source = f"c1:time-maps+{psi.source}"
            logger.info(f"Scaling tangent-to-identity witness by {factor:.12g} onto {model.to_text()}")

    witness = ConjugacyWitness(
        forward=forward,
        derivative=derivative,
        domain=(-eps, eps),
        smoothness_claim="C1",
        orientation=orientation,
        tangent_to_identity=tti,
        source=source,
    )
    if not all(m[0].normalized for m in maps.values()):
        witness.warnings.append("base-point matching used for a field without a finite jet")

    witness.quotients = witness.difference_quotients()
    ok, reason = c1_limit_check(witness.quotients, tti)
    if not ok:
        message = f"C1 check at 0 failed for {e}: {reason}"
        if strict:
            raise ConjugacyError(message, _flatten(witness.quotients))
        logger.warning(f"{message}; downgrading witness to C0")
        witness.smoothness_claim = "C0"
        witness.downgraded = True
        witness.warnings.append(message)
    return witness
