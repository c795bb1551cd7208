"""
Germ classification under C0, C1 and Cinf conjugacy

classify_germ reads the jet of f at 0 and fills in a GermClassification;
normal_form looks up the local model for a requested relation.
"""

from typing import Dict, Optional, Union
import logging

import numpy as np

from expr import Expression, as_expression
from jets import Flat, first_nonzero_order, taylor
from utils.config import Settings
from utils.errors import DomainError, NotFinitelyDeterminedError, UsageError, ZeroFieldError
from .belitskii import belitskii_reduce, modulus_from_residue
from .models import (
    DEGENERATE,
    FLAT,
    HYPERBOLIC,
    REGULAR,
    RELATIONS,
    ZERO_FIELD,
    GermClassification,
    NormalForm,
    NormalFormTerm,
)

logger = logging.getLogger(__name__)

# flat germs: signs are read on +-[1e-6, 1e-2]
FLAT_SAMPLES = np.geomspace(1e-6, 1e-2, 25)
ZERO_SAMPLES = np.geomspace(1e-6, 0.5, 40)
RESIDUE_CHECK_TOL = 1e-8


def _sign(value: float) -> int:
    return 1 if value > 0 else -1


def c0_class_from_signs(right: int, left: int) -> str:
    """C0 class from the sign of f just right and just left of 0"""
    if right > 0 and left < 0:
        return "repelling"
    if right < 0 and left > 0:
        return "attracting"
    if right > 0:
        return "semi-stable-right"
    return "semi-stable-left"


def c0_class_of(k: int, a: float) -> str:
    if k == 0:
        return "regular"
    right = _sign(a)
    left = right if k % 2 == 0 else -right
    return c0_class_from_signs(right, left)


def cinf_sign(k: int, a: float, rule: str = "stated") -> int:
    """
    Sign of the leading monomial in the general Cinf model.

    "stated": +1 for odd k, sign(a) for even k.
    "orientation": +1 for even k, sign(a) for odd k (the sign x -> -x can remove).
    """
    if k <= 1:
        return 1 if k == 0 else _sign(a)
    if rule == "orientation":
        return 1 if k % 2 == 0 else _sign(a)
    return 1 if k % 2 == 1 else _sign(a)


def _sample_signs(e: Expression, xs: np.ndarray) -> Optional[int]:
    """Common sign of e on xs, or None if it vanishes or changes sign there"""
    signs = set()
    for x in xs:
        try:
            v = e.evaluate(float(x))
        except DomainError:
            continue
        if v == 0.0:
            return None
        signs.add(_sign(v))
    if len(signs) != 1:
        return None
    return signs.pop()


def _vanishes_on_grid(e: Expression) -> bool:
    for x in np.concatenate((ZERO_SAMPLES, -ZERO_SAMPLES)):
        try:
            if e.evaluate(float(x)) != 0.0:
                return False
        except DomainError:
            return False
    return True


def classify_germ(
    f: Union[str, Expression],
    max_order: Optional[int] = None,
    tol: Optional[float] = None,
    settings: Optional[Settings] = None,
    sample_flat: bool = False,
) -> GermClassification:
    """
    Classify f(x)d/dx at the origin.

    Args:
        f: field coefficient, regular at 0 as an expression
        max_order: truncation order of the jet (default from settings)
        tol: relative zero test (default from settings)
        settings: numeric settings
        sample_flat: read the C0 class of a Flat germ from sampled signs

    Returns:
        GermClassification; kind Flat or ZeroField when no coefficient
        survives the zero test
    """
    settings = settings or Settings()
    max_order = max_order if max_order is not None else settings.max_order
    tol = tol if tol is not None else settings.zero_tol
    if max_order < 2:
        raise UsageError("max_order must be at least 2")

    e = as_expression(f)
    s = taylor(e, max_order)
    found = first_nonzero_order(s, tol)

    if isinstance(found, Flat):
        if _vanishes_on_grid(e):
            logger.info(f"{e} vanishes through order {found.checked_order} and on the sample grid")
            return GermClassification(
                kind=ZERO_FIELD, k=0, a=0.0, sign=1, c0_class=None,
                checked_order=found.checked_order, series=s, field_text=str(e),
            )
        c0 = None
        warnings = []
        if sample_flat:
            right = _sample_signs(e, FLAT_SAMPLES)
            left = _sample_signs(e, -FLAT_SAMPLES)
            if right is not None and left is not None:
                c0 = c0_class_from_signs(right, left)
            else:
                warnings.append("sign sampling of the flat germ was inconclusive")
        logger.info(f"{e} is flat through order {found.checked_order}")
        return GermClassification(
            kind=FLAT, k=found.checked_order + 1, a=0.0, sign=1, c0_class=c0,
            checked_order=found.checked_order, series=s, field_text=str(e), warnings=warnings,
        )

    k = found
    a = float(s[k])
    result = GermClassification(
        kind=REGULAR if k == 0 else (HYPERBOLIC if k == 1 else DEGENERATE),
        k=k,
        a=a,
        sign=cinf_sign(k, a, settings.cinf_sign_rule),
        c0_class=c0_class_of(k, a),
        checked_order=s.order,
        determinacy_c1=k,
        determinacy_cinf=k if k < 2 else 2 * k - 1,
        series=s,
        field_text=str(e),
    )

    if k >= 2:
        if s.order < 2 * k - 1:
            s = taylor(e, 2 * k + 1)
            result.series = s
            result.checked_order = s.order
        _, d, change = belitskii_reduce(s, k, tol)
        expected = modulus_from_residue(s, k)
        if abs(d - expected) > RESIDUE_CHECK_TOL * max(1.0, abs(d)):
            message = f"Reduction modulus {d!r} disagrees with residue value {expected!r}"
            logger.warning(message)
            result.warnings.append(message)
        # + 0.0 clears negative zero
        result.d = d + 0.0
        result.modulus_general = d / (a * a) + 0.0
        result.residue = -expected / (a * a) + 0.0
        if k % 2 == 1 and result.sign != _sign(a):
            message = (
                f"Cinf model sign {result.sign:+d} (rule {settings.cinf_sign_rule!r}) reverses the "
                f"orientation of the germ, which is {c0_class_of(k, a)}; the model is conjugate to it only "
                f"through x -> -x"
            )
            logger.warning(message)
            result.warnings.append(message)
        result.change = change

    logger.info(f"Classified {e}: {result.kind} k={k} a={a:.12g}")
    return result


def normal_form(c: GermClassification, relation: str, tti: bool = False) -> NormalForm:
    """
    Local model of a classified germ.

    Raises:
        ZeroFieldError / NotFinitelyDeterminedError for germs with no finite model
    """
    if relation not in RELATIONS:
        raise UsageError(f"Unknown relation {relation!r}; expected one of {RELATIONS}")
    if c.kind == ZERO_FIELD:
        raise ZeroFieldError("The zero field has no finite normal form")
    if c.kind == FLAT:
        raise NotFinitelyDeterminedError(
            f"Flat germ (checked through order {c.checked_order}) has no finite normal form"
        )
    if relation == "C0" and tti:
        raise UsageError("Topological models have no tangent-to-identity variant")

    k, a = c.k, c.a
    T = NormalFormTerm

    if relation == "C0":
        terms = {
            "regular": (T(1.0, 0, True),),
            "attracting": (T(-1.0, 1, True),),
            "repelling": (T(1.0, 1, True),),
            "semi-stable-right": (T(1.0, 2, True),),
            "semi-stable-left": (T(1.0, 2, True),),
        }[c.c0_class]
        return NormalForm("C0", False, terms)

    if c.kind == REGULAR:
        terms = (T(a, 0),) if tti else (T(1.0, 0, True),)
    elif c.kind == HYPERBOLIC:
        terms = (T(a, 1),)
    elif relation == "C1":
        if tti:
            terms = (T(a, k),)
        else:
            lead = 1.0 if k % 2 == 0 else float(_sign(a))
            terms = (T(lead, k, True),)
    elif tti:
        terms = (T(a, k), T(c.d, 2 * k - 1))
    else:
        terms = (T(float(c.sign), k, True), T(c.modulus_general, 2 * k - 1))

    return NormalForm(relation, tti, terms)


def normal_forms_table(c: GermClassification) -> Dict[str, str]:
    """All five model texts keyed as in the classification document"""
    return {
        'c0': normal_form(c, "C0").to_text(),
        'c1': normal_form(c, "C1").to_text(),
        'c1_tti': normal_form(c, "C1", tti=True).to_text(),
        'cinf': normal_form(c, "Cinf").to_text(),
        'cinf_tti': normal_form(c, "Cinf", tti=True).to_text(),
    }


def model_expression(nf: NormalForm) -> Expression:
    """The model as an evaluable field"""
    return as_expression(nf.to_text())


