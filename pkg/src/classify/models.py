"""
Classification result types

GermClassification collects everything known about a germ at the origin;
NormalForm is one entry of the local model tables (C0, C1, Cinf; general or
tangent to the identity).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple
import logging

from jets import TruncatedSeries

logger = logging.getLogger(__name__)

REGULAR = "Regular"
HYPERBOLIC = "Hyperbolic"
DEGENERATE = "Degenerate"
FLAT = "Flat"
ZERO_FIELD = "ZeroField"

FINITE_KINDS = (REGULAR, HYPERBOLIC, DEGENERATE)

C0_CLASSES = ("regular", "attracting", "repelling", "semi-stable-right", "semi-stable-left")
RELATIONS = ("C0", "C1", "Cinf")


def _fmt(value: float) -> str:
    return "{:.12g}".format(value)


@dataclass(frozen=True)
class NormalFormTerm:
    coefficient: float
    power: int
    structural: bool = False  # a +-1 slot fixed by the table, printed without a coefficient

    def render(self) -> str:
        mono = "" if self.power == 0 else ("x" if self.power == 1 else f"x^{self.power}")
        if self.structural:
            body = mono or "1"
            return body
        if not mono:
            return _fmt(abs(self.coefficient))
        return f"{_fmt(abs(self.coefficient))}*{mono}"


@dataclass(frozen=True)
class NormalForm:
    """A local model from the C0/C1/Cinf tables"""

    relation: str  # C0, C1, Cinf
    tangent_to_identity: bool
    terms: Tuple[NormalFormTerm, ...]

    @property
    def degree(self) -> int:
        return max(t.power for t in self.terms)

    @property
    def coefficients(self) -> TruncatedSeries:
        c = [0.0] * (self.degree + 1)
        for t in self.terms:
            c[t.power] += t.coefficient
        return TruncatedSeries.from_coeffs(c)

    def to_text(self) -> str:
        """Re-parseable text, e.g. 'x^2 + 1*x^3' or '-x^3 - 0.5*x^5'"""
        parts: List[str] = []
        for i, t in enumerate(self.terms):
            body = t.render()
            negative = t.coefficient < 0
            if i == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def evaluate(self, x: float) -> float:
        return sum(t.coefficient * x ** t.power for t in self.terms)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'relation': self.relation,
            'tangent_to_identity': self.tangent_to_identity,
            'text': self.to_text(),
            'coefficients': self.coefficients.to_json(),
        }

    def __str__(self):
        return self.to_text()


@dataclass
class GermClassification:
    """Local invariants of f(x)d/dx at 0"""

    kind: str  # Regular, Hyperbolic, Degenerate, Flat, ZeroField
    k: int
    a: float
    sign: int
    c0_class: Optional[str]
    checked_order: int
    d: Optional[float] = None
    modulus_general: Optional[float] = None  # d / a^2, the general Cinf modulus
    residue: Optional[float] = None
    determinacy_c1: Optional[int] = None
    determinacy_cinf: Optional[int] = None
    change: Optional[TruncatedSeries] = field(default=None, repr=False)
    series: Optional[TruncatedSeries] = field(default=None, repr=False)
    field_text: str = ""
    warnings: List[str] = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return self.kind in FINITE_KINDS

    def to_dict(self, normal_forms: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
        """Serialize; optional keys appear only when they apply to the kind"""
        doc: Dict[str, Any] = {
            'field': self.field_text,
            'kind': self.kind,
            'k': self.k,
            'a': self.a,
            'sign': self.sign,
            'c0_class': self.c0_class,
            'checked_order': self.checked_order,
        }
        if self.determinacy_c1 is not None:
            doc['determinacy_c1'] = self.determinacy_c1
        if self.determinacy_cinf is not None:
            doc['determinacy_cinf'] = self.determinacy_cinf
        if self.d is not None:
            doc['d'] = self.d
            doc['modulus_general'] = self.modulus_general
            doc['residue'] = self.residue
        if self.change is not None:
            doc['change'] = self.change.to_json()
        if self.series is not None:
            doc['jet'] = self.series.to_json()
        if normal_forms is not None:
            doc['normal_forms'] = normal_forms
        if self.warnings:
            doc['warnings'] = list(self.warnings)
        return doc
