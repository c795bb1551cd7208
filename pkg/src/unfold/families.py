"""
Unfolding families of degenerate germs

Q and Q1 unfold x^k and a*x^k up to C1 conjugacy, F and F1 unfold the
Belitskii models +-x^k + d*x^(2k-1) and a*x^k + d*x^(2k-1). Every family is
a base polynomial plus sum_i lambda_i * x^(e_i) over its monomial schedule.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence
import logging

import numpy as np

from jets import TruncatedSeries
from utils.errors import UsageError

logger = logging.getLogger(__name__)

KINDS = ("Q", "Q1", "F", "F1")
RANK_TOL = 1e-12


@dataclass
class UnfoldingFamily:
    """Polynomial family base + sum_i lambda_i x^(schedule_i)"""

    kind: str  # Q, Q1, F, F1
    k: int
    a: Optional[float] = None
    d: Optional[float] = None
    sign: int = 1
    sweep_d: bool = False
    monomial_schedule: List[int] = field(default_factory=list)

    @property
    def param_count(self) -> int:
        return len(self.monomial_schedule)

    @property
    def degree(self) -> int:
        return max(self.base_coefficients().nonzero()[0].max(), max(self.monomial_schedule, default=0))

    def base_coefficients(self) -> np.ndarray:
        """Coefficients of the germ at lambda = 0, constant term first"""
        top = 2 * self.k - 1 if self.kind in ("F", "F1") else self.k
        c = np.zeros(top + 1)
        if self.kind == "Q":
            c[self.k] = 1.0
        elif self.kind == "Q1":
            c[self.k] = self.a
        elif self.kind == "F":
            c[self.k] = float(self.sign)
            c[top] += self.d
        else:
            c[self.k] = self.a
            c[top] += self.d
        return c

    def parameter_names(self) -> List[str]:
        return [f"lambda_{i + 1}" for i in range(self.param_count)]

    def describe(self) -> str:
        """Family as text, e.g. 'x^2 + lambda_1*x'"""
        terms = [polynomial_text(self.base_coefficients())]
        for name, e in zip(self.parameter_names(), self.monomial_schedule):
            terms.append(name if e == 0 else f"{name}*{_monomial(e)}")
        return " + ".join(terms)

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'kind': self.kind,
            'k': self.k,
            'param_count': self.param_count,
            'monomial_schedule': list(self.monomial_schedule),
            'family': self.describe(),
        }
        if self.a is not None:
            doc['a'] = self.a
        if self.d is not None:
            doc['d'] = self.d
        if self.kind == "F":
            doc['sign'] = self.sign
        if self.sweep_d:
            doc['sweep_d'] = True
        return doc


def _monomial(e: int) -> str:
    return "x" if e == 1 else f"x^{e}"


def polynomial_text(coeffs: Sequence[float]) -> str:
    """Re-parseable text of a coefficient vector, constant term first"""
    parts = []
    for e, c in enumerate(coeffs):
        c = float(c)
        if c == 0.0:
            continue
        if e == 0:
            parts.append(f"{c!r}")
        else:
            parts.append(f"{c!r}*{_monomial(e)}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def build_unfolding(
    kind: str,
    k: int,
    a: Optional[float] = None,
    d: Optional[float] = None,
    sign: int = 1,
    sweep_d: bool = False,
) -> UnfoldingFamily:
    """
    Build one of the families Q, Q1, F, F1.

    Q lacks the x^k direction since multiples of x^k are C1 conjugate to x^k.
    F and F1 carry k-1 parameters on x^(k-2), ..., 1 and keep d fixed unless
    sweep_d adds a parameter on x^(2k-1).

    Raises:
        UsageError: unknown kind, k < 2, missing a (Q1, F1) or d (F, F1)
    """
    if kind not in KINDS:
        raise UsageError(f"Unknown family {kind!r}; expected one of {KINDS}")
    if k < 2:
        raise UsageError(f"Unfoldings need k >= 2, got {k}")
    if kind in ("Q1", "F1"):
        if a is None:
            raise UsageError(f"Family {kind} needs the leading coefficient a")
        if a == 0.0:
            raise UsageError("Leading coefficient a must be nonzero")
    if kind in ("F", "F1") and d is None:
        raise UsageError(f"Family {kind} needs the modulus d")
    if kind == "F" and sign not in (1, -1):
        raise UsageError(f"Sign must be +1 or -1, got {sign}")
    if sweep_d and kind not in ("F", "F1"):
        raise UsageError("Only F and F1 carry a modulus to sweep")

    if kind == "Q":
        schedule = list(range(1, k))
    elif kind == "Q1":
        schedule = list(range(1, k)) + [k]
    else:
        schedule = [k - 1 - i for i in range(1, k)]
        if sweep_d:
            schedule.append(2 * k - 1)

    family = UnfoldingFamily(
        kind=kind,
        k=k,
        a=float(a) if a is not None else None,
        d=float(d) if d is not None else None,
        sign=sign,
        sweep_d=sweep_d,
        monomial_schedule=schedule,
    )
    logger.debug(f"Built unfolding {family.describe()}")
    return family


def instantiate(family: UnfoldingFamily, lambdas: Sequence[float]) -> TruncatedSeries:
    """Coefficient vector of the family at the given parameters"""
    if len(lambdas) != family.param_count:
        raise UsageError(
            f"Family {family.kind} has {family.param_count} parameters, got {len(lambdas)}"
        )
    c = family.base_coefficients().copy()
    for value, e in zip(lambdas, family.monomial_schedule):
        c[e] += float(value)
    return TruncatedSeries.from_coeffs(c)


def transversality_directions(family: UnfoldingFamily) -> np.ndarray:
    """Rows are the coefficient vectors of d/d lambda_i at lambda = 0"""
    width = len(family.base_coefficients())
    rows = np.zeros((family.param_count, width))
    for i, e in enumerate(family.monomial_schedule):
        rows[i, e] = 1.0
    return rows


def check_transversality(family: UnfoldingFamily) -> Dict[str, Any]:
    """
    Finite check of the parameter directions.

    Q/Q1: directions reduced modulo x^(k+1) must be independent, so none lies
    in the span of higher monomials. F/F1: the directions on 1, ..., x^(k-2)
    must be independent.
    """
    rows = transversality_directions(family)
    if family.kind in ("Q", "Q1"):
        cutoff = family.k + 1
    else:
        cutoff = family.k - 1
    low = rows[:, :cutoff]
    if family.sweep_d:
        low = low[:-1]
    expected = low.shape[0]
    rank = int(np.linalg.matrix_rank(low, tol=RANK_TOL)) if expected else 0
    outside_higher = bool(np.all(np.abs(low).sum(axis=1) > 0)) if expected else True
    report = {
        'kind': family.kind,
        'k': family.k,
        'rank': rank,
        'directions': expected,
        'independent': rank == expected,
        'outside_higher_terms': outside_higher,
    }
    report['ok'] = report['independent'] and outside_higher
    return report
