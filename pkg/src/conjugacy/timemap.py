"""
Time maps: antiderivatives of 1/f that turn the flow of f into translation

TimeMap integrates 1/f from a base point on one side of the origin. The
additive constant is either zero (plain base-point form) or the value at the
base point of the regularized antiderivative G of 1/f, which integrates the
principal Laurent part of 1/f in closed form (residue r giving r*log|x|) and
the regular part from 0. Normalized maps of two fields can then be composed
without any further constant matching.

Evaluation walks a table of anchors base*2^-j (cached, lock protected) so
each quadrature panel spans at most a factor of two in x.
"""

from typing import Callable, Dict, Optional, Tuple, Union
import logging
import math
import threading

import numpy as np
from scipy.optimize import brentq

from expr import Expression, as_expression
from jets import Flat, first_nonzero_order, reciprocal_laurent, taylor
from utils.config import Settings
from utils.errors import ConjugacyError, GermKitError, QuadratureError, SingularSeriesError
from .quadrature import integrate, reciprocal_integrand

logger = logging.getLogger(__name__)

POSITIVE = 1
NEGATIVE = -1

# regular-part series: number of terms and the fraction of the radius it is trusted on
REGULAR_TERMS = 32
RADIUS_FRACTION = 0.2
MAX_INWARD_ANCHORS = 1000


def side_sign(side: Union[int, str]) -> int:
    if side in (1, "positive", "+"):
        return POSITIVE
    if side in (-1, "negative", "-"):
        return NEGATIVE
    raise ValueError(f"Unknown side {side!r}; expected positive or negative")


def _bracket_root(func: Callable[[float], float], lo: float, hi: float, scale: float, settings: Settings) -> float:
    return brentq(
        func,
        lo,
        hi,
        xtol=settings.invert_tol * max(scale, 1e-300),
        rtol=4 * np.finfo(float).eps,
        maxiter=200,
    )


class TimeMap:
    """tau(x) = offset + integral from base_point to x of dy/f(y), on one side of 0"""

    def __init__(
        self,
        field: Union[str, Expression],
        base_point: float,
        side: Union[int, str],
        offset: float = 0.0,
        settings: Optional[Settings] = None,
        normalized: bool = False,
    ):
        self.field = as_expression(field)
        self.side = side_sign(side)
        self.base_point = float(base_point)
        self.offset = float(offset)
        self.normalized = normalized
        self.settings = settings or Settings()
        if self.base_point * self.side <= 0:
            raise ConjugacyError(f"Base point {self.base_point!r} is not on the {self.side:+d} side")
        if self.field.evaluate(self.base_point) == 0.0:
            raise ConjugacyError(f"{self.field} vanishes at the base point {self.base_point!r}")
        self._integrand = reciprocal_integrand(self.field)
        self._values: Dict[int, float] = {0: self.offset}
        self._lo = 0
        self._hi = 0
        self._lock = threading.Lock()

    def anchor(self, j: int) -> float:
        return self.base_point * 2.0 ** (-j)

    def _anchor_value(self, j: int) -> float:
        with self._lock:
            while j > self._hi:
                a, b = self.anchor(self._hi), self.anchor(self._hi + 1)
                self._values[self._hi + 1] = self._values[self._hi] + integrate(self._integrand, a, b, self.settings)
                self._hi += 1
            while j < self._lo:
                a, b = self.anchor(self._lo), self.anchor(self._lo - 1)
                self._values[self._lo - 1] = self._values[self._lo] + integrate(self._integrand, a, b, self.settings)
                self._lo -= 1
            return self._values[j]

    def _anchor_index(self, x: float) -> int:
        """Index of an anchor at least as far from 0 as x, within a factor of two"""
        j = math.floor(math.log2(self.base_point / x))
        while abs(self.anchor(j)) < abs(x):
            j -= 1
        return j

    def evaluate(self, x: float) -> float:
        x = float(x)
        if x * self.side <= 0:
            raise ConjugacyError(f"Time map on the {self.side:+d} side evaluated at {x!r}")
        j = self._anchor_index(x)
        return self._anchor_value(j) + integrate(self._integrand, self.anchor(j), x, self.settings)

    def __call__(self, x: float) -> float:
        return self.evaluate(x)

    def derivative(self, x: float) -> float:
        return 1.0 / self.field.evaluate(float(x))

    def invert(self, tau: float) -> float:
        """
        The point x on this side with tau(x) = tau.

        Brackets come from the anchor table; brentq refines and one Newton step
        (tau' = 1/f) polishes.
        """
        tau = float(tau)
        v0 = self._anchor_value(0)
        if tau == v0:
            return self.base_point
        inward_increasing = self._anchor_value(1) > v0
        step = 1 if (tau > v0) == inward_increasing else -1

        j = 0
        vj = v0
        while True:
            nj = j + step
            if nj > MAX_INWARD_ANCHORS or abs(self.anchor(nj)) > self.settings.x_max:
                raise ConjugacyError(f"Time value {tau!r} is outside the range of the time map of {self.field}")
            try:
                vn = self._anchor_value(nj)
            except GermKitError as e:
                raise ConjugacyError(f"Time value {tau!r} is beyond the reach of the time map of {self.field}: {e}")
            if (vn - tau) * (vj - tau) <= 0:
                break
            if step > 0 and vn == vj:
                raise ConjugacyError(f"Time map of {self.field} saturates before reaching {tau!r}")
            j, vj = nj, vn

        lo, hi = sorted((self.anchor(j), self.anchor(nj)))
        x = _bracket_root(lambda y: self.evaluate(y) - tau, lo, hi, max(abs(lo), abs(hi)), self.settings)

        polished = x - (self.evaluate(x) - tau) * self.field.evaluate(x)
        if lo <= polished <= hi:
            x = polished
        return x

    def to_dict(self) -> Dict[str, float]:
        return {
            'field': str(self.field),
            'base_point': self.base_point,
            'side': self.side,
            'offset': self.offset,
            'normalized': self.normalized,
        }


class MonomialTimeMap:
    """Closed-form normalized time map of the model field b*x^k"""

    def __init__(self, b: float, k: int, side: Union[int, str]):
        if b == 0.0:
            raise ConjugacyError("Model coefficient must be nonzero")
        self.b = float(b)
        self.k = int(k)
        self.side = side_sign(side)

    def evaluate(self, y: float) -> float:
        y = float(y)
        if self.k == 0:
            return y / self.b
        if y * self.side <= 0:
            raise ConjugacyError(f"Model time map on the {self.side:+d} side evaluated at {y!r}")
        if self.k == 1:
            return math.log(abs(y)) / self.b
        return y ** (1 - self.k) / (self.b * (1 - self.k))

    def __call__(self, y: float) -> float:
        return self.evaluate(y)

    def derivative(self, y: float) -> float:
        return 1.0 / (self.b * float(y) ** self.k)

    def invert(self, tau: float) -> float:
        tau = float(tau)
        if self.k == 0:
            return self.b * tau
        if self.k == 1:
            try:
                return self.side * math.exp(self.b * tau)
            except OverflowError:
                raise ConjugacyError(f"Model time value {tau!r} escapes to infinity")
        power = self.b * (1 - self.k) * tau * self.side ** (1 - self.k)
        if power <= 0.0:
            raise ConjugacyError(f"Model time value {tau!r} is not reached on the {self.side:+d} side")
        return self.side * power ** (1.0 / (1 - self.k))


class RectifyingMap:
    """H(x) = integral from 0 to x of scale/f, for f(0) != 0"""

    def __init__(self, field: Union[str, Expression], scale: float = 1.0, settings: Optional[Settings] = None):
        self.field = as_expression(field)
        self.scale = float(scale)
        self.settings = settings or Settings()
        self.f0 = self.field.evaluate(0.0)
        if self.f0 == 0.0:
            raise ConjugacyError(f"{self.field} vanishes at 0; the origin is not a regular point")
        self._integrand = reciprocal_integrand(self.field, self.scale)

    def evaluate(self, x: float) -> float:
        return integrate(self._integrand, 0.0, float(x), self.settings)

    def __call__(self, x: float) -> float:
        return self.evaluate(x)

    def derivative(self, x: float) -> float:
        return self.scale / self.field.evaluate(float(x))

    def invert(self, value: float) -> float:
        value = float(value)
        if value == 0.0:
            return 0.0
        direction = math.copysign(1.0, value) * math.copysign(1.0, self.scale / self.f0)
        lo, width = 0.0, 0.05
        while True:
            hi = direction * width
            if abs(hi) > self.settings.x_max:
                raise ConjugacyError(f"Value {value!r} is outside the range of the rectifying map of {self.field}")
            try:
                h = self.evaluate(hi)
            except QuadratureError as e:
                raise ConjugacyError(f"Value {value!r} is beyond the reach of the rectifying map: {e}")
            if (h - value) * math.copysign(1.0, value) >= 0:
                break
            lo, width = hi, width * 2.0
        a, b = sorted((lo, hi))
        return _bracket_root(lambda y: self.evaluate(y) - value, a, b, max(abs(a), abs(b)), self.settings)


def time_map(
    f: Union[str, Expression],
    base: float,
    side: Union[int, str],
    settings: Optional[Settings] = None,
) -> TimeMap:
    """Plain time map tau(x) = integral from base to x of dy/f(y)"""
    return TimeMap(f, base, side, 0.0, settings)


def _laurent_data(f: Expression, settings: Settings) -> Optional[Tuple[int, np.ndarray]]:
    """(k, w) with 1/f = sum w_i x^(i-k), or None without a finite jet"""
    try:
        k = first_nonzero_order(taylor(f, settings.max_order), settings.zero_tol)
        if isinstance(k, Flat):
            return None
        s = taylor(f, 2 * k + REGULAR_TERMS)
        return k, reciprocal_laurent(s, k).coeffs
    except SingularSeriesError as e:
        logger.debug(f"No Laurent data for {f}: {e}")
        return None


def _radius_estimate(r: np.ndarray) -> float:
    """Root-test estimate of the convergence radius from the tail of r"""
    m0 = max(1, len(r) // 2)
    radii = [abs(r[m]) ** (-1.0 / m) for m in range(m0, len(r)) if r[m] != 0.0]
    return min(radii) if radii else math.inf


def regularized_antiderivative(
    f: Union[str, Expression],
    x: float,
    settings: Optional[Settings] = None,
) -> Optional[float]:
    """
    G(x) for 1/f = sum_i w_i x^(i-k):

        sum_{i<k-1} w_i x^(i-k+1)/(i-k+1) + w_{k-1} log|x| + integral_0^x R

    where R is the regular part. R is integrated by its series on [0, delta]
    (delta a fifth of the estimated radius) and by quadrature beyond.
    Returns None when f has no finite jet at 0.
    """
    settings = settings or Settings()
    e = as_expression(f)
    data = _laurent_data(e, settings)
    if data is None:
        return None
    k, w = data
    x = float(x)

    principal = sum(w[i] * x ** (i - k + 1) / (i - k + 1) for i in range(0, k - 1))
    log_term = w[k - 1] * math.log(abs(x)) if k >= 1 else 0.0

    r = w[k:]
    delta = math.copysign(min(abs(x), RADIUS_FRACTION * _radius_estimate(r)), x)
    series_part = sum(r[m] * delta ** (m + 1) / (m + 1) for m in range(len(r)))

    quad_part = 0.0
    if delta != x:
        def regular(t: float) -> float:
            v = e.evaluate(t)
            if v == 0.0:
                raise QuadratureError(f"{e} vanishes at {t!r}")
            return 1.0 / v - sum(w[i] * t ** (i - k) for i in range(k))
        quad_part = integrate(regular, delta, x, settings)

    return principal + log_term + series_part + quad_part


def normalized_time_map(
    f: Union[str, Expression],
    side: Union[int, str],
    eps: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> TimeMap:
    """
    Time map based at side*eps/2 whose constant is G(base).

    Falls back to the plain base-point form (offset 0) when f has no
    finite jet at 0.
    """
    settings = settings or Settings()
    eps = eps if eps is not None else settings.eps
    sgn = side_sign(side)
    base = sgn * eps / 2.0
    e = as_expression(f)
    offset = regularized_antiderivative(e, base, settings)
    if offset is None:
        logger.warning(f"{e} has no finite jet at 0; using base-point matching at {base!r}")
        return TimeMap(e, base, sgn, 0.0, settings, normalized=False)
    return TimeMap(e, base, sgn, offset, settings, normalized=True)
