"""
Truncated power series at the origin

A TruncatedSeries holds c_0..c_N with c_i = f^(i)(0)/i!. Arithmetic is
exact modulo x^(N+1); binary operations truncate to the smaller order.
"""

from dataclasses import dataclass
from typing import List, Sequence, Union
import logging

import numpy as np

from utils.errors import InsufficientOrderError, SingularSeriesError

logger = logging.getLogger(__name__)

Number = Union[int, float]

# constant terms below this (relative to the largest coefficient) count as zero
_SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class Flat:
    """Every coefficient through checked_order failed the zero test"""
    checked_order: int

    def __str__(self):
        return f"Flat(checked through order {self.checked_order})"


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Taylor coefficients c_0..c_N of a germ; immutable"""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=float).reshape(-1)
        if arr.size == 0:
            raise ValueError("A series needs at least the constant term")
        if not np.all(np.isfinite(arr)):
            raise SingularSeriesError("Series coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, value: Number, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @classmethod
    def identity(cls, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1)
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def monomial(cls, coefficient: Number, power: int, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1)
        if power <= order:
            c[power] = coefficient
        return cls(c)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Number], order: int = None) -> "TruncatedSeries":
        """Build from a coefficient list, padding with zeros or truncating to order"""
        c = np.array(coeffs, dtype=float)
        if order is None:
            return cls(c)
        out = np.zeros(order + 1)
        n = min(len(c), order + 1)
        out[:n] = c[:n]
        return cls(out)

    # basic protocol -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def to_list(self) -> List[float]:
        return [float(c) for c in self.coeffs]

    def to_json(self) -> List[float]:
        """Constant term first"""
        return self.to_list()

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], rtol=0.0, atol=atol))

    def scale_magnitude(self) -> float:
        return float(max(1.0, np.max(np.abs(self.coeffs))))

    def __repr__(self):
        return f"TruncatedSeries({self.to_list()})"

    # truncation ---------------------------------------------------------

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise InsufficientOrderError(f"Cannot truncate order {self.order} series to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def extend(self, order: int) -> "TruncatedSeries":
        """Zero-pad to a higher order; only valid when the series is a polynomial"""
        if order <= self.order:
            return self.truncate(order)
        return TruncatedSeries.from_coeffs(self.coeffs, order)

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Coefficients of s / x^k, assuming c_0..c_{k-1} vanish"""
        if k > self.order:
            raise InsufficientOrderError(f"Cannot divide an order {self.order} series by x^{k}")
        return TruncatedSeries(self.coeffs[k:])

    def valuation(self, tol: float = 0.0) -> int:
        """Index of the first coefficient with |c| > tol*scale, or order+1"""
        scale = self.scale_magnitude()
        for i, c in enumerate(self.coeffs):
            if abs(c) > tol * scale:
                return i
        return self.order + 1

    # arithmetic -----------------------------------------------------------

    def _pair(self, other: "TruncatedSeries"):
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        a, b, _ = self._pair(other)
        return TruncatedSeries(a + b)

    def sub(self, other: "TruncatedSeries") -> "TruncatedSeries":
        a, b, _ = self._pair(other)
        return TruncatedSeries(a - b)

    def scale(self, factor: Number) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs * float(factor))

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        a, b, n = self._pair(other)
        return TruncatedSeries(np.convolve(a, b)[: n + 1])

    def reciprocal(self) -> "TruncatedSeries":
        """1/s; requires a nonzero constant term"""
        c = self.coeffs
        if abs(c[0]) <= _SINGULAR_TOL * self.scale_magnitude():
            raise SingularSeriesError("Reciprocal of a series with zero constant term")
        n = self.order
        r = np.zeros(n + 1)
        r[0] = 1.0 / c[0]
        for m in range(1, n + 1):
            r[m] = -np.dot(c[1 : m + 1], r[m - 1 :: -1][:m]) / c[0]
        return TruncatedSeries(r)

    def divide(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.mul(other.reciprocal())

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """s(t) for an inner series t with zero constant term (Horner scheme)"""
        if abs(inner.coeffs[0]) > _SINGULAR_TOL * inner.scale_magnitude():
            raise SingularSeriesError("Composition requires an inner series with zero constant term")
        n = min(self.order, inner.order)
        t = TruncatedSeries(np.concatenate(([0.0], inner.coeffs[1 : n + 1])))
        result = TruncatedSeries.constant(self.coeffs[n], n)
        for i in range(n - 1, -1, -1):
            prod = result.mul(t)
            bumped = prod.coeffs.copy()
            bumped[0] += self.coeffs[i]
            result = TruncatedSeries(bumped)
        return result

    def derive(self) -> "TruncatedSeries":
        """Derivative; result has order N-1"""
        if self.order < 1:
            raise InsufficientOrderError("Derivative of an order-0 series has no valid coefficients")
        k = np.arange(1, self.order + 1, dtype=float)
        return TruncatedSeries(self.coeffs[1:] * k)

    def integrate(self, constant: float = 0.0) -> "TruncatedSeries":
        """Antiderivative with the given constant term; result has order N+1"""
        k = np.arange(1, self.order + 2, dtype=float)
        return TruncatedSeries(np.concatenate(([constant], self.coeffs / k)))

    def power(self, n: int) -> "TruncatedSeries":
        """Integer power by repeated squaring; negative powers need c_0 != 0"""
        if n < 0:
            return self.reciprocal().power(-n)
        result = TruncatedSeries.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base)
            n >>= 1
        return result

    def evaluate(self, x: float) -> float:
        """Value of the truncated polynomial at x"""
        return float(np.polynomial.polynomial.polyval(x, self.coeffs))

    # operator sugar -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.add(other)
        c = self.coeffs.copy()
        c[0] += float(other)
        return TruncatedSeries(c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.sub(other)
        return self + (-float(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1.0)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.divide(other)
        return self.scale(1.0 / float(other))


def first_nonzero_order(s: TruncatedSeries, tol: float = 1e-9) -> Union[int, Flat]:
    """
    Smallest k with |c_k| > tol * max(1, max|c_i|).

    Returns:
        k, or Flat naming the truncation order checked
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    threshold = tol * s.scale_magnitude()
    for k, c in enumerate(s.coeffs):
        if abs(c) > threshold:
            return k
    return Flat(s.order)


def reciprocal_laurent(s: TruncatedSeries, k: int) -> TruncatedSeries:
    """
    Coefficients w with 1/s = sum_i w_i x^(i-k) for a germ of order k.

    The result has order N-k, so the x^-1 coefficient w_{k-1} needs N >= 2k-1.
    """
    return s.shift_down(k).reciprocal()


def residue_of_reciprocal(s: TruncatedSeries, k: int) -> float:
    """Coefficient of x^-1 in the Laurent expansion of 1/s"""
    if k < 1:
        return 0.0
    if s.order < 2 * k - 1:
        raise InsufficientOrderError(f"Residue of an order-{k} germ needs truncation order >= {2 * k - 1}")
    return float(reciprocal_laurent(s, k)[k - 1])


def pullback(s: TruncatedSeries, psi: TruncatedSeries) -> TruncatedSeries:
    """
    Jet of (1/psi') * s(psi), the field s seen through the coordinate change psi.

    psi is treated as an exact polynomial (psi(0)=0, psi'(0)!=0), so its
    derivative is known through the full order of s.
    """
    n = s.order
    if abs(psi[0]) > 0.0:
        raise SingularSeriesError("Coordinate change must fix the origin")
    if psi.order < 1 or psi[1] == 0.0:
        raise SingularSeriesError("Coordinate change must have psi'(0) != 0")
    full = psi.extend(max(n + 1, psi.order))
    dpsi = full.derive().truncate(n)
    return s.compose(full.truncate(n)).mul(dpsi.reciprocal())


