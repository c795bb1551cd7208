"""
Elementary functions of truncated series.

Each function maps the series of u to the series of F(u) through the
same order, using the derivative recurrence of F (u*w' = p*u'*w for powers,
w' = u'*w for exp, and so on). No finite differences are involved.
"""

import math
from typing import Tuple

import numpy as np

from utils.errors import SingularSeriesError
from .series import TruncatedSeries


def exp_series(u: TruncatedSeries) -> TruncatedSeries:
    c = u.coeffs
    n = u.order
    w = np.zeros(n + 1)
    w[0] = math.exp(c[0])
    for m in range(1, n + 1):
        j = np.arange(1, m + 1)
        w[m] = np.dot(j * c[1 : m + 1], w[m - j]) / m
    return TruncatedSeries(w)


def sin_cos_series(u: TruncatedSeries) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """Series of sin(u) and cos(u), computed jointly"""
    c = u.coeffs
    n = u.order
    s = np.zeros(n + 1)
    k = np.zeros(n + 1)
    s[0] = math.sin(c[0])
    k[0] = math.cos(c[0])
    for m in range(1, n + 1):
        j = np.arange(1, m + 1)
        weights = j * c[1 : m + 1]
        s[m] = np.dot(weights, k[m - j]) / m
        k[m] = -np.dot(weights, s[m - j]) / m
    return TruncatedSeries(s), TruncatedSeries(k)


def real_power(u: TruncatedSeries, p: float) -> TruncatedSeries:
    """u^p for real p; needs u_0 > 0"""
    c = u.coeffs
    if c[0] <= 0.0:
        raise SingularSeriesError(
            f"Power {p!r} of a series with constant term {c[0]!r} has no Taylor expansion"
        )
    n = u.order
    w = np.zeros(n + 1)
    w[0] = c[0] ** p
    for m in range(1, n + 1):
        j = np.arange(1, m + 1)
        w[m] = np.dot((p * j - (m - j)) * c[1 : m + 1], w[m - j]) / (m * c[0])
    return TruncatedSeries(w)


def sqrt_series(u: TruncatedSeries) -> TruncatedSeries:
    return real_power(u, 0.5)


def log_series(u: TruncatedSeries) -> TruncatedSeries:
    if u[0] <= 0.0:
        raise SingularSeriesError(f"log of a series with constant term {u[0]!r}")
    if u.order == 0:
        return TruncatedSeries.constant(math.log(u[0]), 0)
    return u.derive().divide(u.truncate(u.order - 1)).integrate(math.log(u[0]))


def atan_series(u: TruncatedSeries) -> TruncatedSeries:
    if u.order == 0:
        return TruncatedSeries.constant(math.atan(u[0]), 0)
    head = u.truncate(u.order - 1)
    denom = head.mul(head) + 1.0
    return u.derive().divide(denom).integrate(math.atan(u[0]))


def apply_function(name: str, u: TruncatedSeries) -> TruncatedSeries:
    """Dispatch by the expression function name"""
    if name == "exp":
        return exp_series(u)
    if name == "sin":
        return sin_cos_series(u)[0]
    if name == "cos":
        return sin_cos_series(u)[1]
    if name == "log":
        return log_series(u)
    if name == "sqrt":
        return sqrt_series(u)
    if name == "atan":
        return atan_series(u)
    raise ValueError(f"No series rule for function {name!r}")
