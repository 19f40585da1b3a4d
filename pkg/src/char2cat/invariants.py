"""Invariant-space dimensions by three independent routes.

``d(m, n)`` counts the invariants in the ``2m``-th tensor power of the
top simple at level ``n``.  The three routes are: a binomial recursion in
the level, closed walks on a path graph with ``2**(n+1) - 1`` nodes, and
the coefficients of a generating function defined by an exact rational
functional equation.  A truncated Clebsch-Gordan fusion on a finite label
set provides the quantum-dimension bookkeeping used in the dimension
totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import LabelOutOfRange, OrderTooLarge

__all__ = [
    "SERIES_ORDER_CAP",
    "PowerSeries",
    "path_count",
    "d_recursive",
    "series_f",
    "hom_invariants_dim",
    "verlinde_product",
    "verlinde_qdim",
]

SERIES_ORDER_CAP = 256


@dataclass(frozen=True)
class PowerSeries:
    """Exact rational coefficients ``c_0 .. c_order`` with explicit
    truncation order."""

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must equal order + 1")

    def coefficient(self, m: int) -> Fraction:
        if not 0 <= m <= self.order:
            raise IndexError(f"coefficient {m} beyond truncation order {self.order}")
        return self.coeffs[m]


def path_count(nodes: int, length: int) -> int:
    """Closed walks of ``length`` steps from the left end of the path
    graph on ``nodes`` vertices, with arbitrary-precision integers."""
    if nodes < 1:
        raise ValueError(f"need at least one node, got {nodes}")
    if length < 0:
        raise ValueError(f"length must be nonnegative, got {length}")
    adj = np.zeros((nodes, nodes), dtype=object)
    for i in range(nodes - 1):
        adj[i, i + 1] = 1
        adj[i + 1, i] = 1
    power = np.identity(nodes, dtype=object)
    base = adj
    e = length
    while e:
        if e & 1:
            power = power @ base
        e >>= 1
        if e:
            base = base @ base
    return int(power[0, 0])


@lru_cache(maxsize=None)
def d_recursive(m: int, n: int) -> int:
    """Binomial recursion in the level:
    ``d(m, n) = sum_s C(m-1, 2s) 2^(m-1-2s) d(s, n-1)``."""
    if m < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if m == 0:
        return 1
    if n == 0:
        return 0
    total = 0
    for s in range(0, (m - 1) // 2 + 1):
        total += math.comb(m - 1, 2 * s) * (1 << (m - 1 - 2 * s)) * d_recursive(s, n - 1)
    return total


def _mul_trunc(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if i + j > order:
                    break
                if y:
                    out[i + j] += x * y
    return out


def series_f(n: int, order: int) -> PowerSeries:
    """Generating function of ``d(., n)`` to the given order, via the
    functional equation ``f_n = 1 + z/(1-2z) * f_{n-1}(z^2/(1-2z)^2)``
    in exact rational arithmetic."""
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    if order > SERIES_ORDER_CAP:
        raise OrderTooLarge(
            f"order {order} exceeds the cap SERIES_ORDER_CAP={SERIES_ORDER_CAP}"
        )
    # 1/(1-2z) = sum 2^k z^k, truncated
    geom = [Fraction(1 << k) for k in range(order + 1)]
    z2 = [Fraction(0)] * (order + 1)
    if order >= 2:
        z2[2] = Fraction(1)
    w = _mul_trunc(_mul_trunc(z2, geom, order), geom, order)  # z^2/(1-2z)^2
    coeffs = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(n):
        # compose the previous series with w by Horner in the series ring
        comp = [Fraction(0)] * (order + 1)
        # w has valuation 2, so coefficients beyond order // 2 cannot
        # contribute to the truncation
        for c in reversed(coeffs[: order // 2 + 1]):
            comp = _mul_trunc(comp, w, order)
            comp[0] += c
        pref = _mul_trunc([Fraction(0), Fraction(1)], geom, order)  # z/(1-2z)
        tail = _mul_trunc(pref, comp, order)
        coeffs = [Fraction(1) + tail[0]] + tail[1:]
    return PowerSeries(tuple(coeffs), order)


def hom_invariants_dim(r: int, n: int) -> int:
    """Invariants in the ``r``-th tensor power of the top simple: zero in
    odd powers, ``d(r/2, n)`` in even ones."""
    if r < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if r % 2:
        return 0
    return d_recursive(r // 2, n)


def _check_label(a: int, n: int) -> int:
    top = (1 << (n + 1)) - 2
    if not 0 <= a <= top:
        raise LabelOutOfRange(f"label {a} outside 0..{top} at level {n}")
    return top


def verlinde_product(a: int, b: int, n: int) -> tuple[int, ...]:
    """Truncated Clebsch-Gordan fusion on labels ``0 .. 2**(n+1) - 2``:
    the labels from ``|a-b|`` to ``min(a+b, 2*top - a - b)`` in steps of
    two, as a sorted multiset."""
    top = _check_label(a, n)
    _check_label(b, n)
    lo = abs(a - b)
    hi = min(a + b, 2 * top - a - b)
    return tuple(range(lo, hi + 1, 2))


def verlinde_qdim(a: int, n: int) -> float:
    """Quantum dimension of a label: ``sin((a+1) pi / 2^(n+1)) / sin(pi /
    2^(n+1))``."""
    _check_label(a, n)
    theta = math.pi / (1 << (n + 1))
    return math.sin((a + 1) * theta) / math.sin(theta)
