"""Character calculus for rank-one tilting modules in characteristic two.

Characters are finitely supported multiplicity functions on integer
weights, symmetric under negation; only the nonnegative half is stored,
so the symmetry is structural.  The indecomposable characters are
generated by a doubling recursion (the degree-1 and degree-2 characters
convolved with weight-doubled smaller ones); the test-suite validates the
recursion against independently tabulated composition-factor data, and a
mismatch there is treated as a build-stopping failure.

Decomposition into indecomposables is greedy peeling from the highest
weight, which is well defined because each character has its highest
weight with multiplicity one.  The quotient operation drops indices at or
above a threshold, and the evaluation map sends each indecomposable to an
integer polynomial in the degree-1 class, which can then be evaluated on
the top fusion generator.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import IntPoly
from .errors import NotTiltingCharacter
from .chebyshev import eval_poly
from .fusion import FusionElt, fusion_elt, simple_elt

__all__ = [
    "WeightChar",
    "TiltSum",
    "weyl_char",
    "char_mul",
    "twist_char",
    "tilt_char",
    "simple_char",
    "decompose",
    "tilt_tensor_v",
    "tensor_power_decompose",
    "in_T1_polynomial",
    "quotient_reduce",
    "functor_to_fusion",
    "steinberg_dim",
]


@dataclass(frozen=True)
class WeightChar:
    """Symmetric weight multiplicities; ``half`` holds weights >= 0 only.

    Multiplicities may be negative for virtual (non-module) values, which
    are produced by intermediate arithmetic but rejected by ``decompose``.
    """

    half: tuple[tuple[int, int], ...]  # sorted descending (weight, mult), mult != 0

    def __post_init__(self):
        prev = None
        for w, m in self.half:
            if w < 0:
                raise ValueError("stored weights must be nonnegative")
            if m == 0:
                raise ValueError("zero multiplicities must be dropped")
            if prev is not None and w >= prev:
                raise ValueError("weights must be strictly descending")
            prev = w

    @classmethod
    def from_half(cls, mapping: dict[int, int]) -> "WeightChar":
        items = tuple(sorted(((w, m) for w, m in mapping.items() if m != 0), reverse=True))
        return cls(items)

    def half_dict(self) -> dict[int, int]:
        return dict(self.half)

    def full_dict(self) -> dict[int, int]:
        out = {}
        for w, m in self.half:
            out[w] = m
            if w > 0:
                out[-w] = m
        return out

    def multiplicity(self, w: int) -> int:
        return self.half_dict().get(abs(w), 0)

    @property
    def is_zero(self) -> bool:
        return not self.half

    @property
    def highest_weight(self) -> int:
        if not self.half:
            raise ValueError("the zero character has no highest weight")
        return self.half[0][0]

    @property
    def has_negative(self) -> bool:
        return any(m < 0 for _, m in self.half)

    def dim(self) -> int:
        """Total multiplicity over the full (two-sided) support."""
        return sum(m if w == 0 else 2 * m for w, m in self.half)

    def __add__(self, other: "WeightChar") -> "WeightChar":
        out = self.half_dict()
        for w, m in other.half:
            out[w] = out.get(w, 0) + m
        return WeightChar.from_half(out)

    def __sub__(self, other: "WeightChar") -> "WeightChar":
        out = self.half_dict()
        for w, m in other.half:
            out[w] = out.get(w, 0) - m
        return WeightChar.from_half(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return WeightChar(tuple((w, m * other) for w, m in self.half if m * other))
        return char_mul(self, other)

    __rmul__ = __mul__


def weyl_char(m: int) -> WeightChar:
    """Multiplicity one on the weights ``m, m-2, ..., -m``."""
    if m < 0:
        raise ValueError(f"weight must be nonnegative, got {m}")
    return WeightChar.from_half({w: 1 for w in range(m, -1, -2)})


def char_mul(a: WeightChar, b: WeightChar) -> WeightChar:
    """Convolution of the full weight supports (tensor-product character)."""
    fa = a.full_dict()
    fb = b.full_dict()
    out: dict[int, int] = {}
    for wa, ma in fa.items():
        for wb, mb in fb.items():
            w = wa + wb
            if w >= 0:
                out[w] = out.get(w, 0) + ma * mb
    return WeightChar.from_half(out)


def twist_char(c: WeightChar) -> WeightChar:
    """Double every weight, keeping multiplicities."""
    return WeightChar.from_half({2 * w: m for w, m in c.half})


@lru_cache(maxsize=None)
def tilt_char(m: int) -> WeightChar:
    """Character of the ``m``-th indecomposable tilting module.

    Generation: the degree-0/1/2 characters are fixed directly; odd
    indices convolve the degree-1 character with the weight-doubled
    character at ``(m-1)/2``, even indices >= 4 convolve the degree-2
    character with the one at ``(m-2)/2``.
    """
    if m < 0:
        raise ValueError(f"tilting index must be nonnegative, got {m}")
    if m == 0:
        return weyl_char(0)
    if m == 1:
        return weyl_char(1)
    if m == 2:
        return WeightChar.from_half({2: 1, 0: 2})
    if m % 2:
        return char_mul(weyl_char(1), twist_char(tilt_char((m - 1) // 2)))
    return char_mul(tilt_char(2), twist_char(tilt_char((m - 2) // 2)))


@lru_cache(maxsize=None)
def simple_char(m: int) -> WeightChar:
    """Character of the simple with highest weight ``m``: the convolution
    of weight-doubled degree-1 characters over the binary digits of ``m``."""
    if m < 0:
        raise ValueError(f"weight must be nonnegative, got {m}")
    out = weyl_char(0)
    b = 0
    while m >> b:
        if m >> b & 1:
            out = char_mul(out, WeightChar.from_half({1 << b: 1}))
        b += 1
    return out


def steinberg_dim(m: int) -> int:
    """Dimension of the simple with highest weight ``m``: two to the
    number of ones in the binary expansion."""
    if m < 0:
        raise ValueError(f"weight must be nonnegative, got {m}")
    return 1 << bin(m).count("1")


@dataclass(frozen=True)
class TiltSum:
    """Multiset of indecomposable indices with positive multiplicities."""

    entries: tuple[tuple[int, int], ...]  # sorted descending (index, mult)

    def __post_init__(self):
        prev = None
        for m, k in self.entries:
            if m < 0 or k <= 0:
                raise ValueError("indices must be >= 0 with positive multiplicity")
            if prev is not None and m >= prev:
                raise ValueError("indices must be strictly descending")
            prev = m

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> "TiltSum":
        items = tuple(sorted(((m, k) for m, k in mapping.items() if k != 0), reverse=True))
        return cls(items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def character(self) -> WeightChar:
        acc = WeightChar(())
        for m, k in self.entries:
            acc = acc + tilt_char(m) * k
        return acc

    def dim(self) -> int:
        return sum(k * tilt_char(m).dim() for m, k in self.entries)


def decompose(c: WeightChar) -> TiltSum:
    """Greedy peeling of indecomposable characters from the top weight.

    Raises ``NotTiltingCharacter`` if any multiplicity would go negative,
    i.e. the input is not a nonnegative combination of indecomposables.
    """
    if c.has_negative:
        raise NotTiltingCharacter("input has a negative weight multiplicity")
    work = c.half_dict()
    out: dict[int, int] = {}
    while work:
        w = max(work)
        k = work[w]
        out[w] = k
        for wt, mt in tilt_char(w).half:
            work[wt] = work.get(wt, 0) - k * mt
            if work[wt] < 0:
                raise NotTiltingCharacter(
                    f"peeling the index-{w} character drives weight {wt} negative"
                )
            if work[wt] == 0:
                del work[wt]
    return TiltSum.from_dict(out)


def tilt_tensor_v(m: int) -> TiltSum:
    """Decomposition of (indecomposable ``m``) tensor (degree-1 module)."""
    return decompose(char_mul(tilt_char(m), weyl_char(1)))


def tensor_power_decompose(r: int) -> TiltSum:
    """Decomposition of the ``r``-th tensor power of the degree-1 module."""
    if r < 0:
        raise ValueError(f"tensor power must be nonnegative, got {r}")
    acc = weyl_char(0)
    v = weyl_char(1)
    for _ in range(r):
        acc = char_mul(acc, v)
    return decompose(acc)


_g_cache: list[IntPoly] = [IntPoly((1,)), IntPoly((0, 1))]
_g_lock = threading.Lock()


def in_T1_polynomial(m: int) -> IntPoly:
    """The degree-``m`` integer polynomial expressing the ``m``-th
    indecomposable class in terms of the degree-1 class in the split
    Grothendieck ring, by inverting the triangular tensor-by-degree-1
    system."""
    if m < 0:
        raise ValueError(f"index must be nonnegative, got {m}")
    if m < len(_g_cache):  # existing entries never change; append is atomic
        return _g_cache[m]
    x = IntPoly((0, 1))
    with _g_lock:
        while len(_g_cache) <= m:
            top = len(_g_cache) - 1
            row = tilt_tensor_v(top).as_dict()
            lead = row.pop(top + 1, 0)
            if lead != 1:
                raise NotTiltingCharacter(
                    f"tensor-by-degree-1 row at index {top} is not unitriangular"
                )
            nxt = x * _g_cache[top]
            for s, k in row.items():
                nxt = nxt - _g_cache[s] * k
            _g_cache.append(nxt)
    return _g_cache[m]


def quotient_reduce(ts: TiltSum, n: int) -> TiltSum:
    """Image in the quotient killing all indices >= 2**n - 1."""
    if n < 0:
        raise ValueError(f"quotient index must be nonnegative, got {n}")
    cutoff = (1 << n) - 1
    return TiltSum.from_dict({m: k for m, k in ts.entries if m < cutoff})


def functor_to_fusion(ts: TiltSum, n: int) -> FusionElt:
    """Class-level image in the level-``n`` fusion ring: each index ``m``
    maps to its in-degree-1 polynomial evaluated at the top generator."""
    target = simple_elt(n, 1 << (n - 1)) if n >= 1 else fusion_elt(0, {})
    acc = fusion_elt(n, {})
    for m, k in ts.entries:
        acc = acc + eval_poly(in_T1_polynomial(m), target) * k
    return acc
