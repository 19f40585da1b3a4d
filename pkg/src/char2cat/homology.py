"""Cartan matrices, first-extension data, and dimension totals.

Category indices ``m`` run along the whole chain; level ``m`` has
``2**(m//2)`` simples indexed by subset bitmasks, and matrices use plain
bitmask order (subsets without the top generator first).  The Cartan
recursion interleaves a block-diagonal even step with an odd step made of
four blocks of the two previous matrices; extensions between simples
follow a five-case recursion on membership of the top generator.
Projective and whole-category dimensions are computed by two independent
routes each (weighted Cartan rows against a multiplicative recursion, and
a summed total against a closed form) which must agree exactly.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .cyclotomic import (
    RING_LEVEL_CAP,
    CycInt,
    CycRat,
    check_level,
    d_basis_element,
    divide_exact,
    embed,
)
from .errors import Char2CatError, LevelTooLarge, SubsetOutOfRange

__all__ = [
    "CATEGORY_INDEX_CAP",
    "cartan",
    "ext1_dim",
    "ext1_matrix",
    "proj_fpdim",
    "category_fpdim",
    "algebra_fpdim",
    "block_components",
]

CATEGORY_INDEX_CAP = 2 * RING_LEVEL_CAP + 1


def _check_index(m: int) -> int:
    """Validate a chain index and return the ring level ``m // 2``."""
    if m < 0:
        raise ValueError(f"chain index must be nonnegative, got {m}")
    if m > CATEGORY_INDEX_CAP:
        raise LevelTooLarge(
            f"chain index {m} exceeds the cap CATEGORY_INDEX_CAP={CATEGORY_INDEX_CAP}"
        )
    return m // 2


@lru_cache(maxsize=None)
def cartan(m: int) -> np.ndarray:
    """Cartan matrix at chain index ``m`` (object dtype, exact).

    Base cases ``[1]`` and ``[2]``; even indices are the block diagonal of
    the two previous matrices (subsets without the top generator first);
    odd indices ``2n+1`` are ``[[2A, A], [A, 2B]]`` with ``A``, ``B`` the
    matrices at ``2n-1`` and ``2n-2``.
    """
    _check_index(m)
    if m == 0:
        out = np.array([[1]], dtype=object)
    elif m == 1:
        out = np.array([[2]], dtype=object)
    elif m % 2 == 0:
        a = cartan(m - 1)
        b = cartan(m - 2)
        h = a.shape[0]
        out = np.zeros((2 * h, 2 * h), dtype=object)
        out[:h, :h] = a
        out[h:, h:] = b
    else:
        a = cartan(m - 2)
        b = cartan(m - 3)
        h = a.shape[0]
        out = np.zeros((2 * h, 2 * h), dtype=object)
        out[:h, :h] = 2 * a
        out[:h, h:] = a
        out[h:, :h] = a
        out[h:, h:] = 2 * b
    out.setflags(write=False)
    return out


def _check_masks(m: int, smask: int, tmask: int) -> int:
    level = _check_index(m)
    size = 1 << level
    for mask in (smask, tmask):
        if not 0 <= mask < size:
            raise SubsetOutOfRange(
                f"subset mask {mask} invalid at chain index {m} "
                f"(needs 0 <= mask < {size})"
            )
    return level


@lru_cache(maxsize=None)
def ext1_dim(m: int, smask: int, tmask: int) -> int:
    """Dimension (0 or 1) of the first extension space between the simples
    ``smask`` and ``tmask`` at chain index ``m``.

    Recursion on the top generator ``n = m // 2``: present in both sets it
    strips down two even steps; present in exactly one it gives a Kronecker
    delta at odd indices and zero at even ones; absent it descends one
    index.  Bases: 0 at index 0 and 1 at index 1.
    """
    _check_masks(m, smask, tmask)
    if m == 0:
        return 0
    if m == 1:
        return 1
    n = m // 2
    bit = 1 << (n - 1)
    in_s = bool(smask & bit)
    in_t = bool(tmask & bit)
    if in_s and in_t:
        return ext1_dim(2 * n - 2, smask & ~bit, tmask & ~bit)
    if in_s != in_t:
        if m % 2 == 0:
            return 0
        if in_s:
            return 1 if (smask & ~bit) == tmask else 0
        return 1 if smask == (tmask & ~bit) else 0
    return ext1_dim(m - 1, smask, tmask)


def ext1_matrix(m: int) -> np.ndarray:
    """Matrix of ``ext1_dim`` over all simple pairs at chain index ``m``."""
    level = _check_index(m)
    size = 1 << level
    out = np.zeros((size, size), dtype=object)
    for s in range(size):
        for t in range(size):
            out[s, t] = ext1_dim(m, s, t)
    out.setflags(write=False)
    return out


def _proj_fpdim_cartan(m: int, smask: int) -> CycInt:
    """Dimension of a projective cover as the Cartan-row weighted sum of
    simple dimensions."""
    level = _check_masks(m, smask, smask)
    row = cartan(m)[smask]
    acc = CycInt.zero(level)
    for tmask, entry in enumerate(row):
        if entry:
            acc = acc + d_basis_element(tmask, level) * int(entry)
    return acc


def _proj_fpdim_recursive(m: int, smask: int) -> CycInt:
    """Same dimension by the multiplicative recursion: odd steps multiply
    by (2 + top ring generator); even steps either descend directly or
    split off one generator factor."""
    _check_masks(m, smask, smask)
    if m == 0:
        return CycInt.one(0)
    n = m // 2
    if m % 2 == 1:
        inner = _proj_fpdim_recursive(m - 1, smask)
        return (CycInt.delta(n) + 2) * inner
    bit = 1 << (n - 1)
    if smask & bit:
        inner = _proj_fpdim_recursive(m - 2, smask & ~bit)
        return CycInt.delta(n) * embed(inner, n)
    return embed(_proj_fpdim_recursive(m - 1, smask), n)


def proj_fpdim(m: int, smask: int) -> CycInt:
    """Dimension of the projective cover of a simple; both routes are
    computed and must agree exactly."""
    a = _proj_fpdim_cartan(m, smask)
    b = _proj_fpdim_recursive(m, smask)
    if a != b:
        raise Char2CatError(
            f"projective-dimension routes disagree at index {m}, mask {smask}; "
            "this is an internal inconsistency"
        )
    return a


def _category_fpdim_from_projectives(m: int) -> CycRat:
    """Sum of simple dimension times projective-cover dimension."""
    level = _check_index(m)
    acc = CycInt.zero(level)
    for smask in range(1 << level):
        acc = acc + d_basis_element(smask, level) * _proj_fpdim_cartan(m, smask)
    return CycRat.make(acc)


def _category_fpdim_closed_form(m: int) -> CycRat:
    """Closed form: a power of two divided by (2 minus the ring generator
    one level down), with the convention that the generator at level -1
    is -2."""
    level = _check_index(m)
    if m % 2 == 0:
        n = m // 2
        num = 1 << (n + 2)
    else:
        n = (m + 1) // 2
        num = 1 << (n + 1)
    if n == 0:
        den = CycInt.from_int(4, level)  # 2 - (-2)
    else:
        den = embed(CycInt.from_int(2, n - 1) - CycInt.delta(n - 1), level)
    return divide_exact(CycInt.from_int(num, level), den)


def category_fpdim(m: int) -> CycRat:
    """Total dimension of the chain member at index ``m``; the projective
    sum and the closed form are both computed and must agree exactly."""
    a = _category_fpdim_from_projectives(m)
    b = _category_fpdim_closed_form(m)
    if a != b:
        raise Char2CatError(
            f"category-dimension routes disagree at index {m}; "
            "this is an internal inconsistency"
        )
    return a


def algebra_fpdim(n: int) -> CycInt:
    """Dimension of the level-raising algebra object: 2 plus the level-``n``
    ring generator (equivalently the embedded square of the next
    generator)."""
    check_level(n, RING_LEVEL_CAP - 1, "algebra level",
                cap_name="RING_LEVEL_CAP-1")
    return CycInt.delta(n) + 2


def block_components(m: int) -> tuple[tuple[int, ...], ...]:
    """Partition of the simples at chain index ``m`` into connected
    components of the graph with an edge wherever the Cartan entry or the
    first-extension dimension is positive.

    The component count is reported as computed from this graph; it is not
    normalized to any closed-form prediction.
    """
    level = _check_index(m)
    size = 1 << level
    car = cartan(m)
    seen = [False] * size
    comps: list[tuple[int, ...]] = []
    for start in range(size):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            s = stack.pop()
            comp.append(s)
            for t in range(size):
                if not seen[t] and (car[s][t] > 0 or ext1_dim(m, s, t) > 0):
                    seen[t] = True
                    stack.append(t)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)
