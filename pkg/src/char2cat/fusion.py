"""The fusion ring of the even categories in the chain.

Basis classes are indexed by subsets ``S`` of ``{1..n}`` through bitmasks
(bit ``j-1`` set iff ``j`` is in ``S``); the integer value of the mask is
also the printed ``V_m`` index used by the CLI.  Multiplication is driven
by the single-generator rule ``gen_mul`` and extended to arbitrary
products by iterating it; an independent level-by-level recursion for the
full structure-constant tensor and an exact cyclotomic-arithmetic oracle
give two further routes that the tests compare against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclotomic import (
    RING_LEVEL_CAP,
    CycInt,
    check_level,
    check_subset,
    d_basis_element,
    d_basis_generator_matrix,
)
from .errors import Char2CatError, GeneratorOutOfRange, LevelMismatch

__all__ = [
    "STRUCTURE_LEVEL_CAP",
    "SimpleIndex",
    "FusionElt",
    "fusion_elt",
    "simple_elt",
    "unit",
    "gen_mul",
    "product",
    "generator_matrix",
    "structure_tensor",
    "mult_matrix",
    "fpdim",
    "frobenius_twist",
]

STRUCTURE_LEVEL_CAP = 8


@dataclass(frozen=True)
class SimpleIndex:
    """A basis class: ``level`` plus subset bitmask (= printed index)."""

    level: int
    mask: int

    def __post_init__(self):
        check_level(self.level)
        check_subset(self.mask, self.level)

    @property
    def subset(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.level + 1) if self.mask >> (j - 1) & 1)


@dataclass(frozen=True)
class FusionElt:
    """Integer combination of basis classes at one level.

    ``coeffs`` is a sorted tuple of ``(mask, coefficient)`` pairs with all
    zero coefficients dropped.  Virtual (negative) coefficients are legal:
    they arise transiently in polynomial evaluation.
    """

    level: int
    coeffs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_level(self.level)
        for mask, c in self.coeffs:
            check_subset(mask, self.level)
            if c == 0:
                raise ValueError("zero coefficients must be dropped")

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def coefficient(self, mask: int) -> int:
        check_subset(mask, self.level)
        return self.as_dict().get(mask, 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _require_same_level(self, other: "FusionElt") -> None:
        if self.level != other.level:
            raise LevelMismatch(
                f"cannot combine fusion elements at levels {self.level} "
                f"and {other.level}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = fusion_elt(self.level, {0: other})
        self._require_same_level(other)
        out = self.as_dict()
        for mask, c in other.coeffs:
            out[mask] = out.get(mask, 0) + c
        return fusion_elt(self.level, out)

    __radd__ = __add__

    def __neg__(self):
        return FusionElt(self.level, tuple((m, -c) for m, c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = fusion_elt(self.level, {0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return FusionElt(self.level, ())
            return FusionElt(self.level, tuple((m, c * other) for m, c in self.coeffs))
        return product(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        if not self.coeffs:
            return f"FusionElt(level={self.level}, 0)"
        terms = " + ".join(f"{c}*X[{m}]" for m, c in self.coeffs)
        return f"FusionElt(level={self.level}, {terms})"


def fusion_elt(level: int, mapping: dict[int, int]) -> FusionElt:
    """Normalize a mask -> coefficient mapping into a ``FusionElt``."""
    items = tuple(sorted((m, c) for m, c in mapping.items() if c != 0))
    return FusionElt(level, items)


def simple_elt(level: int, mask: int) -> FusionElt:
    check_subset(mask, level)
    return FusionElt(level, ((mask, 1),))


def unit(level: int) -> FusionElt:
    return simple_elt(level, 0)


def _segment_mask(a: int, b: int) -> int:
    """Bitmask of the generators ``a..b`` (empty when ``a > b``)."""
    if a > b:
        return 0
    return (1 << b) - (1 << (a - 1))


@lru_cache(maxsize=None)
def gen_mul(i: int, mask: int, n: int) -> FusionElt:
    """Product of the ``i``-th generator class with the basis class ``mask``.

    Let ``k`` be the largest index ``<= i`` not in the subset.  The product
    is the class with ``k`` adjoined and ``[k+1, i]`` removed (dropped
    entirely when ``k = 0``), plus twice the classes with ``[k, i]``
    removed for each ``k`` in the gap.
    """
    check_level(n)
    if not 1 <= i <= n:
        raise GeneratorOutOfRange(f"generator {i} outside 1..{n}")
    check_subset(mask, n)
    k = i
    while k >= 1 and mask >> (k - 1) & 1:
        k -= 1
    out: dict[int, int] = {}
    if k > 0:
        first = (mask & ~_segment_mask(k + 1, i)) | (1 << (k - 1))
        out[first] = out.get(first, 0) + 1
    for kk in range(k + 1, i + 1):
        term = mask & ~_segment_mask(kk, i)
        out[term] = out.get(term, 0) + 2
    return fusion_elt(n, out)


def product(a: FusionElt, b: FusionElt) -> FusionElt:
    """Ring product, computed by iterating the single-generator rule."""
    a._require_same_level(b)
    n = a.level
    out: dict[int, int] = {}
    for smask, sc in a.coeffs:
        cur = b.as_dict()
        j = smask
        while j:
            i = j.bit_length()  # apply the highest remaining generator
            j &= ~(1 << (i - 1))
            nxt: dict[int, int] = {}
            for mask, c in cur.items():
                for m2, c2 in gen_mul(i, mask, n).coeffs:
                    nxt[m2] = nxt.get(m2, 0) + c * c2
            cur = nxt
        for mask, c in cur.items():
            out[mask] = out.get(mask, 0) + sc * c
    return fusion_elt(n, out)


@lru_cache(maxsize=None)
def generator_matrix(i: int, n: int) -> np.ndarray:
    """Matrix of multiplication by the ``i``-th generator; columns are
    ``gen_mul(i, mask, n)``."""
    size = 1 << n
    mat = np.zeros((size, size), dtype=np.int64)
    for mask in range(size):
        for m2, c in gen_mul(i, mask, n).coeffs:
            mat[m2, mask] = c
    mat.setflags(write=False)
    return mat


def _mult_operator_cube(gmats: list[np.ndarray], n: int) -> np.ndarray:
    """``W[S]`` = matrix of multiplication by the class ``S`` (rows =
    output class, columns = right factor), via the subset product DP."""
    size = 1 << n
    cube = np.zeros((size, size, size), dtype=np.int64)
    cube[0] = np.identity(size, dtype=np.int64)
    for mask in range(1, size):
        top = mask.bit_length()
        rest = mask & ~(1 << (top - 1))
        cube[mask] = gmats[top - 1] @ cube[rest]
    return cube


def _structure_from_generators(n: int) -> np.ndarray:
    gmats = [generator_matrix(i, n) for i in range(1, n + 1)]
    cube = _mult_operator_cube(gmats, n)
    # cube[S][U][T] = N[S][T][U]
    return cube.transpose(0, 2, 1)


def _structure_from_oracle(n: int) -> np.ndarray:
    """Structure constants read off from exact cyclotomic arithmetic in the
    distinguished basis of the ring of dimensions; independent of
    ``gen_mul``."""
    gmats = [d_basis_generator_matrix(j, n) for j in range(1, n + 1)]
    cube = _mult_operator_cube(gmats, n)
    return cube.transpose(0, 2, 1)


def _structure_from_recursion(n: int) -> np.ndarray:
    """Level-by-level recursion for the structure constants.

    Writing ``top`` for the new generator and ``S,T,U`` for old-level
    subsets: constants with all three indices old are inherited; moving
    ``top`` from one factor into the output copies the old constant;
    ``top`` in both factors resolves through tail-interval sums; the
    remaining sign patterns vanish.
    """
    tensor = np.ones((1, 1, 1), dtype=np.int64)
    for lev in range(1, n + 1):
        h = 1 << (lev - 1)
        new = np.zeros((2 * h, 2 * h, 2 * h), dtype=np.int64)
        new[:h, :h, :h] = tensor
        new[h:, :h, h:] = tensor
        new[:h, h:, h:] = tensor
        def tail(k: int) -> int:
            # generators k+1 .. lev-1 of the old level, as a mask
            return (1 << (lev - 1)) - (1 << k) if k < lev - 1 else 0
        for umask in range(h):
            if umask == 0:
                acc = np.zeros((h, h), dtype=np.int64)
                for k in range(lev):
                    acc += tensor[:, :, tail(k)]
                new[h:, h:, 0] = 2 * acc
            else:
                b = umask.bit_length() - 1  # bit of the largest element of U
                first = tail(b + 1) | (umask & ~(1 << b))
                acc = np.zeros((h, h), dtype=np.int64)
                for k in range(b + 1, lev):
                    acc += tensor[:, :, tail(k) | umask]
                new[h:, h:, umask] = tensor[:, :, first] + 2 * acc
        tensor = new
    return tensor


def structure_tensor(n: int, method: str = "both") -> np.ndarray:
    """Full structure-constant array ``N[S][T][U]`` at level ``n``.

    ``method`` selects the generator-iteration route, the level recursion,
    or (default) both with an equality check between them.
    """
    check_level(n, STRUCTURE_LEVEL_CAP, "structure-tensor level",
                cap_name="STRUCTURE_LEVEL_CAP")
    if method == "generators":
        return _structure_from_generators(n)
    if method == "recursion":
        return _structure_from_recursion(n)
    if method == "oracle":
        return _structure_from_oracle(n)
    if method != "both":
        raise ValueError(f"unknown structure_tensor method {method!r}")
    gen = _structure_from_generators(n)
    rec = _structure_from_recursion(n)
    if not np.array_equal(gen, rec):
        raise Char2CatError(
            f"structure-constant routes disagree at level {n}; "
            "this is an internal inconsistency"
        )
    return gen


def mult_matrix(n: int, method: str = "direct") -> np.ndarray:
    """Matrix of multiplication by the top generator class.

    ``direct`` fills columns with ``gen_mul``; ``recursive`` assembles the
    block form ``[[0, 2I + B], [I, 0]]`` from the previous level.
    """
    check_level(n)
    if method == "direct":
        size = 1 << n
        mat = np.zeros((size, size), dtype=np.int64)
        if n == 0:
            return mat
        for mask in range(size):
            for m2, c in gen_mul(n, mask, n).coeffs:
                mat[m2, mask] = c
        return mat
    if method == "recursive":
        mat = np.zeros((1, 1), dtype=np.int64)
        for lev in range(1, n + 1):
            h = 1 << (lev - 1)
            new = np.zeros((2 * h, 2 * h), dtype=np.int64)
            new[:h, h:] = 2 * np.identity(h, dtype=np.int64) + mat
            new[h:, :h] = np.identity(h, dtype=np.int64)
            mat = new
        return mat
    raise ValueError(f"unknown mult_matrix method {method!r}")


def fpdim(a: FusionElt) -> CycInt:
    """Image of ``a`` under the dimension isomorphism onto the real
    cyclotomic ring at the same level."""
    acc = CycInt.zero(a.level)
    for mask, c in a.coeffs:
        acc = acc + d_basis_element(mask, a.level) * c
    return acc


def frobenius_twist(a: FusionElt) -> FusionElt:
    """Linear extension of: kill classes whose subset contains 1, shift
    the rest down one step.  Result lives one level lower."""
    new_level = max(a.level - 1, 0)
    out: dict[int, int] = {}
    for mask, c in a.coeffs:
        if mask & 1:
            continue
        shifted = mask >> 1
        out[shifted] = out.get(shifted, 0) + c
    return fusion_elt(new_level, out)
