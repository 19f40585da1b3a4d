"""Exact arithmetic in the real cyclotomic rings O_n = Z[2cos(pi/2^(n+1))].

The generator delta_n = 2cos(pi/2^(n+1)) is an algebraic integer of degree
2^n; its minimal polynomial p_n is produced by iterating x -> x^2 - 2
(p_0 = x, p_n = p_{n-1}(x^2 - 2)).  An element of O_n is stored canonically
as the integer coefficient vector of its power-basis expansion
1, delta_n, ..., delta_n^(2^n - 1).

Many internals route through a second Z-basis, the "cosine basis"
{1, c_1, ..., c_{2^n - 1}} with c_r = 2cos(r*pi/2^(n+1)).  There the product
rule is c_r*c_s = c_{r+s} + c_{|r-s|}, indices folding through the
root-of-unity relations c_{-u} = c_u and c_{2^(n+1)-u} = -c_u.  Coefficients
stay small in that basis, which keeps the distinguished-element arithmetic
fast and makes numerical evaluation well conditioned; both basis changes are
triangular and exact over Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatch,
    LevelMismatch,
    LevelTooLarge,
    NotIntegral,
    SubsetOutOfRange,
)

#: Largest level for which full 2^n-sized ring tables may be built.
RING_LEVEL_CAP = 12


def check_level(
    n: int,
    cap: int = RING_LEVEL_CAP,
    what: str = "level",
    cap_name: str | None = None,
) -> int:
    if not isinstance(n, int) or n < 0:
        raise LevelTooLarge(f"{what} must be a nonnegative integer, got {n!r}")
    if n > cap:
        if cap_name is None:
            cap_name = "RING_LEVEL_CAP" if cap == RING_LEVEL_CAP else str(cap)
        raise LevelTooLarge(f"{what} {n} exceeds the cap {cap_name}={cap}")
    return n


def check_subset(mask: int, n: int) -> int:
    """Validate a subset of {1..n} given as a bitmask (bit j-1 <-> j)."""
    if not isinstance(mask, int) or mask < 0 or mask >= (1 << n):
        raise SubsetOutOfRange(
            f"bitmask {mask!r} does not describe a subset of {{1..{n}}}"
        )
    return mask


# ----------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; coeffs[k] multiplies x^k, trailing zeros cut."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = self.coeffs
        if c and c[-1] == 0:
            while c and c[-1] == 0:
                c = c[:-1]
            object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] += v
        return IntPoly(tuple(out))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-v for v in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(v * other for v in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    out[i + j] += av * bv
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


X = IntPoly((0, 1))


def _compose_square_minus_two(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients of P(x^2 - 2) given those of P, by Horner in x^2 - 2.

    Each step multiplies the accumulator by x^2 - 2 (two shifted adds per
    coefficient), keeping the big-integer work linear in the coefficient
    size instead of expanding binomial powers.
    """
    if not coeffs:
        return ()
    acc = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        out = [0] * (len(acc) + 2)
        for i, v in enumerate(acc):
            if v:
                out[i + 2] += v
                out[i] -= 2 * v
        out[0] += c
        acc = out
    return tuple(acc)


@lru_cache(maxsize=None)
def min_poly(n: int) -> IntPoly:
    """Minimal polynomial p_n of delta_n: p_0 = x, p_n = p_{n-1}(x^2 - 2).

    Monic of degree 2^n, irreducible, with roots 2cos((2r+1)pi/2^(n+1)).
    """
    check_level(n)
    if n == 0:
        return X
    return IntPoly(_compose_square_minus_two(min_poly(n - 1).coeffs))


@lru_cache(maxsize=None)
def _min_poly_reduction_rows(n: int) -> tuple[tuple[int, int], ...]:
    """Nonzero (exponent, coefficient) pairs of p_n below the leading term."""
    mp = min_poly(n).coeffs
    return tuple((k, v) for k, v in enumerate(mp[:-1]) if v)


def delta_float(n: int) -> float:
    return 2.0 * math.cos(math.pi / (1 << (n + 1)))


# ----------------------------------------------------------------------
# cosine-basis internals


def _fold(u: int, n: int) -> tuple[int, int]:
    """Reduce c_u to the fundamental range at level n.

    Returns (index, mult): the contribution is mult * c_index, where index 0
    stands for the basis element 1 (so c_0 = 2 gives mult 2) and mult 0 means
    the term vanishes (c at an odd multiple of pi/2).
    """
    period = 1 << (n + 2)
    u %= period
    half = period >> 1
    if u > half:
        u = period - u
    top = 1 << n
    if u == 0:
        return 0, 2
    if u == half:
        return 0, -2
    if u == top:
        return 0, 0
    if u > top:
        return half - u, -1
    return u, 1


def _cos_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """Product in cosine coordinates (index 0 = coefficient of 1)."""
    size = 1 << n
    out = [0] * size
    a0, b0 = a[0], b[0]
    out[0] = a0 * b0
    if a0:
        for s in range(1, size):
            if b[s]:
                out[s] += a0 * b[s]
    if b0:
        for r in range(1, size):
            if a[r]:
                out[r] += b0 * a[r]
    for r in range(1, size):
        ar = a[r]
        if not ar:
            continue
        for s in range(1, size):
            bs = b[s]
            if not bs:
                continue
            v = ar * bs
            idx, mult = _fold(r + s, n)
            if mult:
                out[idx] += mult * v
            d = r - s
            if d:
                out[abs(d)] += v
            else:
                out[0] += 2 * v
    return out


def _conjugate_cos(a: list[int], r: int, n: int) -> list[int]:
    """Apply the embedding delta_n -> 2cos((2r+1)pi/2^(n+1)) in cosine coords."""
    size = 1 << n
    t = 2 * r + 1
    out = [0] * size
    out[0] = a[0]
    for s in range(1, size):
        if a[s]:
            idx, mult = _fold(t * s, n)
            if mult:
                out[idx] += mult * a[s]
    return out


def _power_to_cos(coeffs, n: int) -> list[int]:
    """Expand powers of delta_n over the cosine basis (exact binomials)."""
    size = 1 << n
    vec = [0] * size
    for k, a in enumerate(coeffs):
        if not a:
            continue
        if k == 0:
            vec[0] += a
            continue
        # delta^k = sum_{j<k/2} C(k,j) c_{k-2j}  (+ C(k,k/2) if k even)
        for j in range((k - 1) // 2 + 1):
            vec[k - 2 * j] += a * math.comb(k, j)
        if k % 2 == 0:
            vec[0] += a * math.comb(k, k // 2)
    return vec


def _cos_to_power(vec, n: int) -> list[int]:
    """Inverse of _power_to_cos; triangular elimination from the top index."""
    size = 1 << n
    work = list(vec)
    out = [0] * size
    for r in range(size - 1, 0, -1):
        a = work[r]
        if not a:
            continue
        out[r] = a
        work[r] = 0
        for j in range(1, (r - 1) // 2 + 1):
            work[r - 2 * j] -= a * math.comb(r, j)
        if r % 2 == 0:
            work[0] -= a * math.comb(r, r // 2)
    out[0] = work[0]
    return out


@lru_cache(maxsize=None)
def _d_cos_indices(mask: int, n: int) -> tuple[int, ...]:
    """Cosine support of d_S = prod_{j in S} c_{2^(n-j)}.

    Expanding the product pairwise gives one c-term for every sign pattern on
    the smaller exponents; all indices are positive, distinct, and at most
    2^n - 1, and every coefficient is 1.
    """
    vals: list[int] | None = None
    for b in range(n):
        if not (mask >> b) & 1:
            continue
        a = 1 << (n - 1 - b)  # generator j = b+1 contributes c_{2^(n-j)}
        if vals is None:
            vals = [a]
        else:
            vals = [v + a for v in vals] + [v - a for v in vals]
    if vals is None:
        return ()
    return tuple(sorted(vals))


def _leading_cos_index_to_mask(r: int, n: int) -> int:
    """Invert mask -> sum_{j in S} 2^(n-j) (a bit reversal in n bits)."""
    mask = 0
    b = 0
    while r:
        if r & 1:
            mask |= 1 << (n - 1 - b)
        r >>= 1
        b += 1
    return mask


# ----------------------------------------------------------------------
# ring elements


@dataclass(frozen=True)
class CycInt:
    """Element of O_n in the canonical power basis of delta_n."""

    level: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_level(self.level)
        if len(self.coeffs) != (1 << self.level):
            raise DimensionMismatch(
                f"level {self.level} needs {1 << self.level} coefficients, "
                f"got {len(self.coeffs)}"
            )

    # -- constructors

    @classmethod
    def zero(cls, level: int) -> "CycInt":
        check_level(level)
        return cls(level, (0,) * (1 << level))

    @classmethod
    def one(cls, level: int) -> "CycInt":
        return cls.from_int(1, level)

    @classmethod
    def from_int(cls, c: int, level: int) -> "CycInt":
        check_level(level)
        return cls(level, (c,) + (0,) * ((1 << level) - 1))

    @classmethod
    def delta(cls, level: int) -> "CycInt":
        """The generator delta_level; at level 0 this is 2cos(pi/2) = 0."""
        check_level(level)
        if level == 0:
            return cls.zero(0)
        return cls(level, (0, 1) + (0,) * ((1 << level) - 2))

    # -- ring structure

    def _require_same_level(self, other: "CycInt") -> None:
        if self.level != other.level:
            raise LevelMismatch(
                f"cannot combine levels {self.level} and {other.level}; "
                "embed into the larger ring first"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(other, self.level)
        self._require_same_level(other)
        return CycInt(
            self.level, tuple(x + y for x, y in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.level, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(other, self.level)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.level, tuple(x * other for x in self.coeffs))
        self._require_same_level(other)
        size = 1 << self.level
        prod = [0] * (2 * size - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        rows = _min_poly_reduction_rows(self.level)
        for d in range(len(prod) - 1, size - 1, -1):
            q = prod[d]
            if q:
                prod[d] = 0
                for k, v in rows:
                    prod[d - size + k] -= q * v
        return CycInt(self.level, tuple(prod[:size]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not integral")
        out = CycInt.one(self.level)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)

    # -- numerics

    def cosine_coords(self) -> list[int]:
        return _power_to_cos(self.coeffs, self.level)

    def to_float(self) -> float:
        """Evaluate at delta_n.

        Routed through the cosine basis: its coefficients are of the same
        order as the value itself, so the float sum does not suffer the
        catastrophic cancellation a power-basis Horner evaluation would.
        """
        return conjugate_floats(self)[0]

    def __repr__(self):
        return f"CycInt(level={self.level}, coeffs={list(self.coeffs)})"


def conjugate_floats(e: CycInt) -> list[float]:
    """All 2^n embeddings of e, entry r at delta -> 2cos((2r+1)pi/2^(n+1)).

    Entry 0 is the identity embedding, i.e. to_float.
    """
    n = e.level
    size = 1 << n
    cos_vec = e.cosine_coords()
    denom = 1 << (n + 1)
    out = []
    for r in range(size):
        t = 2 * r + 1
        acc = float(cos_vec[0])
        for s in range(1, size):
            if cos_vec[s]:
                acc += cos_vec[s] * 2.0 * math.cos(s * t * math.pi / denom)
        out.append(acc)
    return out


def embed(e: CycInt, n: int) -> CycInt:
    """Rewrite e in the larger ring O_n using delta_{m} = delta_{m+1}^2 - 2.

    Each step is a polynomial composition with x^2 - 2; the image of a
    level-m element has degree < 2^(m+1), so no reduction is ever needed
    and the map is an exact ring embedding.
    """
    check_level(n)
    if n < e.level:
        raise LevelMismatch(f"cannot embed level {e.level} down into level {n}")
    coeffs = e.coeffs
    for lvl in range(e.level, n):
        comp = _compose_square_minus_two(coeffs)
        coeffs = comp + (0,) * ((1 << (lvl + 1)) - len(comp))
    return CycInt(n, tuple(coeffs))


def d_basis_element(mask: int, n: int) -> CycInt:
    """The distinguished basis element d_S = prod_{j in S} delta_j inside O_n.

    Computed through the cosine expansion of the product, which is a sum of
    distinct c_r with unit coefficients; the equality with the literal
    product of embed(delta_j, n) is exercised by the test-suite.
    """
    check_level(n)
    check_subset(mask, n)
    size = 1 << n
    vec = [0] * size
    if mask == 0:
        vec[0] = 1
    else:
        for r in _d_cos_indices(mask, n):
            vec[r] += 1
    return CycInt(n, tuple(_cos_to_power(vec, n)))


def to_d_basis(e: CycInt) -> list[int]:
    """Coordinates of e in the basis {d_S}, indexed by subset bitmask.

    The change of basis is unimodular, so the coordinates are integers for
    every ring element; a failed re-expansion check raises NotIntegral.
    """
    n = e.level
    size = 1 << n
    vec = e.cosine_coords()
    work = list(vec)
    out = [0] * size
    for r in range(size - 1, 0, -1):
        a = work[r]
        if not a:
            continue
        mask = _leading_cos_index_to_mask(r, n)
        out[mask] = a
        for idx in _d_cos_indices(mask, n):
            work[idx] -= a
    out[0] = work[0]
    # re-expand as a guard against internal inconsistency
    redo = [0] * size
    redo[0] = out[0]
    for mask in range(1, size):
        if out[mask]:
            for idx in _d_cos_indices(mask, n):
                redo[idx] += out[mask]
    if redo != vec:
        raise NotIntegral(f"d-basis solve failed to reproduce the input at level {n}")
    return out


# ----------------------------------------------------------------------
# rationals and exact division


@dataclass(frozen=True)
class CycRat:
    """Quotient of a ring element by a positive integer, content-reduced."""

    num: CycInt
    den: int

    @classmethod
    def make(cls, num: CycInt, den: int = 1) -> "CycRat":
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = den
        for v in num.coeffs:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            num = CycInt(num.level, tuple(v // g for v in num.coeffs))
            den //= g
        return cls(num, den)

    @classmethod
    def from_int(cls, c: int, level: int) -> "CycRat":
        return cls.make(CycInt.from_int(c, level))

    @property
    def level(self) -> int:
        return self.num.level

    def __eq__(self, other):
        if isinstance(other, CycInt):
            other = CycRat.make(other)
        if not isinstance(other, CycRat):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __mul__(self, other):
        if isinstance(other, int):
            return CycRat.make(self.num * other, self.den)
        if isinstance(other, CycRat):
            return CycRat.make(self.num * other.num, self.den * other.den)
        return NotImplemented

    __rmul__ = __mul__

    def to_float(self) -> float:
        return self.num.to_float() / self.den

    def __repr__(self):
        return f"CycRat({self.num!r} / {self.den})"


def divide_exact(a: CycInt, b: CycInt) -> CycRat:
    """a/b as a CycRat, via the product of the nontrivial conjugates of b.

    Multiplying numerator and denominator by that product turns the
    denominator into the integer norm of b; everything stays exact.
    """
    a._require_same_level(b)
    n = a.level
    size = 1 << n
    b_cos = b.cosine_coords()
    adj = [0] * size
    adj[0] = 1
    for r in range(1, size):
        adj = _cos_mul(adj, _conjugate_cos(b_cos, r, n), n)
    norm_vec = _cos_mul(b_cos, adj, n)
    if any(norm_vec[1:]):
        raise NotIntegral("conjugate product of the norm is not rational")
    norm = norm_vec[0]
    if norm == 0:
        raise ZeroDivisionError("division by zero ring element")
    adj_elt = CycInt(n, tuple(_cos_to_power(adj, n)))
    return CycRat.make(a * adj_elt, norm)


# ----------------------------------------------------------------------
# exact evaluation near the generator, and matrix annihilation


def min_poly_root_gap(n: int, bits: int = 256) -> float:
    """Upper bound on |p_n(x)| at a dyadic x within 2^-bits of delta_n.

    p_n has huge coefficients for large n, so a float Horner evaluation at
    the root cancels catastrophically (and the coefficients overflow float64
    beyond n = 11).  Instead delta_n is approximated by integer square roots
    in fixed point and p_n evaluated there through its nested form
    y -> y^2 - 2, whose truncation error grows only geometrically in n; the
    returned float bounds the true |p_n(x)| from above.
    """
    check_level(n)
    # delta_n = sqrt(2 + delta_{n-1}) with delta_0 = 0, in fixed point
    scale = 1 << bits
    x = 0
    for _ in range(n):
        x = math.isqrt((2 * scale + x) << bits)
    y = x
    err = 1  # ulp bound on |y - exact|
    for _ in range(n):
        err = (2 * abs(y) // scale + 2) * err + 1
        y = (y * y >> bits) - 2 * scale
    return (abs(y) + err) / scale


def eval_min_poly_at_matrix(n: int, mat: np.ndarray) -> np.ndarray:
    """p_n evaluated at an integer matrix through its nested form.

    Iterating M -> M@M - 2I realizes p_n = p_0((..(x^2-2)..)^2-2) with n
    squarings, which is exact and avoids the enormous dense coefficients.
    """
    check_level(n)
    out = np.array(mat, dtype=np.int64, copy=True)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise DimensionMismatch("expected a square matrix")
    # With every entry bounded by 2**20 and dimension at most 2**12, each
    # partial sum of a product stays below 2**52, so float64 matmuls are
    # exact integer arithmetic here (and run through BLAS).
    work = out.astype(np.float64)
    eye2 = 2.0 * np.eye(out.shape[0])
    for _ in range(n):
        if work.size and np.abs(work).max() > 1 << 20:
            raise NotIntegral("matrix entries grew beyond the exactly-representable range")
        work = work @ work - eye2
    return work.astype(np.int64)


# ----------------------------------------------------------------------
# batched d-basis operators (numpy, used by the fusion oracle)


def _cos_expansion_matrix(n: int) -> np.ndarray:
    """Columns = cosine coordinates of d_S, S running over bitmasks."""
    size = 1 << n
    mat = np.zeros((size, size), dtype=np.int64)
    mat[0, 0] = 1
    for mask in range(1, size):
        for r in _d_cos_indices(mask, n):
            mat[r, mask] += 1
    return mat


def d_basis_generator_matrix(j: int, n: int) -> np.ndarray:
    """Matrix of multiplication by d_j = delta_j on the d-basis of O_n.

    Built purely from cosine-basis arithmetic plus the triangular basis
    change, with no reference to fusion combinatorics; serves as the
    independent oracle for the fusion-ring structure constants.
    """
    check_level(n)
    if not 1 <= j <= n:
        raise SubsetOutOfRange(f"generator {j} outside 1..{n}")
    size = 1 << n
    expansion = _cos_expansion_matrix(n)
    a = 1 << (n - j)  # d_j = c_{2^(n-j)}
    prod = np.zeros_like(expansion)
    # 1 * c_a
    prod[a, :] += expansion[0, :]
    for s in range(1, size):
        row = expansion[s, :]
        idx, mult = _fold(a + s, n)
        if mult:
            prod[idx, :] += mult * row
        d = abs(a - s)
        if d:
            prod[d, :] += row
        else:
            prod[0, :] += 2 * row
    # solve expansion @ X = prod by descending-leading-index elimination
    out = np.zeros_like(prod)
    work = prod.copy()
    for r in range(size - 1, 0, -1):
        mask = _leading_cos_index_to_mask(r, n)
        row = work[r, :]
        if not row.any():
            continue
        out[mask, :] = row
        work = work - np.outer(expansion[:, mask], row)
    out[0, :] = work[0, :]
    work[0, :] = 0
    if work.any():
        raise NotIntegral("d-basis operator solve left a nonzero residual")
    return out
