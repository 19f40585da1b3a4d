"""Cartan matrices, first-extension data, projective and total
dimension values, and block decompositions along the chain."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import golden
from char2cat.cyclotomic import CycInt, CycRat, embed, to_d_basis
from char2cat.errors import LevelTooLarge, SubsetOutOfRange
from char2cat.homology import (
    CATEGORY_INDEX_CAP,
    algebra_fpdim,
    block_components,
    cartan,
    category_fpdim,
    ext1_dim,
    ext1_matrix,
    proj_fpdim,
)

# ----------------------------------------------------------------------
# Cartan matrices


def test_cartan_base_cases():
    assert cartan(0).tolist() == [[1]]
    assert cartan(1).tolist() == [[2]]
    assert cartan(2).tolist() == [[2, 0], [0, 1]]
    assert cartan(3).tolist() == [[4, 2], [2, 2]]


def test_cartan_index5_golden():
    assert cartan(5).tolist() == [list(r) for r in golden.CARTAN_INDEX5]


def test_cartan_even_index_is_block_diagonal():
    for n in range(1, 7):
        m = 2 * n
        car = cartan(m)
        a, b = cartan(m - 1), cartan(m - 2)
        ka = a.shape[0]
        assert np.array_equal(car[:ka, :ka], a)
        assert np.array_equal(car[ka:, ka:], b)
        assert not car[:ka, ka:].any()
        assert not car[ka:, :ka].any()


def test_cartan_odd_index_block_pattern():
    # odd index: [[2A, A], [A, 2B]] with A, B the two previous matrices
    for m in range(3, 14, 2):
        car = cartan(m)
        a, b = cartan(m - 2), cartan(m - 3)
        ka = a.shape[0]
        assert np.array_equal(car[:ka, :ka], 2 * a)
        assert np.array_equal(car[:ka, ka:], a)
        assert np.array_equal(car[ka:, :ka], a)
        assert np.array_equal(car[ka:, ka:], 2 * b)


def test_cartan_symmetric_power_of_two_entries():
    for m in range(14):
        car = cartan(m)
        assert (car == car.T).all()
        for v in car.flatten():
            iv = int(v)
            assert iv >= 0
            assert iv == 0 or iv & (iv - 1) == 0


def test_cartan_is_read_only():
    with pytest.raises(ValueError):
        cartan(5)[0, 0] = 99


def test_cartan_index_cap_named():
    with pytest.raises(LevelTooLarge, match="CATEGORY_INDEX_CAP"):
        cartan(CATEGORY_INDEX_CAP + 1)


# ----------------------------------------------------------------------
# first-extension dimensions


def test_ext1_base_cases():
    assert ext1_dim(0, 0, 0) == 0
    assert ext1_dim(1, 0, 0) == 1


def test_ext1_small_matrices_hand_values():
    # worked out case by case from the recursion
    assert ext1_matrix(2).tolist() == [[1, 0], [0, 0]]
    assert ext1_matrix(3).tolist() == [[1, 1], [1, 0]]


def test_ext1_index5_golden():
    assert ext1_matrix(5).tolist() == [list(r) for r in golden.EXT1_INDEX5]


def test_ext1_symmetric_zero_one():
    for m in range(12):
        mat = ext1_matrix(m)
        assert (mat == mat.T).all()
        assert set(np.unique(mat)).issubset({0, 1})


def test_ext1_self_extensions_of_unit():
    # the unit class has a self-extension exactly from index 1 on
    assert ext1_dim(0, 0, 0) == 0
    for m in range(1, 12):
        assert ext1_dim(m, 0, 0) == 1


@settings(max_examples=80, deadline=None)
@given(
    s=st.integers(min_value=0, max_value=31),
    t=st.integers(min_value=0, max_value=31),
)
def test_ext1_stabilizes(s, t):
    top = max(s.bit_length(), t.bit_length())
    stable_from = 2 * top + 1
    vals = {ext1_dim(m, s, t) for m in range(stable_from, stable_from + 6)}
    assert len(vals) == 1


def test_ext1_mask_validation():
    with pytest.raises(SubsetOutOfRange):
        ext1_dim(4, 4, 0)  # mask 4 needs level >= 3, index 4 has level 2


# ----------------------------------------------------------------------
# dimension values


def test_proj_fpdim_matches_cartan_row_exactly():
    # proj dimension = Cartan row paired with the basis dimensions; the
    # library also checks this internally against the multiplicative
    # recursion, so a plain call exercises both routes
    for m in (4, 5, 6, 7):
        lev = m // 2
        for smask in range(1 << lev):
            p = proj_fpdim(m, smask)
            coords = to_d_basis(p)
            row = cartan(m)[smask]
            assert coords == [int(v) for v in row]


def test_proj_fpdim_top_class_is_its_own_projective():
    # the top class at even index is projective (Cartan entry 1)
    for n in range(1, 5):
        m = 2 * n
        top = (1 << n) - 1
        p = proj_fpdim(m, top)
        assert to_d_basis(p) == [
            1 if k == top else 0 for k in range(1 << n)
        ]


def test_category_fpdim_small_exact_values():
    assert category_fpdim(0) == CycRat.from_int(1, 0)
    assert category_fpdim(1) == CycRat.from_int(2, 0)
    assert category_fpdim(2) == CycRat.from_int(4, 1)
    # index 4: 16 / (2 - delta_1) rationalizes by hand to 8 (2 + delta_1),
    # which is 8 delta_2^2 by the defining relation
    assert category_fpdim(4) == 8 * CycInt.delta(2) ** 2
    assert category_fpdim(4).to_float() == pytest.approx(
        16 / (2 - math.sqrt(2)), rel=1e-12
    )


def test_category_fpdim_closed_form_floats():
    # even index 2n: 2^n / sin^2(pi / 2^(n+1))
    for n in range(1, 7):
        want = (1 << n) / math.sin(math.pi / (1 << (n + 1))) ** 2
        assert category_fpdim(2 * n).to_float() == pytest.approx(want, rel=1e-9)


def test_category_fpdim_doubling():
    # each even index doubles the preceding odd index
    for n in range(1, 7):
        even = category_fpdim(2 * n)
        odd = category_fpdim(2 * n - 1)
        lhs = even.num * odd.den
        rhs = embed(odd.num, even.level) * (2 * even.den)
        assert lhs == rhs


def test_category_fpdim_equals_sum_over_projectives():
    from char2cat.cyclotomic import d_basis_element

    for m in range(8):
        lev = m // 2
        total = CycInt.zero(lev)
        for smask in range(1 << lev):
            total = total + d_basis_element(smask, lev) * proj_fpdim(m, smask)
        assert category_fpdim(m) == CycRat.make(total, 1)


def test_algebra_fpdim_values_and_identity():
    assert algebra_fpdim(0) == CycInt.from_int(2, 0)
    assert algebra_fpdim(1) == 2 + CycInt.delta(1)
    for n in range(8):
        val = algebra_fpdim(n)
        assert embed(val, n + 1) == CycInt.delta(n + 1) ** 2
        assert val.to_float() == pytest.approx(
            (2 * math.cos(math.pi / (1 << (n + 2)))) ** 2, rel=1e-12
        )


def test_algebra_fpdim_cap_named():
    with pytest.raises(LevelTooLarge, match="RING_LEVEL_CAP-1"):
        algebra_fpdim(12)


# ----------------------------------------------------------------------
# blocks


def test_block_components_index4_golden():
    assert block_components(4) == golden.BLOCKS_INDEX4


def test_block_components_counts():
    assert block_components(0) == ((0,),)
    assert block_components(1) == ((0,),)
    # even index 2n splits into n + 1 linkage classes
    for n in range(1, 7):
        assert len(block_components(2 * n)) == n + 1
    # odd indices are connected
    for m in range(1, 14, 2):
        assert len(block_components(m)) == 1


def test_block_components_partition_everything():
    for m in range(10):
        comps = block_components(m)
        seen = sorted(x for comp in comps for x in comp)
        assert seen == list(range(1 << (m // 2)))
