import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from doobcolor.constructions.bc import (
    BCIND_BASES, PREFERENCES, bb_coloring, bc_quotient, bcind_family, build_bc_coloring, choose_plan,
    coverage_family, gamma_split, hamming_equal_diagonal, odd_equal_diagonal, plans, plus_four,
    search_bcind_family, unite_first,
)
from doobcolor.constructions.common import E, J
from doobcolor.eqpart import compute_quotient, is_perfect_bc
from doobcolor.errors import DeskScaleExceeded, NotAdmissible, UnsupportedSpec
from doobcolor.graph import GraphSpec
from doobcolor.params import necessary_conditions

import oracle


@pytest.mark.parametrize("mn", [(0, 1), (1, 0), (0, 2), (0, 3), (1, 1)])
def test_bb_against_oracle(mn):
    col = bb_coloring(mn)
    b = 2 * GraphSpec(*mn).diameter
    S = oracle.quotient(oracle.adjacency(*mn), col.colors)
    assert (S[0, 1], S[1, 0]) == (b, b)


@pytest.mark.parametrize("K", [1, 3])
def test_plus_four(K):
    col = plus_four(K, verify=True)
    q = 1 << K
    assert col.verified == "exhaustive"
    assert np.array_equal(col.quotient, 2 * (J(q) - E(q)) + 4 * E(q))
    with pytest.raises(ValueError):
        plus_four(2)


def test_equal_diagonal_pieces():
    col = hamming_equal_diagonal(3, 2, verify=True)
    S = col.quotient
    assert np.array_equal(S - S[0, 0] * E(8), 2 * (J(8) - E(8)))
    col = odd_equal_diagonal(3, 3, verify=True)
    assert np.array_equal(col.quotient, 3 * (J(8) - E(8)))


@given(st.integers(3, 7), st.data())
def test_gamma_split(k, data):
    q = 1 << k
    c = data.draw(st.integers(2, 4 * q - 2))
    parts = gamma_split(c, k)
    assert len(parts) == 4 and sum(parts) == c
    assert all(p in (0, q) or 2 <= p <= q - 2 for p in parts)


def test_gamma_split_range():
    with pytest.raises(ValueError):
        gamma_split(1, 3)
    with pytest.raises(ValueError):
        gamma_split(3, 2)


@pytest.mark.parametrize("spec", BCIND_BASES, ids=str)
@pytest.mark.parametrize("c", [2, 3, 4, 5, 6])
def test_shipped_families(spec, c):
    fam = bcind_family(spec, c)
    assert len(fam) == 8
    cov = np.sum([f.colors == 1 for f in fam], axis=0)
    assert (cov == c).all()
    for f in fam:
        assert is_perfect_bc(f) == (8 - c, c)


def test_family_search_on_shrikhande():
    masks = search_bcind_family((1, 0), 2)
    assert len(masks) == 8 and (np.sum(masks, axis=0) == 2).all()
    with pytest.raises(UnsupportedSpec):
        search_bcind_family((0, 2), 2)
    with pytest.raises(UnsupportedSpec):
        search_bcind_family((1, 0), 7)


def test_coverage_family_level5():
    fam = coverage_family(5, 5, GraphSpec(0, 3), indices=[0, 7])
    assert len(fam) == 2 and fam[0].spec == GraphSpec(0, 11)


SMALL_PAIRS = [(3, 1), (1, 3), (2, 2), (6, 2), (2, 6), (4, 4), (5, 3), (3, 5), (12, 4), (15, 1),
               (9, 7), (14, 2), (10, 6), (8, 8)]


@pytest.mark.parametrize("b,c", SMALL_PAIRS)
def test_build_small_pairs(b, c):
    col = build_bc_coloring(b, c)
    assert col.verified == "exhaustive" and col.route
    assert is_perfect_bc(col) == (b, c)
    assert necessary_conditions(b, c, col.spec).passed
    if col.spec.order <= 256:
        S = oracle.quotient(oracle.adjacency(col.spec.m, col.spec.n), col.colors)
        assert (S[0, 1], S[1, 0]) == (b, c)


def test_minimal_diameters():
    assert build_bc_coloring(3, 1).spec == GraphSpec(0, 1)
    assert build_bc_coloring(6, 2).spec.diameter == 2
    assert build_bc_coloring(5, 3).spec == GraphSpec(1, 0)
    assert build_bc_coloring(5, 3, "hamming").spec == GraphSpec(0, 3)
    assert build_bc_coloring(15, 1, "doob").spec == GraphSpec(2, 1)


def test_target_spec_extends():
    col = build_bc_coloring(3, 1, spec=(1, 2))
    assert col.spec == GraphSpec(1, 2)
    assert np.array_equal(compute_quotient(col), bc_quotient((1, 2), 3, 1))
    with pytest.raises(UnsupportedSpec):
        build_bc_coloring(14, 2, spec=(0, 3))


def test_rejections():
    for b, c in [(5, 2), (7, 1), (1, 1)]:
        with pytest.raises(NotAdmissible):
            build_bc_coloring(b, c)
    with pytest.raises(DeskScaleExceeded) as info:
        build_bc_coloring(255, 1)
    assert info.value.spec.diameter > 31
    with pytest.raises(ValueError):
        choose_plan(3, 1, "widest")
    assert set(PREFERENCES) == {"minimal", "hamming", "doob"}


def test_plans_share_minimal_diameter():
    ds = {p.spec.diameter for p in plans(6, 2)}
    assert ds == {2}
    assert unite_first(bb_coloring((0, 1)), 1).k == 2
