import numpy as np
import pytest

from doobcolor.constructions.common import E, J
from doobcolor.constructions.derived import (
    _syndrome_key, block_coloring, gamma_mds_coloring, gamma_mds_quotient, merge_multipartite_by_index,
    multipartite, rad2_code, rad2_quotient, syndrome_representatives, three_j, three_j_minus_e,
)
from doobcolor.eqpart import compute_quotient
from doobcolor.errors import ConditionViolated, UnsupportedSpec
from doobcolor.graph import GraphSpec

import oracle


def test_multipartite_small_against_oracle():
    col = multipartite(2, (0, 4))
    S = oracle.quotient(oracle.adjacency(0, 4), col.colors)
    assert np.array_equal(S, np.kron(J(4) - E(4), J(4)))
    merged = merge_multipartite_by_index(col)
    assert np.array_equal(compute_quotient(merged), 3 * J(4))


@pytest.mark.parametrize("k,mn", [(2, (1, 2)), (2, (2, 0)), (3, (0, 8)), (4, (3, 10))])
def test_multipartite(k, mn):
    col = multipartite(k, mn)
    assert col.k == 4 << k and col.verified is not None


def test_multipartite_unsupported():
    with pytest.raises(UnsupportedSpec):
        multipartite(3, (1, 6))
    with pytest.raises(UnsupportedSpec):
        multipartite(2, (0, 5))
    with pytest.raises(UnsupportedSpec):
        multipartite(1, (0, 2))


@pytest.mark.parametrize("mn", [(0, 4), (1, 2), (0, 8), (1, 6), (2, 4)])
def test_three_j(mn):
    col = three_j(mn)
    D = GraphSpec(*mn).diameter
    assert col.k == D and np.array_equal(col.quotient, 3 * J(D)) and col.verified == "exhaustive"


def test_block_coloring():
    col = block_coloring((2, 0))
    assert np.array_equal(compute_quotient(col), np.block([[2 * J(4), J(4)], [J(4), 2 * J(4)]]))
    with pytest.raises(UnsupportedSpec):
        block_coloring((0, 4))


@pytest.mark.parametrize("mn", [(0, 3), (1, 1), (0, 7)])
def test_three_j_minus_e(mn):
    col = three_j_minus_e(mn)
    q = GraphSpec(*mn).diameter + 1
    assert np.array_equal(col.quotient, 3 * (J(q) - E(q))) and col.verified == "exhaustive"
    if mn == (0, 3):
        assert np.array_equal(oracle.quotient(oracle.adjacency(0, 3), col.colors), col.quotient)


def test_three_j_minus_e_range():
    with pytest.raises(UnsupportedSpec):
        three_j_minus_e((0, 4))
    with pytest.raises(UnsupportedSpec):
        three_j_minus_e((2, 3))
    with pytest.raises(UnsupportedSpec):
        three_j((0, 3))


@pytest.mark.parametrize("mn,k", [((0, 4), 2), ((1, 2), 2), ((0, 8), 2), ((2, 4), 2), ((0, 8), 3)])
def test_gamma_mds(mn, k):
    col = gamma_mds_coloring(mn, k)
    assert col.verified == "exhaustive"
    assert np.array_equal(col.quotient, gamma_mds_quotient(mn, k))
    # the first 2^k classes together form a 2-MDS code
    assert col.class_sizes()[: 1 << k].sum() == GraphSpec(*mn).order // 4


def test_gamma_mds_unsupported():
    with pytest.raises(UnsupportedSpec):
        gamma_mds_coloring((1, 6), 3)
    with pytest.raises(UnsupportedSpec):
        gamma_mds_coloring((0, 6), 2)


def test_rad2_conditions():
    with pytest.raises(ConditionViolated):
        rad2_code((0, 24), 4, 1)
    with pytest.raises(ConditionViolated):
        rad2_code((0, 32), 4, 1)
    with pytest.raises(ConditionViolated):
        rad2_code((0, 8), 3, 1)
    with pytest.raises(ConditionViolated) as info:
        rad2_code((0, 16), 4, 16)
    assert info.value.args
    assert rad2_quotient((0, 16), 1).tolist() == [[0, 48, 0], [1, 32, 15], [0, 48, 0]]


def test_syndrome_representatives():
    reps = syndrome_representatives(4)
    assert len(reps) == 64
    assert (_syndrome_key(4, reps) == np.arange(64)).all()


def test_rad2_sampled_doob():
    code = rad2_code((1, 14), 4, 2, samples=500)
    assert "random vertices" in code.verified
    assert code.quotient[1, 0] == 2
