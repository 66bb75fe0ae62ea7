import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from doobcolor.constructions.multifold import (
    MAX_DIAMETER, multifold_params, multifold_partition, partition_coloring, split_spec,
)
from doobcolor.eqpart import compute_quotient, is_mu_fold_perfect
from doobcolor.errors import DeskScaleExceeded, UnsupportedSpec
from doobcolor.graph import GraphSpec
from doobcolor.params import multifold_exists


@given(st.integers(0, 200))
def test_params(D):
    alpha, s = multifold_params(D)
    assert alpha % 2 == 1 and alpha << s == 3 * D + 1


@given(st.integers(0, 6), st.integers(0, 30), st.integers(1, 4))
def test_split_spec(m, n, r):
    spec = GraphSpec(m, n) if m + n else GraphSpec(0, 1)
    if spec.diameter <= 1 << r:
        return
    hi, lo = split_spec(spec, r)
    assert hi.diameter == 1 << r and hi.m + lo.m == spec.m and hi.n + lo.n == spec.n


@pytest.mark.parametrize("mn", [(0, 1), (0, 5), (2, 1), (1, 3)])
def test_one_fold(mn):
    part = multifold_partition(mn)
    assert part.alpha == 1 and part.verified == "exhaustive"


@pytest.mark.parametrize("mn", [(2, 5), (1, 7), (3, 3)])
def test_seven_fold(mn):
    part = multifold_partition(mn)
    assert part.alpha == 7 and len(part) == 4 and part.verified == "exhaustive"
    assert multifold_exists(mn, 7)
    S = compute_quotient(part.coloring)
    assert np.array_equal(S, 7 * np.ones((4, 4), int) - np.eye(4, dtype=int))


def test_five_fold_sampled():
    part = multifold_partition((0, 13), samples=300)
    assert part.alpha == 5 and len(part) == 8 and part.verified.startswith("sampled")


def test_unsupported():
    with pytest.raises(UnsupportedSpec):
        partition_coloring((0, 4))
    with pytest.raises(DeskScaleExceeded):
        partition_coloring((0, 4 * 8 + 1))
    assert MAX_DIAMETER == 31


def test_unverified_codes_are_still_codes():
    part = multifold_partition((0, 9), verify=False)
    assert part.verified is None
    assert is_mu_fold_perfect(part[2], 7, vertices=np.arange(0, 4**9, 4099))
