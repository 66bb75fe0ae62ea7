import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from doobcolor.constructions.base import mds_coloring
from doobcolor.eqpart import (
    Code, Coloring, code_distance, completely_regular_check, compute_quotient, constant_coloring,
    distance_coloring, distance_to_code, is_mu_fold_perfect, is_perfect, is_perfect_bc,
    merge_colors, pairwise_min_distance, sphere2, verify_completely_regular_at, verify_quotient,
)
from doobcolor.errors import NotCompletelyRegular, NotEquitable, SingletonCode, WrongColorCount
from doobcolor.graph import GraphSpec, distance_indices

import oracle

A_CACHE = {mn: oracle.adjacency(*mn) for mn in [(1, 0), (0, 2), (0, 3)]}
SPECS = st.sampled_from(sorted(A_CACHE))


@st.composite
def random_coloring(draw):
    mn = draw(SPECS)
    spec = GraphSpec(*mn)
    k = draw(st.integers(1, 4))
    cols = np.array(draw(st.lists(st.integers(1, k), min_size=spec.order, max_size=spec.order)))
    cols[:k] = np.arange(1, k + 1)  # surjective
    return mn, Coloring(spec, cols, k=k)


@given(random_coloring())
def test_quotient_agrees_with_matrix_oracle(mc):
    mn, col = mc
    ref = oracle.quotient(A_CACHE[mn], col.colors)
    if ref is None:
        with pytest.raises(NotEquitable):
            compute_quotient(col)
        assert not is_perfect(col)
    else:
        assert (compute_quotient(col) == ref).all()


@given(random_coloring(), st.data())
def test_sampled_quotient_agrees(mc, data):
    mn, col = mc
    ref = oracle.quotient(A_CACHE[mn], col.colors)
    vs = np.array(data.draw(st.lists(st.integers(0, col.spec.order - 1), min_size=1, max_size=20)))
    if ref is not None:
        verify_quotient(col, ref, vertices=vs)


@pytest.mark.parametrize("mn", [(1, 0), (0, 3), (1, 1)])
def test_witness_after_flip(mn):
    spec = GraphSpec(*mn)
    col = mds_coloring(spec)
    colors = col.colors.astype(np.int64).copy()
    colors[7] = colors[7] % 4 + 1
    bad = Coloring(spec, colors, k=4)
    S = spec.diameter * (np.ones((4, 4), int) - np.eye(4, dtype=int))
    with pytest.raises(NotEquitable) as info:
        verify_quotient(bad, S)
    w = info.value
    assert w.observed_row != w.expected_row
    assert distance_indices(spec, w.vertex, 7) <= 1


def test_coloring_validation():
    spec = GraphSpec(0, 1)
    with pytest.raises(ValueError):
        Coloring(spec, [1, 1, 1, 3], k=3)  # color 2 unused
    with pytest.raises(ValueError):
        Coloring(spec, [1, 2])
    with pytest.raises(ValueError):
        Coloring(spec, func=lambda i: i)
    with pytest.raises(ValueError):
        merge_colors(Coloring(spec, [1, 2, 3, 4]), [[1, 2], [2, 3, 4]])
    assert constant_coloring(spec).colors_at([0, 3]).tolist() == [1, 1]


def test_merge_and_bc():
    col = mds_coloring(GraphSpec(0, 2))
    two = merge_colors(col, [[1], [2, 3, 4]])
    assert is_perfect_bc(two) == (6, 2)
    with pytest.raises(WrongColorCount):
        is_perfect_bc(col)


@pytest.mark.parametrize("mn", [(0, 1), (0, 3), (1, 0), (1, 1)])
def test_single_vertex_is_completely_regular(mn):
    spec = GraphSpec(*mn)
    D, deg = spec.diameter, spec.degree
    ia = completely_regular_check(Code.from_indices(spec, [0]))
    # intersection numbers of H(D, 4)
    want = tuple(3 * (D - i) for i in range(D)) + tuple(range(1, D + 1))
    assert ia.values == want and ia.radius == D
    assert int(ia.quotient[0].sum()) == deg


def test_not_completely_regular():
    spec = GraphSpec(0, 2)
    with pytest.raises(NotCompletelyRegular):
        completely_regular_check(Code.from_indices(spec, [0, 1, 5]))


def test_ball_counts():
    spec = GraphSpec(1, 1)
    whole = Code(spec, np.ones(spec.order, bool))
    assert is_mu_fold_perfect(whole, spec.degree + 1)
    assert not is_mu_fold_perfect(Code.from_indices(spec, [0]), 1)


@given(SPECS, st.sets(st.integers(0, 63), min_size=2, max_size=12))
def test_code_distance_matches_bfs(mn, words):
    spec = GraphSpec(*mn)
    words = sorted(w for w in words if w < spec.order)
    if len(words) < 2:
        return
    A = A_CACHE[mn]
    ref = min(oracle.distances(A, a)[b] for a in words for b in words if a < b)
    code = Code.from_indices(spec, words)
    assert code_distance(code) == ref == code_distance(code, method="pairwise")
    assert pairwise_min_distance(spec, np.array(words)) == ref


def test_singleton_distance():
    with pytest.raises(SingletonCode):
        code_distance(Code.from_indices(GraphSpec(0, 2), [3]))


@given(SPECS, st.sets(st.integers(0, 63), min_size=1, max_size=6))
def test_distance_coloring_and_bounded_search(mn, words):
    spec = GraphSpec(*mn)
    words = sorted(w for w in words if w < spec.order) or [0]
    A = A_CACHE[mn]
    ref = np.min([oracle.distances(A, w) for w in words], axis=0)
    code = Code.from_indices(spec, words)
    assert (distance_coloring(code).colors == ref + 1).all()
    near = distance_to_code(code, np.arange(spec.order), 2)
    assert (near == np.where(ref <= 2, ref, -1)).all()


@pytest.mark.parametrize("mn", [(1, 0), (0, 3)])
def test_sphere2(mn):
    spec = GraphSpec(*mn)
    dist = oracle.distances(A_CACHE[mn], 9)
    s2 = sphere2(spec, np.array([9]))[0]
    assert sorted(s2.tolist()) == sorted(np.flatnonzero(dist == 2).tolist())


def test_sampled_complete_regularity():
    spec = GraphSpec(0, 3)
    code = mds_coloring(spec).code(1)
    ia = completely_regular_check(code)
    assert ia == [9, 3]
    assert verify_completely_regular_at(code, ia.quotient, np.arange(0, 64, 5)) == ia
    with pytest.raises(NotCompletelyRegular):
        verify_completely_regular_at(code, np.array([[0, 9], [4, 5]]), np.arange(64))
