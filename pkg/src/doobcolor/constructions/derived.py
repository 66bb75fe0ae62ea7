"""Colorings assembled from the base pieces: multipartite, 3J, 3(J - E), MDS splittings, radius-2 codes."""

from __future__ import annotations

from collections import deque
from functools import lru_cache

import numpy as np

from ..eqpart import (
    Code,
    Coloring,
    completely_regular_check,
    merge_colors,
    verify_completely_regular_at,
)
from ..errors import ConditionViolated, NotCompletelyRegular, UnsupportedSpec, VerificationError
from ..gf import field
from ..graph import EXHAUSTIVE_LIMIT, GraphSpec, ProductLayout, as_spec, from_digits
from ..search import SearchBudget, find_block_factors
from .base import (
    _q_tables_cached,
    mdspart_labels,
    multipartite_diameter4,
    multipartite_hamming,
    multipartite_quotient,
)
from .common import E, J, certify, sample_vertices
from .compose import diag_product, multiply_coloring, split_coloring


def _log2_diameter(spec: GraphSpec) -> int:
    D = spec.diameter
    if D < 1 or D & (D - 1):
        raise UnsupportedSpec(f"{spec}: diameter {D} is not a power of 2")
    return D.bit_length() - 1


def _odd_part(D: int) -> tuple[int, int]:
    k = (D & -D).bit_length() - 1
    return D >> k, k


# ------------------------------------------------------------- multipartite


def multipartite(k: int, spec, *, verify: bool = True) -> Coloring:
    """k-multipartite coloring of a graph of diameter 2^k, colors (i, j) -> i 2^k + j + 1.

    Diameter 4 slices a 1-perfect partition; m = 0 uses the GF(2^k)
    splitting of the zero-sum code; m > 0 with k >= 4 splits the
    (k-2)-multipartite coloring of H(2^(k-2), 4) with c = m.
    """
    spec = as_spec(spec)
    if k < 2:
        raise UnsupportedSpec("k must be at least 2")
    if spec.diameter != 1 << k:
        raise UnsupportedSpec(f"{spec} does not have diameter 2^{k}")
    if k == 2:
        return multipartite_diameter4(spec, verify=verify)
    if spec.m == 0:
        return multipartite_hamming(k, verify=verify)
    if k == 3:
        raise UnsupportedSpec(f"{spec}: no 3-multipartite coloring is available when m > 0")
    base = multipartite_hamming(k - 2, verify=False)
    base.quotient = multipartite_quotient(k - 2)
    col = split_coloring(base, spec.m, verify=False)
    col.name = f"multipartite{k}({spec})"
    col.parts = (4, 1 << k)
    return certify(col, multipartite_quotient(k), verify=verify)


def merge_multipartite_by_index(h: Coloring) -> Coloring:
    """Unite the four colors (0, j), ..., (3, j) for each j; quotient 3J."""
    q = h.k // 4
    return merge_colors(h, [[i * q + j + 1 for i in range(4)] for j in range(q)],
                        name=f"3J({h.spec})")


# ------------------------------------------------------------------- 3J


@lru_cache(maxsize=None)
def block_coloring(spec) -> Coloring:
    """8-coloring of D(2,0) or D(1,2) with quotient [[2J, J], [J, 2J]].

    Diagonal product of an 8-coloring of D(1,0) with quotient
    [[A, J], [J, A]] and a 4-coloring of the remaining factor with quotient
    2J - A, for a circulant A found by search.
    """
    spec = as_spec(spec)
    if spec not in (GraphSpec(2, 0), GraphSpec(1, 2)):
        raise UnsupportedSpec(f"the block coloring is built on D(2,0) and D(1,2), not {spec}")
    H = GraphSpec(spec.m - 1, spec.n)
    g, h, _ = find_block_factors(GraphSpec(1, 0), H, budget=SearchBudget(seconds=120, seed=0))
    col = diag_product(g, [h, h], verify=False)
    col.name = f"block8({spec})"
    return certify(col, np.block([[2 * J(4), J(4)], [J(4), 2 * J(4)]]))


def three_j_eight(spec, *, verify: bool = True) -> Coloring:
    """8-coloring with quotient 3J on diameter 8 with m > 0, as f(x, y) = g1(x) + g2(y).

    g1: a 2-multipartite coloring of a diameter-4 factor with colors
    (0, j), (1, j) and (2, j), (3, j) united; g2: :func:`block_coloring` on
    D(2,0) or D(1,2).  Colors are added in Z2 x Z4 (half, index).
    """
    spec = as_spec(spec)
    if spec.diameter != 8 or spec.m == 0:
        raise UnsupportedSpec(f"{spec}: this route needs diameter 8 and m > 0")
    m2 = min(spec.m, 2)
    second = GraphSpec(m2, 4 - 2 * m2)
    first = GraphSpec(spec.m - m2, spec.n - second.n)
    layout = ProductLayout([first, second])
    g1 = multipartite_diameter4(first)
    g2 = block_coloring(second)

    def func(idx):
        a = g1.colors_at(layout.project(idx, 0)) - 1
        b = g2.colors_at(layout.project(idx, 1)) - 1
        half = (a // 8 + b // 4) & 1
        j = (a % 4 + b % 4) & 3
        return half * 4 + j + 1

    col = Coloring(layout.spec, func=func, k=8, name=f"3J({spec})")
    return certify(col, 3 * J(8), verify=verify)


def three_j(spec, *, verify: bool = True) -> Coloring:
    """2^k-coloring of a diameter-2^k graph with quotient 3J."""
    spec = as_spec(spec)
    k = _log2_diameter(spec)
    if k < 2:
        raise UnsupportedSpec("diameter must be at least 4")
    if k == 3 and spec.m > 0:
        return three_j_eight(spec, verify=verify)
    col = merge_multipartite_by_index(multipartite(k, spec, verify=False))
    return certify(col, 3 * J(1 << k), verify=verify)


def three_j_minus_e(spec, *, verify: bool = True) -> Coloring:
    """2^k-coloring of a diameter-(2^k - 1) graph with quotient 3(J - E).

    Take the (2^k + 1)-coloring of D(m, n + 1) whose first 2^k classes split
    a 2-MDS code; every line along the new coordinate meets that code once,
    and the class of the meeting point is the color.
    """
    spec = as_spec(spec)
    D = spec.diameter + 1
    if D & (D - 1) or D < 4:
        raise UnsupportedSpec(f"{spec}: diameter is not 2^k - 1 with k >= 2")
    k = D.bit_length() - 1
    big = GraphSpec(spec.m, spec.n + 1)
    g = gamma_mds_coloring(big, k, verify=False)
    q = 1 << k

    def func(idx):
        base = np.asarray(idx, dtype=np.int64) << 2
        return np.min(np.stack([g.colors_at(base | w) for w in range(4)], axis=-1), axis=-1)

    col = Coloring(spec, func=func, k=q, name=f"3(J-E)({spec})")
    return certify(col, 3 * (J(q) - E(q)), verify=verify)


# ------------------------------------------------------- gamma MDS colorings


def gamma_mds_quotient(spec, k: int) -> np.ndarray:
    """Rows 0..0, deg for the parts; gamma, ..., gamma, deg - 2m - n for the complement."""
    spec = as_spec(spec)
    q = 1 << k
    gamma = spec.diameter // q
    S = np.zeros((q + 1, q + 1), dtype=np.int64)
    S[:q, q] = spec.degree
    S[q, :q] = gamma
    S[q, q] = spec.degree - spec.diameter
    return S


def _gamma_mds_base(spec: GraphSpec, k: int) -> Coloring:
    q = 1 << k
    if spec.m == 0:
        def func(idx):
            a, j = mdspart_labels(k, idx)
            return np.where(a == 0, j + 1, q + 1)
        return Coloring(spec, func=func, k=q + 1, name=f"mdspart-coloring({spec})")
    if k == 2:
        h = multipartite_diameter4(spec, verify=False)
        return merge_colors(h, [[j + 1] for j in range(4)] + [list(range(5, 17))])
    if k == 3:
        raise UnsupportedSpec(f"{spec}: k = 3 with m > 0 is not available")
    inner = gamma_mds_coloring(GraphSpec(0, 1 << (k - 2)), k - 2, verify=False)
    col = split_coloring(inner, spec.m, verify=False)
    return merge_colors(col, [[j + 1] for j in range(q)] + [list(range(q + 1, q + 5))])


def gamma_mds_coloring(spec, k: int, *, verify: bool = True) -> Coloring:
    """(2^k + 1)-coloring of a diameter gamma 2^k graph; the first 2^k classes split a 2-MDS code.

    gamma > 1 multiplies a diameter-2^k base coloring by gamma, choosing the
    base D(m0, n0) so that the leftover Shrikhande coordinates fit the
    multiplication factors.
    """
    spec = as_spec(spec)
    q = 1 << k
    if k < 2 or spec.diameter % q:
        raise UnsupportedSpec(f"{spec}: diameter is not gamma 2^k with k >= 2")
    gamma = spec.diameter // q
    S = gamma_mds_quotient(spec, k)
    if gamma == 1:
        col = _gamma_mds_base(spec, k)
    else:
        col = None
        for m0 in range(min(q // 2, spec.m // gamma), -1, -1):
            if m0 and k == 3:
                continue
            n0 = q - 2 * m0
            extra = spec.m - gamma * m0
            if 0 <= extra <= n0 * (gamma // 2):
                base = _gamma_mds_base(GraphSpec(m0, n0), k)
                base.quotient = gamma_mds_quotient(base.spec, k)
                col = multiply_coloring(base, gamma, extra, spec.n, verify=False)
                break
        if col is None:
            raise UnsupportedSpec(f"{spec}: no base graph of diameter {q} multiplies to it")
    col.name = f"gamma-mds({spec},k={k})"
    return certify(col, S, verify=verify)


# --------------------------------------------------------- radius-2 codes


def rad2_quotient(spec, c: int) -> np.ndarray:
    spec = as_spec(spec)
    deg, D = spec.degree, spec.diameter
    return np.array([[0, deg, 0], [c, deg - D, D - c], [0, deg, 0]], dtype=np.int64)


def rad2_code(spec, k: int, b: int, *, verify: bool = True, samples: int = 10_000,
              seed: int = 0) -> Code:
    """Completely regular code of covering radius 2: the first ``b`` parts of the gamma-MDS coloring.

    Needs diameter gamma 2^k with gamma odd, k >= 4 and 1 <= b <= 2^k - 1;
    the intersection numbers are those of :func:`rad2_quotient` with
    c = gamma b.  The result carries ``quotient`` and ``verified``.
    """
    spec = as_spec(spec)
    D = spec.diameter
    if D % (1 << k):
        raise ConditionViolated(f"diameter {D} is not a multiple of 2^{k}", 1)
    gamma = D >> k
    if gamma % 2 == 0:
        raise ConditionViolated(f"gamma = {gamma} is even", 1)
    if k < 4:
        raise ConditionViolated(f"k = {k} < 4", 1)
    if not 1 <= b <= (1 << k) - 1:
        raise ConditionViolated(f"b = {b} outside 1..{(1 << k) - 1}", 2)
    g = gamma_mds_coloring(spec, k, verify=False)
    wanted = np.zeros(g.k + 1, dtype=bool)
    wanted[1: b + 1] = True
    code = Code(spec, func=lambda idx: wanted[g.colors_at(idx)], name=f"rad2({spec},k={k},b={b})")
    code.quotient = rad2_quotient(spec, gamma * b)
    code.verified = None
    if verify:
        code.verified = verify_rad2(code, k, samples=samples, seed=seed)
    return code


def syndrome_representatives(k: int) -> np.ndarray:
    """One word of H(2^k, 4) per two-row syndrome (a, sigma), indexed by a 2^k + sigma.

    Breadth-first search over the syndrome group; a single-symbol change
    v at position p moves the syndrome by (v, pos_p v).
    """
    tab = _q_tables_cached(k)
    n = q = 1 << k
    words = {0: np.zeros(n, dtype=np.int64)}
    todo = deque([0])
    while todo:
        key = todo.popleft()
        a, s = divmod(key, q)
        for p in range(n):
            for v in range(1, 4):
                nxt = (a ^ v) * q + (s ^ int(tab[p][v]))
                if nxt not in words:
                    w = words[key].copy()
                    w[p] ^= v
                    words[nxt] = w
                    todo.append(nxt)
    if len(words) != 4 * q:
        raise VerificationError("syndrome map is not onto")
    reps = np.stack([words[key] for key in range(4 * q)])
    spec = GraphSpec(0, n)
    return from_digits(spec, np.zeros((len(reps), 0), dtype=np.int64), reps)


def _syndrome_key(k: int, idx) -> np.ndarray:
    a, j = mdspart_labels(k, idx)
    sigma = np.where(j == 0, 0, field(k).exp[np.maximum(j - 1, 0)])
    return a * (1 << k) + sigma


def verify_rad2(code: Code, k: int, *, samples: int = 10_000, seed: int = 0) -> str:
    """Check the radius-2 intersection numbers; returns a description of what was checked.

    Exhaustive when the graph fits the budget.  For H(2^k, 4) membership
    depends only on the syndrome, so XOR by a zero-syndrome word is an
    automorphism fixing the code; checking one vertex per syndrome covers
    every translation class.  Random vertices are checked on top.
    """
    spec = code.spec
    S = code.quotient
    if spec.order <= EXHAUSTIVE_LIMIT:
        ia = completely_regular_check(code)
        if not np.array_equal(ia.quotient, S):
            raise VerificationError(f"distance quotient {ia.quotient.tolist()} != {S.tolist()}")
        return "exhaustive"
    parts = []
    try:
        if spec.m == 0 and spec.n == 1 << k:
            reps = syndrome_representatives(k)
            _check_translation_invariance(code, k, reps, seed)
            verify_completely_regular_at(code, S, reps)
            parts.append(f"{len(reps)} syndrome representatives")
        vs = sample_vertices(spec, samples, seed)
        verify_completely_regular_at(code, S, vs)
        parts.append(f"{vs.size} random vertices")
    except NotCompletelyRegular as exc:
        raise VerificationError(str(exc)) from exc
    return " + ".join(parts)


def _check_translation_invariance(code: Code, k: int, reps: np.ndarray, seed: int, trials: int = 2048):
    """XOR with random zero-syndrome words must preserve membership."""
    spec = code.spec
    rng = np.random.default_rng(seed + 1)
    x = rng.integers(0, spec.order, size=trials, dtype=np.int64)
    y = rng.integers(0, spec.order, size=trials, dtype=np.int64)
    kernel = y ^ reps[_syndrome_key(k, y)]
    if _syndrome_key(k, kernel).any():
        raise VerificationError("representative table does not cancel syndromes")
    if (code.contains(x) != code.contains(x ^ kernel)).any():
        raise VerificationError("code is not invariant under zero-syndrome translations")
