"""Product constructions: extension, diagonal products, multiplying, splitting, tilings.

Each operation takes verified colorings of smaller graphs and returns a
lazy coloring of the product, certified against the quotient its
construction predicts.  Product coordinates follow
:class:`~doobcolor.graph.ProductLayout`: factor by factor, Shrikhande
coordinates first within the Shrikhande block and likewise for K4.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from ..eqpart import Coloring, compute_quotient
from ..errors import BlockStructureMismatch, ConditionViolated, UnsupportedSpec, VerificationError
from ..graph import GraphSpec, ProductLayout, as_spec, digits, from_digits
from .base import D40, d40_classes, label_sum, multipartite_diameter4
from .common import E, J, certify, is_equal_diagonal


def quotient_of(coloring: Coloring) -> np.ndarray:
    """The attached quotient, else an exhaustive computation."""
    S = getattr(coloring, "quotient", None)
    if S is None:
        S = compute_quotient(coloring)
        coloring.quotient = S
    return np.asarray(S, dtype=np.int64)


def _z4sq_sum(shr: np.ndarray) -> np.ndarray:
    a = (shr >> 2).sum(axis=-1) & 3
    b = (shr & 3).sum(axis=-1) & 3
    return (a << 2) | b


# ------------------------------------------------------------------ extend


def extend(g: Coloring, m_extra: int, n_extra: int, *, verify: bool = True) -> Coloring:
    """Copy ``g`` along the original coordinates of D(m + m', n + n'); quotient S + (6m' + 3n')E."""
    if m_extra < 0 or n_extra < 0:
        raise ValueError("extension sizes must be non-negative")
    S = quotient_of(g)
    extra = GraphSpec(m_extra, n_extra)
    layout = ProductLayout([g.spec, extra])
    col = Coloring(layout.spec, func=lambda idx: g.colors_at(layout.project(idx, 0)), k=g.k,
                   name=f"extend({g.name},{m_extra},{n_extra})")
    return certify(col, S + extra.degree * E(g.k), verify=verify)


# ----------------------------------------------------------- diag product


def block_offsets(sizes: Sequence[int]) -> list[int]:
    return [int(v) for v in np.concatenate([[0], np.cumsum(sizes)[:-1]])]


def check_block_structure(S: np.ndarray, sizes: Sequence[int]):
    """Diagonal blocks equal-diagonal, off-diagonal blocks constant."""
    if sum(sizes) != S.shape[0]:
        raise BlockStructureMismatch(f"block sizes {list(sizes)} do not add up to {S.shape[0]}")
    off = block_offsets(sizes)
    for i, (oi, ki) in enumerate(zip(off, sizes)):
        for j, (oj, kj) in enumerate(zip(off, sizes)):
            blk = S[oi: oi + ki, oj: oj + kj]
            if i == j and not is_equal_diagonal(blk):
                raise BlockStructureMismatch(f"diagonal block {i} is not equal-diagonal:\n{blk}")
            if i != j and (blk != blk.flat[0]).any():
                raise BlockStructureMismatch(f"block ({i},{j}) is not constant:\n{blk}")


def diag_product(g: Coloring, hs: Sequence[Coloring], *, verify: bool = True) -> Coloring:
    """Diagonal product of ``g`` on G with one coloring per block on a common H.

    The colors of ``g`` are grouped into consecutive blocks of sizes
    ``h.k`` for ``h`` in ``hs``; with g(x) = (i, j) the product color is
    (i, h_i(y) + j mod k_i).  Quotient: S_g plus blockdiag(B_i).
    """
    if not hs:
        raise ValueError("need at least one coloring of H")
    H = hs[0].spec
    if any(h.spec != H for h in hs):
        raise BlockStructureMismatch("all block colorings must live on the same graph")
    sizes = [h.k for h in hs]
    S = quotient_of(g)
    check_block_structure(S, sizes)
    Bs = [quotient_of(h) for h in hs]
    for i, B in enumerate(Bs):
        if not is_equal_diagonal(B):
            raise BlockStructureMismatch(f"quotient of block coloring {i} is not equal-diagonal")
    off = block_offsets(sizes)
    layout = ProductLayout([g.spec, H])
    block_of = np.concatenate([[0]] + [[i] * k for i, k in enumerate(sizes)]).astype(np.int64)
    offs = np.array(off, dtype=np.int64)
    ks = np.array(sizes, dtype=np.int64)

    def func(idx):
        gx = g.colors_at(layout.project(idx, 0))
        y = layout.project(idx, 1)
        blk = block_of[gx]
        j = gx - 1 - offs[blk]
        hy = np.zeros_like(gx)
        for i, h in enumerate(hs):
            sel = blk == i
            if sel.any():
                hy[sel] = h.colors_at(y[sel]) - 1
        return offs[blk] + (hy + j) % ks[blk] + 1

    want = S.copy()
    for o, k, B in zip(off, sizes, Bs):
        want[o: o + k, o: o + k] += B
    col = Coloring(layout.spec, func=func, k=g.k, name=f"diag({g.name};{','.join(h.name for h in hs)})")
    return certify(col, want, verify=verify)


# --------------------------------------------------------------- multiply


def multiply_factors(n: int, k: int, m_extra: int) -> list[GraphSpec]:
    """Factors D(a_i, b_i), 2a_i + b_i = k, with sum a_i = m_extra, filled greedily."""
    cap = k // 2
    if m_extra < 0 or m_extra > n * cap:
        raise UnsupportedSpec(f"cannot place {m_extra} Shrikhande coordinates into {n} factors of diameter {k}")
    out, left = [], m_extra
    for _ in range(n):
        a = min(cap, left)
        left -= a
        out.append(GraphSpec(a, k - 2 * a))
    return out


def multiply_coloring(g: Coloring, k: int, m_extra: int = 0, n_extra: int | None = None, *,
                      verify: bool = True) -> Coloring:
    """Coloring of D(mk + m', n') with quotient kS, where 2m' + n' = kn.

    Each Shrikhande coordinate of the source becomes a D(k,0) block read
    through its Z4^2 coordinate sum; each K4 coordinate becomes a factor
    D(a_i, b_i) read through its 2-MDS label class.
    """
    if k < 1:
        raise ValueError("k must be positive")
    src = g.spec
    if n_extra is None:
        n_extra = k * src.n - 2 * m_extra
    if 2 * m_extra + n_extra != k * src.n:
        raise UnsupportedSpec(f"2m' + n' must equal k n = {k * src.n}")
    if k % 2 and n_extra < src.n:
        raise UnsupportedSpec("odd k needs n' >= n")
    S = quotient_of(g)
    factors = [GraphSpec(k, 0)] * src.m + multiply_factors(src.n, k, m_extra)
    layout = ProductLayout(factors)

    def func(idx):
        shr = np.stack([_z4sq_sum(digits(factors[i], layout.project(idx, i))[0])
                        for i in range(src.m)], axis=-1) if src.m else np.zeros(np.shape(idx) + (0,), np.int64)
        k4 = np.stack([label_sum(factors[src.m + j], layout.project(idx, src.m + j))
                       for j in range(src.n)], axis=-1) if src.n else np.zeros(np.shape(idx) + (0,), np.int64)
        return g.colors_at(from_digits(src, shr, k4))

    col = Coloring(layout.spec, func=func, k=g.k, name=f"multiply({g.name},{k})")
    return certify(col, k * S, verify=verify)


# ------------------------------------------------------------------ split


@lru_cache(maxsize=None)
def _multipartite4(spec: GraphSpec) -> Coloring:
    return multipartite_diameter4(spec)


def split_factors(n: int, c: int) -> list[GraphSpec]:
    if not 0 <= c <= 2 * n:
        raise UnsupportedSpec(f"c must lie in 0..{2 * n}")
    return multiply_factors(n, 4, c)


def split_coloring(g: Coloring, c: int = 0, *, verify: bool = True) -> Coloring:
    """4k-coloring of D(4m + c, 4n - 2c) with quotient S (x) J_4.

    Color (g(z), s): z reads each D(4,0) block through its coordinate sum
    and each diameter-4 factor through the first index of its
    2-multipartite color; s is the sum mod 4 of the distance-3 class
    indices collected from all blocks.
    """
    src = g.spec
    S = quotient_of(g)
    factors = [D40] * src.m + split_factors(src.n, c)
    layout = ProductLayout(factors)
    parts = [_multipartite4(f) for f in factors[src.m:]]

    def func(idx):
        shape = np.shape(idx)
        s = np.zeros(shape, dtype=np.int64)
        shr = np.zeros(shape + (src.m,), dtype=np.int64)
        k4 = np.zeros(shape + (src.n,), dtype=np.int64)
        for i in range(src.m):
            a, t = d40_classes(layout.project(idx, i))
            shr[..., i] = a
            s += t
        for j, h in enumerate(parts):
            col = h.colors_at(layout.project(idx, src.m + j)) - 1
            k4[..., j] = col // 4
            s += col % 4
        z = from_digits(src, shr, k4)
        return (g.colors_at(z) - 1) * 4 + (s & 3) + 1

    col = Coloring(layout.spec, func=func, k=4 * g.k, name=f"split({g.name},{c})")
    return certify(col, np.kron(S, J(4)), verify=verify)


# ----------------------------------------------------------------- tiling


def coverage(colorings: Sequence[Coloring], color: int = 1) -> np.ndarray:
    """Per vertex, the number of colorings giving it ``color`` (exhaustive)."""
    total = np.zeros(colorings[0].spec.order, dtype=np.int64)
    for f in colorings:
        total += f.colors == color
    return total


def _constant_coverage(family: Sequence[Coloring], item: int) -> int:
    cov = coverage(family)
    if (cov != cov[0]).any():
        raise ConditionViolated(f"color-1 coverage of the family is not constant ({cov.min()}..{cov.max()})", item)
    return int(cov[0])


def tiling_compose(g: Coloring, family: Sequence[Coloring], *, verify: bool = True) -> list[Coloring]:
    """The colorings f^i(x, y) = f_{g(x) + i - 1}(y), i = 1..2^l, on G x H.

    ``g`` is a 2^l-coloring with quotient s(J - E) + aE; ``family`` holds
    2^l perfect 2-colorings of H with a common quotient [[a', b'], [c', d']]
    and constant color-1 coverage r.  The returned colorings carry the
    attribute ``coverage`` (measured on the product when it fits the
    exhaustive budget, else predicted as r).
    """
    q = g.k
    S = quotient_of(g)
    s = int(S[0, 1]) if q > 1 else 0
    a = int(S[0, 0])
    if not np.array_equal(S, s * (J(q) - E(q)) + a * E(q)):
        raise ConditionViolated("quotient of g is not of the form s(J - E) + aE", 1)
    if len(family) != q:
        raise ConditionViolated(f"need {q} colorings in the family, got {len(family)}", 2)
    H = family[0].spec
    if any(f.spec != H or f.k != 2 for f in family):
        raise ConditionViolated("family members must be 2-colorings of one graph", 2)
    Qs = [quotient_of(f) for f in family]
    if any(not np.array_equal(Q, Qs[0]) for Q in Qs):
        raise ConditionViolated("family members have different quotients", 2)
    r = _constant_coverage(family, 3)
    (a1, b1), (c1, d1) = Qs[0].tolist()
    want = np.array([[a1 + a + (r - 1) * s, b1 + (q - r) * s],
                     [c1 + r * s, d1 + (q - r - 1) * s + a]], dtype=np.int64)
    layout = ProductLayout([g.spec, H])
    out = []
    for i in range(q):
        def func(idx, i=i):
            which = (g.colors_at(layout.project(idx, 0)) - 1 + i) % q
            y = layout.project(idx, 1)
            res = np.empty(np.shape(idx), dtype=np.int64)
            for w in range(q):
                sel = which == w
                if sel.any():
                    res[sel] = family[w].colors_at(y[sel])
            return res
        col = Coloring(layout.spec, func=func, k=2, name=f"tiling({g.name},{i})")
        out.append(certify(col, want, verify=verify))
    _attach_coverage(out, r)
    return out


def _attach_coverage(out: list[Coloring], predicted: int):
    from ..graph import EXHAUSTIVE_LIMIT

    if out[0].spec.order <= EXHAUSTIVE_LIMIT:
        cov = coverage(out)
        if (cov != cov[0]).any():
            raise VerificationError("coverage of the composed family is not constant")
        measured = int(cov[0])
    else:
        measured = predicted
    for f in out:
        f.coverage = measured


# --------------------------------------------------------- bc family compose


def _family_gamma(row: Sequence, k: int, i: int) -> int:
    """gamma_i of one row of the base family, checking the three conditions."""
    consts = [f for f in row if isinstance(f, (int, np.integer))]
    if consts:
        if len(consts) != len(row) or len(set(int(v) for v in consts)) != 1 or consts[0] not in (1, 2):
            raise ConditionViolated(f"row {i} mixes constant and non-constant colorings", 1)
        return (1 << k) if consts[0] == 1 else 0
    if len(row) != 1 << k:
        raise ConditionViolated(f"row {i} needs {1 << k} colorings, got {len(row)}", 1)
    Qs = [quotient_of(f) for f in row]
    bc = {(int(Q[0, 1]), int(Q[1, 0])) for Q in Qs}
    if len(bc) != 1 or any(f.k != 2 for f in row):
        raise ConditionViolated(f"row {i} is not a family of (b, c)-colorings with common parameters", 1)
    b, c = bc.pop()
    if b + c != 1 << k:
        raise ConditionViolated(f"row {i} has b + c = {b + c}, not {1 << k}", 2)
    r = _constant_coverage(row, 3)
    if r != c:
        raise ConditionViolated(f"row {i} covers each vertex {r} times, not c = {c}", 3)
    return c


def bc_family_compose(rows: Sequence[Sequence], h: Coloring, *, verify: bool = True,
                      indices: Sequence[int] | None = None) -> list[Coloring]:
    """The 2^(k+2) colorings f^(i,j)(x, y) = g^{r+i}_{s+j}(y) where h(x) = (r, s).

    ``rows`` has four rows of 2^k entries, each a 2-coloring of one graph
    Y or the constant 1 or 2.  ``h`` is a k-multipartite coloring of X.
    Every output is a (2^(k+2) - G, G)-coloring of X x Y, G = sum of gamma_i,
    and each vertex takes color 1 in exactly G of them.  ``indices``
    (positions i 2^k + j) restricts the output; coverage is only measured
    when the whole family is built.
    """
    if len(rows) != 4:
        raise ConditionViolated("need four rows of base colorings", 1)
    q = h.k // 4
    k = q.bit_length() - 1
    if h.k != 4 << k:
        raise ValueError("h must have 2^(k+2) colors")
    gammas = [_family_gamma(row, k, i) for i, row in enumerate(rows)]
    Y = next((f.spec for row in rows for f in row if isinstance(f, Coloring)), None)
    if Y is None:
        raise ConditionViolated("all base colorings are constant", 1)
    total = sum(gammas)
    if not 0 < total < 4 << k:
        raise ConditionViolated(f"gamma sum {total} leaves a color empty", 1)
    layout = ProductLayout([h.spec, Y])
    deg = layout.spec.degree
    b, c = (4 << k) - total, total
    want = np.array([[deg - b, b], [c, deg - c]], dtype=np.int64)

    def entry(i, j):
        f = rows[i][j] if not isinstance(rows[i][0], (int, np.integer)) else rows[i][0]
        return f

    wanted = range(4 * q) if indices is None else indices
    out = []
    for i in range(4):
        for j in range(q):
            if i * q + j not in wanted:
                continue

            def func(idx, i=i, j=j):
                hx = h.colors_at(layout.project(idx, 0)) - 1
                row = (hx // q + i) % 4
                col = (hx % q + j) % q
                y = layout.project(idx, 1)
                res = np.empty(np.shape(idx), dtype=np.int64)
                for w in np.unique(row * q + col):
                    sel = row * q + col == w
                    f = entry(int(w) // q, int(w) % q)
                    res[sel] = f if isinstance(f, (int, np.integer)) else f.colors_at(y[sel])
                return res
            fc = Coloring(layout.spec, func=func, k=2, name=f"bcpart({i},{j})")
            out.append(certify(fc, want, verify=verify))
    if indices is not None:
        return out
    _attach_coverage(out, total)
    if out[0].coverage != total:
        raise VerificationError(f"coverage {out[0].coverage} differs from gamma sum {total}")
    return out
