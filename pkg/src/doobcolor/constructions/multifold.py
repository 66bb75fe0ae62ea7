"""Partitions of a Doob graph of diameter 1 mod 4 into disjoint multifold 1-perfect codes."""

from __future__ import annotations

import numpy as np

from ..eqpart import Coloring, is_mu_fold_perfect, merge_colors
from ..errors import DeskScaleExceeded, UnsupportedSpec, VerificationError
from ..graph import EXHAUSTIVE_LIMIT, GraphSpec, as_spec
from .base import perfect_code_coloring
from .common import E, J, CodePartition, certify, sample_vertices
from .compose import quotient_of, tiling_compose
from .derived import three_j

MAX_DIAMETER = 31


def multifold_params(D: int) -> tuple[int, int]:
    """(alpha, s) with 3D + 1 = alpha 2^s, alpha odd."""
    x = 3 * D + 1
    s = (x & -x).bit_length() - 1
    return x >> s, s


def _is_perfect_diameter(D: int) -> bool:
    x = 3 * D + 1
    return x & (x - 1) == 0 and (x.bit_length() - 1) % 2 == 0


def split_spec(spec: GraphSpec, r: int) -> tuple[GraphSpec, GraphSpec]:
    """D(m'', n'') x D(m', n') with diameters 2^r and D - 2^r; Shrikhande factors go first."""
    high = 1 << r
    m2 = min(spec.m, high // 2)
    m1 = spec.m - m2
    return GraphSpec(m2, high - 2 * m2), GraphSpec(m1, spec.n - (high - 2 * m2))


def partition_coloring(spec, *, verify: bool = True) -> Coloring:
    """2^s-coloring whose classes are alpha-fold 1-perfect codes; quotient alpha J - E.

    Write D = 2^r + D' with D' < 2^r and 3D' + 1 = beta 2^s'.  Perfect-code
    diameters (3D + 1 a power of 4) use the coset partition of a 1-perfect
    code.  Otherwise a 3J coloring of the diameter-2^r factor, with colors
    united into 2^s blocks, is tiled with the partition of the rest: for
    s' < r by beta-fold codes, for s' = r + 1 by pairs of 1-perfect codes.
    """
    spec = as_spec(spec)
    D = spec.diameter
    if D % 4 != 1:
        raise UnsupportedSpec(f"{spec}: diameter {D} is not 1 mod 4")
    if D > MAX_DIAMETER:
        raise DeskScaleExceeded(f"diameter {D} exceeds {MAX_DIAMETER}", spec)
    alpha, s = multifold_params(D)
    q = 1 << s
    if _is_perfect_diameter(D):
        if spec.m and D > 5:
            raise DeskScaleExceeded(f"no 1-perfect code of {spec} is available at desk scale", spec)
        col = perfect_code_coloring(spec)
        return certify(col, J(q) - E(q), verify=verify)
    r = D.bit_length() - 1
    X, Y = split_spec(spec, r)
    sub_alpha, sub_s = multifold_params(Y.diameter)
    sub = partition_coloring(Y, verify=False)
    if sub_s < r:
        blocks = 1 << sub_s
    elif sub_s == r + 1:
        blocks = 1 << r
        sub = merge_colors(sub, [[2 * i + 1, 2 * i + 2] for i in range(blocks)])
        sub.quotient = 2 * J(blocks) - E(blocks)
    else:
        raise VerificationError(f"unexpected split of diameter {D}")
    if blocks != q:
        raise VerificationError(f"diameter {D}: {blocks} blocks, expected {q}")
    g = three_j(X, verify=False)
    size = g.k // q
    g = merge_colors(g, [list(range(i * size + 1, (i + 1) * size + 1)) for i in range(q)])
    g.quotient = 3 * size * J(q)
    family = [sub.relabel([1 if j == i else 2 for j in range(q)], k=2, name=f"{sub.name}[{i}]")
              for i in range(q)]
    sq = quotient_of(sub)
    fa = int(sq[0, 0])  # alpha' - 1 neighbours inside the own code
    for f in family:
        f.quotient = np.array([[fa, Y.degree - fa], [fa + 1, Y.degree - fa - 1]], dtype=np.int64)
    tiles = tiling_compose(g, family, verify=False)
    layout_spec = tiles[0].spec

    def func(idx):
        # the vertex lies in exactly one tile's color-1 class
        out = np.zeros(np.shape(idx), dtype=np.int64)
        for i, t in enumerate(tiles):
            out[t.colors_at(idx) == 1] = i + 1
        return out

    col = Coloring(layout_spec, func=func, k=q, name=f"multifold({spec})")
    return certify(col, alpha * J(q) - E(q), verify=verify)


def multifold_partition(spec, *, verify: bool = True, samples: int = 4096, seed: int = 0) -> CodePartition:
    """2^s disjoint alpha-fold 1-perfect codes covering D(m, n), 6m + 3n + 1 = alpha 2^s.

    Each code is checked ball by ball: exhaustively up to 4^12 vertices,
    at sampled balls beyond.  ``.alpha`` and ``.verified`` are attached.
    """
    spec = as_spec(spec)
    col = partition_coloring(spec, verify=False)
    alpha, _ = multifold_params(spec.diameter)
    part = CodePartition(col)
    part.alpha = alpha
    part.verified = None
    if verify:
        exhaustive = spec.order <= EXHAUSTIVE_LIMIT
        if exhaustive:
            col.materialize()
        vs = None if exhaustive else sample_vertices(spec, samples, seed)
        counts = np.bincount(col.colors, minlength=col.k + 1)[1:] if exhaustive else None
        for code in part:
            if not is_mu_fold_perfect(code, alpha, vertices=vs):
                raise VerificationError(f"{code.name} is not {alpha}-fold 1-perfect")
        if exhaustive and (counts != spec.order // col.k).any():
            raise VerificationError(f"code sizes {counts.tolist()} are unequal")
        part.verified = "exhaustive" if exhaustive else f"sampled({vs.size})"
    return part
