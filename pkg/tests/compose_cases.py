"""The composition test matrix: extend, diag, multiply, split on outputs of at most 4^6 vertices.

Each case carries the quotient predicted from the source quotients, which
are themselves computed by the matrix oracle.
"""

import numpy as np

from doobcolor.constructions import compose
from doobcolor.constructions.base import mds_coloring, perfect_code_coloring
from doobcolor.eqpart import Coloring, merge_colors
from doobcolor.graph import GraphSpec

import oracle

E4 = np.eye(4, dtype=np.int64)


def _sources():
    k4_perfect = perfect_code_coloring((0, 1))          # J - E on K4
    k4_31 = merge_colors(k4_perfect, [[1], [2, 3, 4]])  # (3,1)
    k4_22 = merge_colors(k4_perfect, [[1, 2], [3, 4]])  # (2,2)
    h2_mds = mds_coloring((0, 2))
    shr_mds = mds_coloring((1, 0))
    shr_half = merge_colors(shr_mds, [[1, 2], [3, 4]])
    h2_half = merge_colors(h2_mds, [[1, 3], [2, 4]])
    out = {}
    for name, col in [("k4_perfect", k4_perfect), ("k4_31", k4_31), ("k4_22", k4_22),
                      ("h2_mds", h2_mds), ("shr_mds", shr_mds), ("shr_half", shr_half),
                      ("h2_half", h2_half)]:
        col = Coloring(col.spec, col.colors, k=col.k, name=name)
        S = oracle.quotient(oracle.adjacency(col.spec.m, col.spec.n), col.colors)
        assert S is not None
        col.quotient = S
        out[name] = col
    return out


def cases():
    """List of (case id, operation, thunk returning the built coloring, predicted quotient)."""
    src = _sources()
    out = []

    for g, mx, nx in [("k4_perfect", 0, 1), ("k4_perfect", 1, 0), ("k4_31", 1, 2), ("k4_22", 0, 3),
                      ("h2_mds", 1, 1), ("shr_half", 0, 2)]:
        G = src[g]
        want = G.quotient + GraphSpec(mx, nx).degree * np.eye(G.k, dtype=np.int64)
        out.append((f"extend-{g}-{mx}{nx}", "extend",
                    lambda G=G, mx=mx, nx=nx: compose.extend(G, mx, nx, verify=False), want))

    def block(S, sizes, Bs):
        want = S.copy()
        o = 0
        for k, B in zip(sizes, Bs):
            want[o: o + k, o: o + k] += B
            o += k
        return want

    for g, hs in [("k4_perfect", ["h2_mds"]), ("k4_perfect", ["shr_mds"]), ("k4_perfect", ["k4_perfect"]),
                  ("k4_perfect", ["k4_22", "k4_22"]), ("k4_perfect", ["shr_half", "shr_half"]),
                  ("k4_perfect", ["h2_half", "h2_half"]), ("h2_mds", ["k4_perfect"])]:
        G, H = src[g], [src[h] for h in hs]
        want = block(G.quotient, [h.k for h in H], [h.quotient for h in H])
        out.append((f"diag-{g}-{'+'.join(hs)}", "diag",
                    lambda G=G, H=H: compose.diag_product(G, H, verify=False), want))

    for g, k, mx in [("k4_perfect", 2, 0), ("k4_perfect", 2, 1), ("k4_31", 3, 0), ("k4_31", 3, 1),
                     ("k4_22", 4, 2), ("h2_mds", 2, 1), ("h2_half", 3, 2), ("shr_mds", 2, 0),
                     ("shr_half", 3, 0), ("k4_perfect", 5, 2)]:
        G = src[g]
        out.append((f"multiply-{g}-{k}-{mx}", "multiply",
                    lambda G=G, k=k, mx=mx: compose.multiply_coloring(G, k, mx, verify=False),
                    k * G.quotient))

    for g, c in [("k4_perfect", 0), ("k4_31", 1), ("k4_22", 2), ("k4_perfect", 2), ("k4_31", 0)]:
        G = src[g]
        out.append((f"split-{g}-{c}", "split",
                    lambda G=G, c=c: compose.split_coloring(G, c, verify=False),
                    np.kron(G.quotient, np.ones((4, 4), dtype=np.int64))))
    return out
