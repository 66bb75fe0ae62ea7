"""Reference implementations used only by the tests.

Adjacency is rebuilt from coordinate tuples (no use of the package's
neighbour tables), quotients come from dense matrix products.
"""

from itertools import product

import numpy as np

SHR_DIFFS = {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}


def vertices(m, n):
    """Coordinate tuples in canonical index order: Shrikhande pairs first, most significant first."""
    shr = list(product(range(4), repeat=2))
    return [tuple(s) + tuple(k) for s in product(shr, repeat=m) for k in product(range(4), repeat=n)]


def adjacent(u, v, m):
    diff = [i for i in range(len(u)) if u[i] != v[i]]
    if len(diff) != 1:
        return False
    i = diff[0]
    if i < m:
        d = ((v[i][0] - u[i][0]) % 4, (v[i][1] - u[i][1]) % 4)
        return d in SHR_DIFFS
    return True


def adjacency(m, n):
    vs = vertices(m, n)
    N = len(vs)
    A = np.zeros((N, N), dtype=np.int64)
    for a in range(N):
        for b in range(a + 1, N):
            if adjacent(vs[a], vs[b], m):
                A[a, b] = A[b, a] = 1
    return A


def quotient(A, colors):
    """Quotient matrix of a 1-based coloring, or None if the partition is not equitable."""
    colors = np.asarray(colors, dtype=np.int64)
    k = int(colors.max())
    P = np.zeros((len(colors), k), dtype=np.int64)
    P[np.arange(len(colors)), colors - 1] = 1
    counts = A @ P
    S = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        rows = counts[colors == i + 1]
        if (rows != rows[0]).any():
            return None
        S[i] = rows[0]
    return S


def distances(A, src):
    N = A.shape[0]
    dist = np.full(N, -1)
    dist[src] = 0
    frontier = [src]
    d = 0
    while frontier:
        d += 1
        nxt = np.flatnonzero(A[frontier].any(axis=0) & (dist < 0))
        dist[nxt] = d
        frontier = list(nxt)
    return dist


def hamming_spectrum(D):
    """Eigenvalues of H(D, 4) with multiplicities: 3D - 4i with C(D, i) 3^i."""
    from math import comb
    return {3 * D - 4 * i: comb(D, i) * 3**i for i in range(D + 1)}
