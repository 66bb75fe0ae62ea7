"""Doob graphs D(m, n) and quaternary Hamming graphs H(n, 4).

A vertex of D(m, n) is ``(x*_1, ..., x*_m; x'_1, ..., x'_n)`` with every
``x*_i`` a pair in Z4 x Z4 (a Shrikhande coordinate) and every ``x'_j`` in Z4
(a K4 coordinate).  Vertices are addressed by a canonical integer index: the
Shrikhande coordinates are the most significant base-16 digits (digit
``4a + b``), followed by the K4 coordinates as base-4 digits.  Because every
digit is a power of four, a coordinate is a fixed bit field of the index and
all neighbour arithmetic below is done with shifts on int64 arrays.

Adjacency is Cartesian: two vertices are adjacent iff they differ in exactly
one coordinate, by an element of ``SHRIKHANDE_CONNECTING`` in a Shrikhande
coordinate, or by anything in a K4 coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .errors import DeskScaleExceeded, InvalidVertex

SHRIKHANDE_CONNECTING = ((0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3))

# Exhaustive verification budget in vertices; above this callers must opt in
# to sampled verification explicitly.
EXHAUSTIVE_LIMIT = 4**12
CHUNK = 1 << 18


def _shrikhande_tables():
    dist = np.full((16, 16), 2, dtype=np.int8)
    step = np.zeros((6, 16), dtype=np.int64)
    for u in range(16):
        a, b = divmod(u, 4)
        for d, (da, db) in enumerate(SHRIKHANDE_CONNECTING):
            step[d, u] = 4 * ((a + da) % 4) + (b + db) % 4
        for v in range(16):
            c, e = divmod(v, 4)
            diff = ((a - c) % 4, (b - e) % 4)
            if diff == (0, 0):
                dist[u, v] = 0
            elif diff in SHRIKHANDE_CONNECTING:
                dist[u, v] = 1
    return dist, step


SHRIKHANDE_DISTANCE, _SHR_STEP = _shrikhande_tables()
SHRIKHANDE_DISTANCE.setflags(write=False)
_SHR_STEP.setflags(write=False)


@dataclass(frozen=True)
class GraphSpec:
    """The pair (m, n) naming D(m, n); ``m == 0`` is the Hamming graph H(n, 4)."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ValueError(f"invalid Doob parameters m={self.m}, n={self.n}")

    @property
    def diameter(self) -> int:
        return 2 * self.m + self.n

    @property
    def degree(self) -> int:
        return 6 * self.m + 3 * self.n

    @property
    def order(self) -> int:
        """Number of vertices, 4**(2m+n)."""
        return 4 ** self.diameter

    @property
    def is_hamming(self) -> bool:
        return self.m == 0

    def __str__(self) -> str:
        return f"D({self.m},{self.n})"

    # bit offsets of the coordinates inside the canonical index
    @cached_property
    def shr_shifts(self) -> tuple[int, ...]:
        return tuple(2 * self.n + 4 * (self.m - 1 - i) for i in range(self.m))

    @cached_property
    def k4_shifts(self) -> tuple[int, ...]:
        return tuple(2 * (self.n - 1 - j) for j in range(self.n))


def as_spec(spec) -> GraphSpec:
    if isinstance(spec, GraphSpec):
        return spec
    m, n = spec
    return GraphSpec(int(m), int(n))


@dataclass(frozen=True)
class Vertex:
    shr: tuple[tuple[int, int], ...]
    k4: tuple[int, ...]

    @classmethod
    def of(cls, shr: Sequence[Sequence[int]] = (), k4: Sequence[int] = ()) -> "Vertex":
        return cls(tuple((int(a), int(b)) for a, b in shr), tuple(int(x) for x in k4))


def index(spec: GraphSpec, v: Vertex) -> int:
    spec = as_spec(spec)
    if len(v.shr) != spec.m or len(v.k4) != spec.n:
        raise InvalidVertex(f"{v} does not have the shape of {spec}")
    out = 0
    for a, b in v.shr:
        if not (0 <= a < 4 and 0 <= b < 4):
            raise InvalidVertex(f"Shrikhande coordinate {(a, b)} out of range")
        out = out * 16 + 4 * a + b
    for x in v.k4:
        if not 0 <= x < 4:
            raise InvalidVertex(f"K4 coordinate {x} out of range")
        out = out * 4 + x
    return out


def vertex_at(spec: GraphSpec, i: int) -> Vertex:
    spec = as_spec(spec)
    i = int(i)
    if not 0 <= i < spec.order:
        raise InvalidVertex(f"index {i} out of range for {spec}")
    shr = tuple(divmod((i >> s) & 15, 4) for s in spec.shr_shifts)
    k4 = tuple((i >> s) & 3 for s in spec.k4_shifts)
    return Vertex(shr, k4)


def digits(spec: GraphSpec, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate arrays for an index array.

    Returns ``(shr, k4)`` of shapes ``(len, m)`` holding the base-16 digit
    ``4a + b`` and ``(len, n)`` holding the K4 symbols.
    """
    idx = np.asarray(idx, dtype=np.int64)
    shr = np.stack([(idx >> s) & 15 for s in spec.shr_shifts], axis=-1) if spec.m else \
        np.zeros(idx.shape + (0,), dtype=np.int64)
    k4 = np.stack([(idx >> s) & 3 for s in spec.k4_shifts], axis=-1) if spec.n else \
        np.zeros(idx.shape + (0,), dtype=np.int64)
    return shr, k4


def from_digits(spec: GraphSpec, shr: np.ndarray, k4: np.ndarray) -> np.ndarray:
    out = np.zeros(np.shape(shr)[:-1] if spec.m else np.shape(k4)[:-1], dtype=np.int64)
    for i, s in enumerate(spec.shr_shifts):
        out |= np.asarray(shr[..., i], dtype=np.int64) << s
    for j, s in enumerate(spec.k4_shifts):
        out |= np.asarray(k4[..., j], dtype=np.int64) << s
    return out


def iter_neighbors(spec: GraphSpec, idx: np.ndarray) -> Iterator[np.ndarray]:
    """Yield, per neighbour direction, the neighbour of every index in ``idx``.

    There are ``spec.degree`` directions: six per Shrikhande coordinate and
    three per K4 coordinate.  For each fixed direction the map is a bijection
    of the vertex set.
    """
    idx = np.asarray(idx, dtype=np.int64)
    for s in spec.shr_shifts:
        v = (idx >> s) & 15
        base = idx - (v << s)
        for d in range(6):
            yield base + (_SHR_STEP[d][v] << s)
    for s in spec.k4_shifts:
        v = (idx >> s) & 3
        base = idx - (v << s)
        for e in (1, 2, 3):
            yield base + (((v + e) & 3) << s)


def neighbor_array(spec: GraphSpec, idx) -> np.ndarray:
    """Neighbour indices as an array of shape ``idx.shape + (degree,)``."""
    idx = np.asarray(idx, dtype=np.int64)
    return np.stack(list(iter_neighbors(spec, idx)), axis=-1)


def neighbors(spec: GraphSpec, v: Vertex) -> list[Vertex]:
    spec = as_spec(spec)
    i = index(spec, v)
    return [vertex_at(spec, int(j)) for j in neighbor_array(spec, np.array([i]))[0]]


def distance_indices(spec: GraphSpec, iu, iv) -> np.ndarray:
    """Vectorised graph distance between index arrays (broadcasting)."""
    iu = np.asarray(iu, dtype=np.int64)
    iv = np.asarray(iv, dtype=np.int64)
    out = np.zeros(np.broadcast(iu, iv).shape, dtype=np.int64)
    for s in spec.shr_shifts:
        out += SHRIKHANDE_DISTANCE[(iu >> s) & 15, (iv >> s) & 15]
    for s in spec.k4_shifts:
        out += ((iu >> s) & 3) != ((iv >> s) & 3)
    return out


def distance(spec: GraphSpec, u: Vertex, v: Vertex) -> int:
    spec = as_spec(spec)
    return int(distance_indices(spec, index(spec, u), index(spec, v)))


def eigenvalues(spec: GraphSpec) -> list[int]:
    spec = as_spec(spec)
    return [spec.degree - 4 * i for i in range(spec.diameter + 1)]


def eigenvalue_multiplicities(spec: GraphSpec) -> dict[int, int]:
    """Multiplicities shared with H(2m+n, 4): C(D, i) * 3**i for 6m+3n-4i."""
    spec = as_spec(spec)
    D = spec.diameter
    return {spec.degree - 4 * i: comb(D, i) * 3**i for i in range(D + 1)}


def adjacency_matrix(spec: GraphSpec, limit: int = 4**6) -> np.ndarray:
    spec = as_spec(spec)
    if spec.order > limit:
        raise DeskScaleExceeded(f"adjacency of {spec} has {spec.order} rows", spec)
    idx = np.arange(spec.order)
    A = np.zeros((spec.order, spec.order), dtype=np.int8)
    for nb in iter_neighbors(spec, idx):
        A[idx, nb] = 1
    return A


def ball(spec: GraphSpec, x: Vertex):
    """The radius-1 ball around ``x`` as a :class:`~doobcolor.eqpart.Code`."""
    from .eqpart import Code

    spec = as_spec(spec)
    i = index(spec, x)
    members = np.concatenate([[i], neighbor_array(spec, np.array([i]))[0]])
    return Code.from_indices(spec, members)


def index_chunks(total: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    for lo in range(0, total, chunk):
        yield np.arange(lo, min(total, lo + chunk), dtype=np.int64)


class ProductLayout:
    """D(m, n) viewed as a Cartesian product of factors D(m_i, n_i).

    Factor ``i`` owns a contiguous run of the Shrikhande coordinates and a
    contiguous run of the K4 coordinates, in factor order; ``project`` maps a
    canonical index of the product to the canonical index of each factor.
    """

    def __init__(self, factors: Sequence):
        self.factors = [as_spec(f) for f in factors]
        m = sum(f.m for f in self.factors)
        n = sum(f.n for f in self.factors)
        self.spec = GraphSpec(m, n)
        self._fields = []
        a = b = 0
        for f in self.factors:
            shr_shift = 2 * n + 4 * (m - a - f.m)
            k4_shift = 2 * (n - b - f.n)
            self._fields.append((shr_shift, (1 << 4 * f.m) - 1, k4_shift, (1 << 2 * f.n) - 1, 2 * f.n))
            a += f.m
            b += f.n

    def project(self, idx, i: int) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        shr_shift, shr_mask, k4_shift, k4_mask, width = self._fields[i]
        return (((idx >> shr_shift) & shr_mask) << width) | ((idx >> k4_shift) & k4_mask)

    def embed(self, parts: Sequence) -> np.ndarray:
        """Inverse of ``project``: combine factor indices into product indices."""
        out = 0
        for part, (shr_shift, shr_mask, k4_shift, k4_mask, width) in zip(parts, self._fields):
            part = np.asarray(part, dtype=np.int64)
            out = out | ((part >> width) << shr_shift) | ((part & k4_mask) << k4_shift)
        return out
