"""Colorings, codes and the predicates that verify them.

A :class:`Coloring` is a surjective map from the vertices of D(m, n) onto
the colors ``1..k``.  It is either dense (an array in canonical vertex
order) or lazy (a vectorised function of index arrays); lazy colorings let
constructions describe graphs far beyond what fits in memory, and are
verified at explicitly supplied sample vertices.

All verifiers are exhaustive by default and refuse graphs with more than
:data:`~doobcolor.graph.EXHAUSTIVE_LIMIT` vertices unless the caller passes
``vertices=`` (sampled mode), so a partial check never happens silently.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DeskScaleExceeded,
    NotCompletelyRegular,
    NotEquitable,
    SingletonCode,
    WrongColorCount,
)
from .graph import (
    CHUNK,
    EXHAUSTIVE_LIMIT,
    SHRIKHANDE_CONNECTING,
    GraphSpec,
    as_spec,
    distance_indices,
    index_chunks,
    iter_neighbors,
    neighbor_array,
)

IndexFn = Callable[[np.ndarray], np.ndarray]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("EQPART_THREADS", "1")))
    except ValueError:
        return 1


def _require_exhaustive(spec: GraphSpec, what: str):
    if spec.order > EXHAUSTIVE_LIMIT:
        raise DeskScaleExceeded(
            f"{what} on {spec} needs {spec.order} vertices; pass vertices= for sampled mode",
            spec,
        )


def _dtype_for(k: int):
    return np.uint8 if k < 255 else np.uint16 if k < 65535 else np.int64


class Coloring:
    """A perfect-coloring candidate on D(m, n) with colors ``1..k``."""

    def __init__(self, spec, colors=None, *, k: int | None = None,
                 func: IndexFn | None = None, name: str = ""):
        self.spec = as_spec(spec)
        self.name = name
        if colors is not None:
            arr = np.asarray(colors)
            if arr.shape != (self.spec.order,):
                raise ValueError(f"expected {self.spec.order} colors, got shape {arr.shape}")
            k = int(arr.max()) if k is None else k
            self._dense = self._validated(arr, k)
            self._func = None
        elif func is not None:
            if k is None:
                raise ValueError("a lazy coloring needs an explicit color count")
            self._dense = None
            self._func = func
        else:
            raise ValueError("need either colors or func")
        self.k = int(k)

    @staticmethod
    def _validated(arr: np.ndarray, k: int) -> np.ndarray:
        if arr.size and (arr.min() < 1 or arr.max() > k):
            raise ValueError(f"colors must lie in 1..{k}")
        counts = np.bincount(arr.astype(np.int64), minlength=k + 1)[1:]
        if (counts == 0).any():
            missing = [int(c) + 1 for c in np.flatnonzero(counts == 0)]
            raise ValueError(f"coloring is not surjective, colors {missing} unused")
        return arr.astype(_dtype_for(k))

    @classmethod
    def from_labels(cls, spec, labels, k=None, name=""):
        """Build from 0-based labels."""
        return cls(spec, np.asarray(labels, dtype=np.int64) + 1, k=k, name=name)

    @property
    def is_dense(self) -> bool:
        return self._dense is not None

    def colors_at(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if self._dense is not None:
            return self._dense[idx].astype(np.int64)
        return np.asarray(self._func(idx), dtype=np.int64)

    def materialize(self) -> "Coloring":
        if self._dense is None:
            _require_exhaustive(self.spec, "materializing a coloring")
            out = np.empty(self.spec.order, dtype=_dtype_for(self.k))
            for idx in index_chunks(self.spec.order, CHUNK * 4):
                out[idx[0]: idx[-1] + 1] = self._func(idx)
            self._dense = self._validated(out, self.k)
        return self

    @property
    def colors(self) -> np.ndarray:
        return self.materialize()._dense

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.colors.astype(np.int64), minlength=self.k + 1)[1:]

    def code(self, *colors: int) -> "Code":
        """The union of the given color classes as a code."""
        wanted = np.zeros(self.k + 1, dtype=bool)
        wanted[list(colors)] = True
        if self.is_dense:
            return Code(self.spec, wanted[self.colors.astype(np.int64)], name=f"{self.name}{list(colors)}")
        return Code(self.spec, func=lambda idx: wanted[self.colors_at(idx)],
                    name=f"{self.name}{list(colors)}")

    def relabel(self, mapping: Sequence[int], k: int | None = None, name: str | None = None) -> "Coloring":
        """Recolor by ``mapping[old_color - 1] -> new color``."""
        table = np.concatenate([[0], np.asarray(mapping, dtype=np.int64)])
        k = int(table.max()) if k is None else k
        name = self.name if name is None else name
        if self.is_dense:
            return Coloring(self.spec, table[self.colors.astype(np.int64)], k=k, name=name)
        return Coloring(self.spec, func=lambda idx: table[self.colors_at(idx)], k=k, name=name)

    def __repr__(self):
        kind = "dense" if self.is_dense else "lazy"
        return f"Coloring({self.spec}, k={self.k}, {kind}{', ' + self.name if self.name else ''})"


class Code:
    """A nonempty vertex subset, as a boolean mask or a membership predicate."""

    def __init__(self, spec, mask=None, *, func: IndexFn | None = None, name: str = ""):
        self.spec = as_spec(spec)
        self.name = name
        if mask is not None:
            mask = np.asarray(mask, dtype=bool)
            if mask.shape != (self.spec.order,):
                raise ValueError(f"mask must have {self.spec.order} entries")
            if not mask.any():
                raise ValueError("a code is nonempty")
            self._mask = mask
            self._func = None
        elif func is not None:
            self._mask = None
            self._func = func
        else:
            raise ValueError("need either mask or func")

    @classmethod
    def from_indices(cls, spec, indices, name=""):
        spec = as_spec(spec)
        mask = np.zeros(spec.order, dtype=bool)
        mask[np.asarray(indices, dtype=np.int64)] = True
        return cls(spec, mask, name=name)

    @property
    def is_dense(self) -> bool:
        return self._mask is not None

    def contains(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if self._mask is not None:
            return self._mask[idx]
        return np.asarray(self._func(idx), dtype=bool)

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            _require_exhaustive(self.spec, "materializing a code")
            out = np.empty(self.spec.order, dtype=bool)
            for idx in index_chunks(self.spec.order, CHUNK * 4):
                out[idx[0]: idx[-1] + 1] = self._func(idx)
            if not out.any():
                raise ValueError("a code is nonempty")
            self._mask = out
        return self._mask

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __repr__(self):
        return f"Code({self.spec}{', ' + self.name if self.name else ''})"


@dataclass
class IntersectionArray:
    """``[s_{0,1}, ..., s_{rho-1,rho}, s_{1,0}, ..., s_{rho,rho-1}]`` plus the full quotient."""

    values: tuple[int, ...]
    quotient: np.ndarray = field(repr=False)

    @property
    def radius(self) -> int:
        return len(self.values) // 2

    def __eq__(self, other):
        if isinstance(other, IntersectionArray):
            return self.values == other.values
        return list(self.values) == list(other)


# ---------------------------------------------------------------- quotients


def neighbor_color_counts(coloring: Coloring, idx: np.ndarray) -> np.ndarray:
    """Row ``r`` holds, per color, how many neighbours of ``idx[r]`` carry it."""
    idx = np.asarray(idx, dtype=np.int64)
    k = coloring.k
    counts = np.zeros((idx.size, k), dtype=np.int32)
    rows = np.arange(idx.size)
    for nb in iter_neighbors(coloring.spec, idx):
        counts[rows, coloring.colors_at(nb) - 1] += 1
    return counts


def _chunk_rows(coloring: Coloring, chunk: np.ndarray):
    return chunk, coloring.colors_at(chunk), neighbor_color_counts(coloring, chunk)


def _iter_rows(coloring: Coloring, vertices):
    if vertices is None:
        _require_exhaustive(coloring.spec, "quotient verification")
        chunks = index_chunks(coloring.spec.order, CHUNK)
    else:
        vertices = np.asarray(vertices, dtype=np.int64)
        chunks = (vertices[i: i + CHUNK] for i in range(0, vertices.size, CHUNK))
    threads = _threads()
    if threads == 1:
        for ch in chunks:
            yield _chunk_rows(coloring, ch)
        return
    # results are consumed in chunk order, so first-counterexample stays deterministic
    with ThreadPoolExecutor(threads) as pool:
        yield from pool.map(lambda ch: _chunk_rows(coloring, ch), chunks)


def compute_quotient(coloring: Coloring, *, vertices=None) -> np.ndarray:
    """The quotient matrix, or :class:`NotEquitable` with the first witness.

    With ``vertices`` given only those vertices are inspected (sampled mode);
    every color must then appear among them.
    """
    k = coloring.k
    ref = np.full((k, k), -1, dtype=np.int64)
    seen = np.zeros(k, dtype=bool)
    for idx, col, counts in _iter_rows(coloring, vertices):
        c0 = col - 1
        new = ~seen[c0]
        if new.any():
            # first occurrence of each new color in this chunk
            first_pos = {}
            for pos in np.flatnonzero(new):
                first_pos.setdefault(int(c0[pos]), pos)
            for c, pos in first_pos.items():
                ref[c] = counts[pos]
                seen[c] = True
        bad = np.flatnonzero((counts != ref[c0]).any(axis=1))
        if bad.size:
            if vertices is not None:
                bad = bad[np.argsort(idx[bad], kind="stable")]
            p = bad[0]
            raise NotEquitable(idx[p], col[p], ref[c0[p]], counts[p])
    if not seen.all():
        missing = [int(c) + 1 for c in np.flatnonzero(~seen)]
        raise ValueError(f"colors {missing} never observed")
    return ref


def verify_quotient(coloring: Coloring, expected, *, vertices=None) -> np.ndarray:
    """Check every inspected vertex against ``expected``; return it on success."""
    expected = np.asarray(expected, dtype=np.int64)
    if expected.shape != (coloring.k, coloring.k):
        raise ValueError(f"expected a {coloring.k}x{coloring.k} matrix, got {expected.shape}")
    if vertices is None:
        got = compute_quotient(coloring)
        if not np.array_equal(got, expected):
            diff = np.argwhere(got != expected)[0]
            i = int(diff[0])
            # locate a concrete vertex of the offending color
            where = np.flatnonzero(coloring.colors == i + 1)[0]
            raise NotEquitable(where, i + 1, expected[i], got[i])
        return expected
    for idx, col, counts in _iter_rows(coloring, vertices):
        want = expected[col - 1]
        bad = np.flatnonzero((counts != want).any(axis=1))
        if bad.size:
            p = bad[np.argmin(idx[bad])]
            raise NotEquitable(idx[p], col[p], want[p], counts[p])
    return expected


def is_perfect(coloring: Coloring, expected=None, **kw) -> bool:
    try:
        if expected is None:
            compute_quotient(coloring, **kw)
        else:
            verify_quotient(coloring, expected, **kw)
    except NotEquitable:
        return False
    return True


def is_perfect_bc(coloring: Coloring, **kw) -> tuple[int, int]:
    """``(s_12, s_21)`` of a perfect 2-coloring."""
    if coloring.k != 2:
        raise WrongColorCount(f"a (b,c)-coloring has 2 colors, not {coloring.k}")
    S = compute_quotient(coloring, **kw)
    return int(S[0, 1]), int(S[1, 0])


def merge_colors(coloring: Coloring, grouping: Iterable[Iterable[int]], name: str | None = None) -> Coloring:
    """Unite color classes; ``grouping`` partitions ``1..k`` into the new colors, in order."""
    groups = [list(g) for g in grouping]
    flat = sorted(c for g in groups for c in g)
    if flat != list(range(1, coloring.k + 1)):
        raise ValueError(f"{groups} is not a partition of 1..{coloring.k}")
    mapping = [0] * coloring.k
    for new, g in enumerate(groups, start=1):
        for c in g:
            mapping[c - 1] = new
    return coloring.relabel(mapping, k=len(groups),
                            name=name if name is not None else f"merge({coloring.name})")


def constant_coloring(spec, color: int = 1, k: int = 1) -> Coloring:
    """A constant map; only surjective when ``k == 1``, so it is always lazy."""
    return Coloring(spec, func=lambda idx: np.full(np.shape(idx), color, dtype=np.int64),
                    k=k, name=f"const{color}")


# -------------------------------------------------------------------- codes


def _codeword_pairs_within(code: Code, radius: int) -> bool:
    """Whether two distinct codewords lie at distance <= radius (radius <= 2)."""
    spec = code.spec
    words = code.indices
    for lo in range(0, words.size, CHUNK // 8):
        w = words[lo: lo + CHUNK // 8]
        nbs = neighbor_array(spec, w)
        if code.contains(nbs).any():
            return True
        if radius >= 2:
            for d in range(nbs.shape[1]):
                second = neighbor_array(spec, nbs[:, d])
                hit = code.contains(second) & (second != w[:, None])
                if hit.any():
                    return True
    return False


def pairwise_min_distance(spec: GraphSpec, words: np.ndarray, block: int = 256) -> int:
    words = np.asarray(words, dtype=np.int64)
    best = np.iinfo(np.int64).max
    for lo in range(0, words.size, block):
        a = words[lo: lo + block]
        d = distance_indices(spec, a[:, None], words[None, :])
        d[np.arange(a.size), lo + np.arange(a.size)] = best
        best = min(best, int(d.min()))
        if best == 1:
            break
    return best


def code_distance(code: Code, *, method: str = "auto") -> int:
    """Minimum distance between distinct codewords.

    ``method="pairwise"`` scans all pairs; ``"auto"`` first looks for close
    pairs through neighbourhoods, then falls back to the pairwise scan.
    """
    words = code.indices
    if words.size < 2:
        raise SingletonCode("code distance needs at least two codewords")
    if method == "pairwise":
        return pairwise_min_distance(code.spec, words)
    if _codeword_pairs_within(code, 1):
        return 1
    if _codeword_pairs_within(code, 2):
        return 2
    return pairwise_min_distance(code.spec, words)


def ball_counts(code: Code, idx) -> np.ndarray:
    """Number of codewords in the radius-1 ball around each index."""
    idx = np.asarray(idx, dtype=np.int64)
    out = code.contains(idx).astype(np.int64)
    for nb in iter_neighbors(code.spec, idx):
        out += code.contains(nb)
    return out


def is_mu_fold_perfect(code: Code, mu: int, *, vertices=None) -> bool:
    if vertices is None:
        _require_exhaustive(code.spec, "ball counting")
        chunks = index_chunks(code.spec.order, CHUNK)
    else:
        chunks = [np.asarray(vertices, dtype=np.int64)]
    return all((ball_counts(code, ch) == mu).all() for ch in chunks)


def distance_coloring(code: Code) -> Coloring:
    """Colors ``d(x, C) + 1`` by multi-source breadth-first search."""
    spec = code.spec
    _require_exhaustive(spec, "distance coloring")
    dist = np.full(spec.order, -1, dtype=np.int16)
    frontier = code.indices
    dist[frontier] = 0
    level = 0
    while frontier.size:
        level += 1
        found = []
        for lo in range(0, frontier.size, CHUNK // 4):
            f = frontier[lo: lo + CHUNK // 4]
            for nb in iter_neighbors(spec, f):
                fresh = nb[dist[nb] < 0]
                dist[fresh] = level
                found.append(fresh)
        frontier = np.unique(np.concatenate(found)) if found else np.empty(0, dtype=np.int64)
    return Coloring(spec, dist.astype(np.int64) + 1, name=f"dist({code.name})")


def _intersection_array(S: np.ndarray) -> IntersectionArray:
    rho = S.shape[0] - 1
    fwd = tuple(int(S[i, i + 1]) for i in range(rho))
    back = tuple(int(S[i + 1, i]) for i in range(rho))
    return IntersectionArray(fwd + back, S)


def completely_regular_check(code: Code) -> IntersectionArray:
    coloring = distance_coloring(code)
    try:
        S = compute_quotient(coloring)
    except NotEquitable as exc:
        raise NotCompletelyRegular(f"distance coloring is not perfect: {exc}", exc.vertex) from exc
    off = np.abs(np.subtract.outer(np.arange(S.shape[0]), np.arange(S.shape[0]))) > 1
    if S[off].any():
        raise NotCompletelyRegular("quotient of the distance coloring is not tridiagonal")
    return _intersection_array(S)


# distance-2 differences inside one Shrikhande coordinate
_SHR_FAR = tuple((a, b) for a in range(4) for b in range(4)
                 if (a, b) != (0, 0) and (a, b) not in SHRIKHANDE_CONNECTING)


def _apply(spec: GraphSpec, idx: np.ndarray, coord: int, delta) -> np.ndarray:
    """Move coordinate ``coord`` (Shrikhande ones first) by ``delta``."""
    if coord < spec.m:
        s = spec.shr_shifts[coord]
        v = (idx >> s) & 15
        a, b = v >> 2, v & 3
        new = (((a + delta[0]) & 3) << 2) | ((b + delta[1]) & 3)
    else:
        s = spec.k4_shifts[coord - spec.m]
        v = (idx >> s) & 3
        new = (v + delta) & 3
    return idx + ((new - v) << s)


def _steps(spec: GraphSpec, coord: int):
    return SHRIKHANDE_CONNECTING if coord < spec.m else (1, 2, 3)


def sphere2(spec: GraphSpec, idx) -> np.ndarray:
    """All vertices at distance exactly 2 from each index, shape ``(len, count)``."""
    idx = np.asarray(idx, dtype=np.int64)
    out = []
    ncoord = spec.m + spec.n
    for p in range(ncoord):
        if p < spec.m:
            out.extend(_apply(spec, idx, p, d) for d in _SHR_FAR)
        for q in range(p + 1, ncoord):
            for dp in _steps(spec, p):
                first = _apply(spec, idx, p, dp)
                out.extend(_apply(spec, first, q, dq) for dq in _steps(spec, q))
    return np.stack(out, axis=-1)


def distance_to_code(code: Code, idx, max_radius: int = 2) -> np.ndarray:
    """``d(x, C)`` for each index, or -1 where it exceeds ``max_radius`` (<= 2)."""
    if max_radius > 2:
        raise ValueError("bounded search supports radius <= 2")
    idx = np.asarray(idx, dtype=np.int64)
    out = np.full(idx.shape, -1, dtype=np.int64)
    out[code.contains(idx)] = 0
    todo = np.flatnonzero(out < 0)
    if max_radius >= 1 and todo.size:
        hit = code.contains(neighbor_array(code.spec, idx[todo])).any(axis=1)
        out[todo[hit]] = 1
        todo = todo[~hit]
    if max_radius >= 2 and todo.size:
        # a codeword at distance 2 is a neighbour of some neighbour; walk the
        # neighbour directions one at a time and stop once everything is resolved
        first = neighbor_array(code.spec, idx[todo])
        alive = np.arange(todo.size)
        for d in range(first.shape[1]):
            if not alive.size:
                break
            hit = code.contains(neighbor_array(code.spec, first[alive, d])).any(axis=1)
            out[todo[alive[hit]]] = 2
            alive = alive[~hit]
    return out


def verify_completely_regular_at(code: Code, expected, vertices) -> IntersectionArray:
    """Sampled check that the distance coloring has quotient ``expected`` at ``vertices``.

    Distances are found by bounded ball search, so the covering radius of
    ``expected`` must be at most 2.
    """
    expected = np.asarray(expected, dtype=np.int64)
    rho = expected.shape[0] - 1
    vertices = np.asarray(vertices, dtype=np.int64)
    for lo in range(0, vertices.size, 256):
        v = vertices[lo: lo + 256]
        dv = distance_to_code(code, v, rho)
        nbs = neighbor_array(code.spec, v)
        dn = distance_to_code(code, nbs.ravel(), rho).reshape(nbs.shape)
        if (dv < 0).any() or (dn < 0).any():
            bad = v[(dv < 0) | (dn < 0).any(axis=1)][0]
            raise NotCompletelyRegular(f"vertex {bad} or a neighbour is beyond radius {rho}", int(bad))
        rows = np.stack([(dn == j).sum(axis=1) for j in range(rho + 1)], axis=1)
        bad = np.flatnonzero((rows != expected[dv]).any(axis=1))
        if bad.size:
            p = bad[0]
            raise NotCompletelyRegular(
                f"vertex {v[p]} at distance {dv[p]} sees {rows[p].tolist()}, "
                f"expected {expected[dv[p]].tolist()}", int(v[p]))
    return _intersection_array(expected)
