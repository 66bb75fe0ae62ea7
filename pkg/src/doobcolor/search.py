"""Combinatorial search: exact cover, perfect codes and perfect colorings.

These routines discover the base objects that the algebraic constructions
cannot produce on their own, and double as brute-force oracles in tests.
Every object returned is re-verified with :mod:`doobcolor.eqpart` first.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .eqpart import Code, Coloring, compute_quotient, is_mu_fold_perfect, verify_quotient
from .errors import (
    BudgetExhausted,
    DeskScaleExceeded,
    NotEquitable,
    NotFound,
    Unsatisfiable,
    VerificationError,
)
from .graph import SHRIKHANDE_CONNECTING, GraphSpec, Vertex, as_spec, digits, index, neighbor_array


@dataclass
class SearchBudget:
    nodes: int = 10**7
    seconds: float = 600.0
    seed: int | None = None


@dataclass
class ExactCoverInstance:
    """Cover ``0..universe-1`` exactly ``mu`` times by a selection of ``subsets``.

    ``max_use`` bounds how often one subset may be selected.
    """

    universe: int
    subsets: list[tuple[int, ...]]
    mu: int = 1
    max_use: int = 1

    def __post_init__(self):
        self.subsets = [tuple(sorted(set(int(e) for e in s))) for s in self.subsets]
        if any(not s for s in self.subsets):
            raise ValueError("subsets must be nonempty")
        if self.mu < 1:
            raise ValueError("mu must be positive")
        bad = [e for s in self.subsets for e in s if not 0 <= e < self.universe]
        if bad:
            raise ValueError(f"element {bad[0]} outside the universe")

    def dumps(self) -> str:
        head = f"# universe={self.universe} mu={self.mu} max_use={self.max_use}"
        return "\n".join([head] + [" ".join(map(str, s)) for s in self.subsets]) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ExactCoverInstance":
        lines = text.splitlines()
        params = dict(universe=None, mu=1, max_use=1)
        subsets = []
        for ln in lines:
            ln = ln.strip()
            if not ln:
                continue
            if ln.startswith("#"):
                for tok in ln[1:].split():
                    if "=" in tok:
                        k, v = tok.split("=", 1)
                        if k in params:
                            params[k] = int(v)
                continue
            subsets.append(tuple(int(t) for t in ln.split()))
        if params["universe"] is None:
            params["universe"] = 1 + max(max(s) for s in subsets)
        return cls(params["universe"], subsets, params["mu"], params["max_use"])


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.seconds

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.nodes:
            raise BudgetExhausted(f"node limit {self.budget.nodes} reached", self.nodes)
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted(f"time limit {self.budget.seconds}s reached", self.nodes)


def _arithmetic_reject(inst: ExactCoverInstance) -> bool:
    sizes = {len(s) for s in inst.subsets}
    return len(sizes) == 1 and (inst.universe * inst.mu) % sizes.pop() != 0


def _algorithm_x(inst: ExactCoverInstance, clock: _Clock, rng):
    cols = {e: set() for e in range(inst.universe)}
    for r, s in enumerate(inst.subsets):
        for e in s:
            cols[e].add(r)
    rows = inst.subsets
    chosen: list[int] = []

    def select(r):
        removed = []
        for e in rows[r]:
            for r2 in cols[e]:
                for e2 in rows[r2]:
                    if e2 != e:
                        cols[e2].discard(r2)
            removed.append(cols.pop(e))
        return removed

    def deselect(r, removed):
        for e in reversed(rows[r]):
            cols[e] = removed.pop()
            for r2 in cols[e]:
                for e2 in rows[r2]:
                    if e2 != e:
                        cols[e2].add(r2)

    def solve():
        clock.tick()
        if not cols:
            return True
        e = min(cols, key=lambda c: (len(cols[c]), c))
        options = sorted(cols[e])
        if rng is not None:
            rng.shuffle(options)
        for r in options:
            removed = select(r)
            chosen.append(r)
            if solve():
                return True
            chosen.pop()
            deselect(r, removed)
        return False

    return chosen if solve() else None


def _multicover(inst: ExactCoverInstance, clock: _Clock, rng):
    need = np.full(inst.universe, inst.mu, dtype=np.int64)
    nrows = len(inst.subsets)
    order = list(range(nrows))
    if rng is not None:
        rng.shuffle(order)
    rank = {r: i for i, r in enumerate(order)}
    members = [np.array(s, dtype=np.int64) for s in inst.subsets]
    containing = [[] for _ in range(inst.universe)]
    for r in order:
        for e in inst.subsets[r]:
            containing[e].append(r)
    uses = np.zeros(nrows, dtype=np.int64)
    banned = np.zeros(nrows, dtype=bool)
    chosen: list[int] = []

    def usable(r):
        return not banned[r] and uses[r] < inst.max_use and (need[members[r]] > 0).all()

    def capacity(e):
        return sum(inst.max_use - uses[r] for r in containing[e] if usable(r))

    def solve():
        clock.tick()
        open_ = np.flatnonzero(need > 0)
        if open_.size == 0:
            return True
        best, best_slack = None, None
        for e in open_:
            slack = capacity(e) - need[e]
            if slack < 0:
                return False
            if best_slack is None or slack < best_slack:
                best, best_slack = e, slack
        cands = [r for r in containing[best] if usable(r)]
        r = min(cands, key=lambda x: rank[x])
        # branch 1: use r once more
        uses[r] += 1
        need[members[r]] -= 1
        chosen.append(r)
        if solve():
            return True
        chosen.pop()
        need[members[r]] += 1
        uses[r] -= 1
        # branch 2: never use r again in this subtree
        banned[r] = True
        ok = solve()
        banned[r] = False
        return ok

    return sorted(chosen) if solve() else None


def exact_cover(inst: ExactCoverInstance, budget: SearchBudget | None = None, *,
                arithmetic: bool = True) -> list[int]:
    """Indices of selected subsets (with repeats when ``max_use > 1``).

    Raises :class:`Unsatisfiable` when the search space is exhausted and
    :class:`BudgetExhausted` when a limit stops it first.
    """
    budget = budget or SearchBudget()
    if arithmetic and _arithmetic_reject(inst):
        raise Unsatisfiable("universe size times mu is not a multiple of the common subset size")
    clock = _Clock(budget)
    rng = random.Random(budget.seed) if budget.seed is not None else None
    if inst.mu == 1 and inst.max_use == 1:
        sol = _algorithm_x(inst, clock, rng)
    else:
        sol = _multicover(inst, clock, rng)
    if sol is None:
        raise Unsatisfiable(f"no exact cover (searched {clock.nodes} nodes)")
    counts = np.zeros(inst.universe, dtype=np.int64)
    for r in sol:
        counts[list(inst.subsets[r])] += 1
    if not (counts == inst.mu).all():
        raise VerificationError("exact cover solution does not cover every element mu times")
    return sol


# ------------------------------------------------------------ graph oracles


def bfs_distance(spec, u: Vertex, v: Vertex) -> int:
    """Shortest-path length by breadth-first search over the whole graph."""
    spec = as_spec(spec)
    if spec.order > 4**6:
        raise DeskScaleExceeded(f"BFS oracle limited to 4^6 vertices, {spec} has {spec.order}", spec)
    src, dst = index(spec, u), index(spec, v)
    adj = neighbor_array(spec, np.arange(spec.order))
    dist = np.full(spec.order, -1, dtype=np.int64)
    dist[src] = 0
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            return int(dist[x])
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(int(y))
    raise VerificationError("graph is disconnected")


def bfs_distances_from(spec, src: int) -> np.ndarray:
    spec = as_spec(spec)
    if spec.order > 4**6:
        raise DeskScaleExceeded(f"BFS oracle limited to 4^6 vertices, {spec} has {spec.order}", spec)
    adj = neighbor_array(spec, np.arange(spec.order))
    dist = np.full(spec.order, -1, dtype=np.int64)
    dist[src] = 0
    frontier = np.array([src])
    level = 0
    while frontier.size:
        level += 1
        nb = np.unique(adj[frontier].ravel())
        nb = nb[dist[nb] < 0]
        dist[nb] = level
        frontier = nb
    return dist


def find_perfect_code(spec, mu: int = 1, budget: SearchBudget | None = None, *,
                      arithmetic: bool = True) -> Code:
    """A mu-fold 1-perfect code, as an exact cover of vertices by radius-1 balls."""
    spec = as_spec(spec)
    if spec.order > 4**6:
        raise DeskScaleExceeded(f"ball cover search limited to 4^6 vertices, {spec} has {spec.order}", spec)
    idx = np.arange(spec.order)
    balls = np.concatenate([idx[:, None], neighbor_array(spec, idx)], axis=1)
    inst = ExactCoverInstance(spec.order, [tuple(b) for b in balls], mu)
    sol = exact_cover(inst, budget, arithmetic=arithmetic)
    code = Code.from_indices(spec, sol, name=f"search-code({spec},mu={mu})")
    if not is_mu_fold_perfect(code, mu):
        raise VerificationError("search returned a code that is not mu-fold perfect")
    return code


# ------------------------------------------------------- perfect colorings


def perfect_two_colorings(spec) -> list[tuple[np.ndarray, tuple[int, int]]]:
    """Every perfect 2-coloring of a graph with at most 16 vertices, by brute force.

    Returns ``(mask, (b, c))`` pairs where ``mask`` marks color 1.  Both a
    coloring and its swap are listed.
    """
    spec = as_spec(spec)
    N = spec.order
    if N > 16:
        raise DeskScaleExceeded("brute-force 2-coloring enumeration is limited to 16 vertices", spec)
    adj = neighbor_array(spec, np.arange(N))
    masks = np.arange(1, (1 << N) - 1, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(N)) & 1  # 1 = color 1
    nb_ones = bits[:, adj].sum(axis=2)  # color-1 neighbours per vertex
    deg = spec.degree
    out = []
    # perfect iff color-1 vertices agree on their color-2 count and color-2 vertices on their color-1 count
    big = deg + 1
    c1_b = np.where(bits == 1, deg - nb_ones, -1)
    c2_c = np.where(bits == 0, nb_ones, -1)
    b_max, b_min = c1_b.max(axis=1), np.where(bits == 1, deg - nb_ones, big).min(axis=1)
    c_max, c_min = c2_c.max(axis=1), np.where(bits == 0, nb_ones, big).min(axis=1)
    ok = (b_max == b_min) & (c_max == c_min)
    for mask, row_bits, b, c in zip(masks[ok], bits[ok], b_max[ok], c_max[ok]):
        out.append((row_bits.astype(bool), (int(b), int(c))))
    return out


def _bfs_order(spec: GraphSpec, adj: np.ndarray, start: int = 0) -> list[int]:
    seen = np.zeros(spec.order, dtype=bool)
    order = []
    for root in [start] + list(range(spec.order)):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(int(y))
    return order


def _class_sizes(S: np.ndarray, order: int) -> np.ndarray | None:
    """Class sizes forced by |f^-1(i)| s_ij = |f^-1(j)| s_ji on a connected quotient."""
    k = S.shape[0]
    sizes = [None] * k
    sizes[0] = 1.0
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(k):
            if S[i, j] and sizes[j] is None:
                sizes[j] = sizes[i] * S[i, j] / S[j, i] if S[j, i] else None
                if sizes[j] is None:
                    return None
                stack.append(j)
    if any(s is None for s in sizes):
        return None
    total = sum(sizes)
    out = np.array([s * order / total for s in sizes])
    if not np.allclose(out, np.round(out)):
        return np.array([-1] * k)
    return np.round(out).astype(np.int64)


def enumerate_perfect_colorings(spec, S, *, fixed: dict[int, int] | None = None,
                                budget: SearchBudget | None = None, limit: int | None = 1):
    """Yield colorings (color arrays, 1-based) with quotient ``S`` by backtracking.

    Vertices are assigned in breadth-first order.  Each assigned vertex keeps
    per-color neighbour counts that may not exceed its row of ``S`` nor fall
    short of it once its unassigned neighbours are exhausted; class sizes
    forced by the quotient bound each color's total.  ``fixed`` pins colors
    (1-based) of chosen vertices; by default vertex 0 gets color 1.
    """
    spec = as_spec(spec)
    S = np.asarray(S, dtype=np.int64)
    k = S.shape[0]
    if (S.sum(axis=1) != spec.degree).any():
        raise ValueError(f"rows of S must sum to the degree {spec.degree}")
    if spec.order > 4**5:
        raise DeskScaleExceeded("backtracking coloring search is limited to 4^5 vertices", spec)
    budget = budget or SearchBudget()
    clock = _Clock(budget)
    N = spec.order
    adj = neighbor_array(spec, np.arange(N))
    fixed = {0: 1} if fixed is None else dict(fixed)
    sizes = _class_sizes(S, N)
    if sizes is not None and (sizes < 0).any():
        return
    order = _bfs_order(spec, adj)
    color = np.zeros(N, dtype=np.int64)  # 0 = unassigned
    counts = np.zeros((N, k + 1), dtype=np.int64)
    free = np.full(N, spec.degree, dtype=np.int64)
    used = np.zeros(k + 1, dtype=np.int64)
    rng = random.Random(budget.seed) if budget.seed is not None else None
    found = 0

    def consistent(x) -> bool:
        c = color[x]
        if c == 0:
            return True
        row = S[c - 1]
        got = counts[x, 1:]
        if (got > row).any():
            return False
        return (row - got).sum() <= free[x]

    def assign(x, c):
        color[x] = c
        used[c] += 1
        for y in adj[x]:
            counts[y, c] += 1
            free[y] -= 1

    def unassign(x, c):
        for y in adj[x]:
            counts[y, c] -= 1
            free[y] += 1
        used[c] -= 1
        color[x] = 0

    def rec(pos):
        nonlocal found
        clock.tick()
        if pos == N:
            found += 1
            yield color.copy()
            return
        x = order[pos]
        options = [fixed[x]] if x in fixed else list(range(1, k + 1))
        if rng is not None and x not in fixed:
            rng.shuffle(options)
        for c in options:
            if sizes is not None and used[c] >= sizes[c - 1]:
                continue
            assign(x, c)
            if consistent(x) and all(consistent(y) for y in adj[x]):
                yield from rec(pos + 1)
                if limit is not None and found >= limit:
                    unassign(x, c)
                    return
            unassign(x, c)

    yield from rec(0)


def find_perfect_coloring(spec, S, *, fixed=None, budget: SearchBudget | None = None) -> Coloring:
    """One coloring with quotient exactly ``S``, verified before return."""
    spec = as_spec(spec)
    S = np.asarray(S, dtype=np.int64)
    for colors in enumerate_perfect_colorings(spec, S, fixed=fixed, budget=budget, limit=1):
        col = Coloring(spec, colors, k=S.shape[0], name="search")
        verify_quotient(col, S)
        return col
    raise Unsatisfiable(f"no perfect coloring of {spec} with quotient {S.tolist()}")


# --------------------------------------------------- additive (group) search


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{m_1} x ... x Z_{m_r}; elements are coded as mixed-radix ints."""

    moduli: tuple[int, ...]

    @property
    def order(self) -> int:
        return int(np.prod(self.moduli))

    @property
    def radix(self) -> np.ndarray:
        r = [1]
        for m in reversed(self.moduli[1:]):
            r.append(r[-1] * m)
        return np.array(list(reversed(r)), dtype=np.int64)

    def decode(self, code) -> np.ndarray:
        code = np.asarray(code, dtype=np.int64)
        return np.stack([(code // r) % m for r, m in zip(self.radix, self.moduli)], axis=-1)

    def encode(self, vec) -> np.ndarray:
        vec = np.asarray(vec, dtype=np.int64) % np.array(self.moduli)
        return (vec * self.radix).sum(axis=-1)

    def elements(self) -> np.ndarray:
        return np.array(list(itertools.product(*[range(m) for m in self.moduli])), dtype=np.int64)

    def add(self, a, b):
        return self.encode(self.decode(a) + self.decode(b))

    def neg(self, a):
        return self.encode(-self.decode(a))

    def element_order(self, vec) -> int:
        vec = np.asarray(vec)
        o = 1
        for v, m in zip(vec, self.moduli):
            from math import gcd
            oi = m // gcd(int(v), m)
            o = o * oi // gcd(o, oi)
        return o

    def __str__(self):
        return " x ".join(f"Z{m}" for m in self.moduli)


# A K4 coordinate may be read as Z4 (neighbours differ by 1, 2, 3) or as
# Z2 x Z2 acting by XOR on the two bits of the symbol; both give K4.
K4_AS_Z4 = "z4"
K4_AS_Z2Z2 = "z2z2"


@dataclass
class AdditiveMap:
    """A homomorphism from the vertex group of D(m, n) to a finite abelian group.

    ``tables[c]`` holds, for coordinate ``c`` (Shrikhande ones first), the
    image vectors of all its 16 or 4 digits.  Fibers of the map are cosets
    of its kernel.
    """

    spec: GraphSpec
    target: AbelianGroup
    tables: list[np.ndarray]
    k4_modes: tuple[str, ...] = ()

    def images(self, idx) -> np.ndarray:
        """Image vectors, shape ``idx.shape + (r,)``."""
        shr, k4 = digits(self.spec, idx)
        out = np.zeros(np.shape(idx) + (len(self.target.moduli),), dtype=np.int64)
        for c in range(self.spec.m):
            out += self.tables[c][shr[..., c]]
        for j in range(self.spec.n):
            out += self.tables[self.spec.m + j][k4[..., j]]
        return out % np.array(self.target.moduli)

    def __call__(self, idx) -> np.ndarray:
        return self.target.encode(self.images(idx))

    def coloring(self, name="") -> Coloring:
        return Coloring(self.spec, func=lambda idx: self(idx) + 1, k=self.target.order, name=name)

    def neighbor_images(self) -> list[int]:
        """Images of all neighbour differences of the origin, with multiplicity."""
        nb = neighbor_array(self.spec, np.array([0]))[0]
        return [int(v) for v in self(nb)]


def _coordinate_generators(kind: str):
    """(generator orders, neighbour differences as coefficient tuples, digit -> coefficients)."""
    if kind == "shr":
        digit = [(u >> 2, u & 3) for u in range(16)]
        return (4, 4), list(SHRIKHANDE_CONNECTING), digit
    if kind == K4_AS_Z4:
        return (4,), [(1,), (2,), (3,)], [(v,) for v in range(4)]
    if kind == K4_AS_Z2Z2:
        return (2, 2), [(0, 1), (1, 0), (1, 1)], [(v >> 1, v & 1) for v in range(4)]
    raise ValueError(kind)


def find_homomorphisms(spec, target: AbelianGroup, want: dict[int, int], *,
                       k4_modes: Sequence[str] | None = None, limit: int | None = 1,
                       budget: SearchBudget | None = None):
    """Yield :class:`AdditiveMap`s whose neighbour-difference image multiset is ``want``.

    ``want`` maps target element codes to multiplicities.  The coloring by
    image value is then perfect with quotient ``S[t][u] = want[u - t]``.
    Generator images are chosen coordinate by coordinate with the multiset
    bound as pruning; images must have order dividing the generator order.
    """
    spec = as_spec(spec)
    budget = budget or SearchBudget()
    clock = _Clock(budget)
    k4_modes = tuple(k4_modes) if k4_modes is not None else (K4_AS_Z4,) * spec.n
    kinds = ["shr"] * spec.m + list(k4_modes)
    elems = target.elements()
    by_order = {}
    for o in (2, 4):
        by_order[o] = [e for e in elems if o % target.element_order(e) == 0]
    want_arr = np.zeros(target.order, dtype=np.int64)
    for t, mult in want.items():
        want_arr[t] = mult
    have = np.zeros(target.order, dtype=np.int64)
    moduli = np.array(target.moduli)
    chosen: list[np.ndarray] = []
    found = 0

    def coordinate_options(kind):
        orders, diffs, _ = _coordinate_generators(kind)
        for gens in itertools.product(*[by_order[o] for o in orders]):
            gens = np.array(gens)
            imgs = [(np.array(d) @ gens) % moduli for d in diffs]
            codes = [int(target.encode(v)) for v in imgs]
            yield gens, codes

    options = {kind: list(coordinate_options(kind)) for kind in set(kinds)}

    picks: list[int] = []

    def rec(c):
        nonlocal found
        clock.tick()
        if c == len(kinds):
            if (have == want_arr).all():
                found += 1
                yield list(chosen)
            return
        # coordinates of the same kind are interchangeable: keep option indices nondecreasing
        start = picks[-1] if c and kinds[c] == kinds[c - 1] else 0
        for pick in range(start, len(options[kinds[c]])):
            gens, codes = options[kinds[c]][pick]
            for t in codes:
                have[t] += 1
            if all(have[t] <= want_arr[t] for t in codes):
                chosen.append(gens)
                picks.append(pick)
                yield from rec(c + 1)
                picks.pop()
                chosen.pop()
            for t in codes:
                have[t] -= 1
            if limit is not None and found >= limit:
                return

    for gens_list in rec(0):
        tables = []
        for kind, gens in zip(kinds, gens_list):
            _, _, digit = _coordinate_generators(kind)
            tables.append((np.array(digit) @ gens) % moduli)
        yield AdditiveMap(spec, target, tables, tuple(k4_modes))


def _k4_mode_choices(n: int, prefer_xor: bool = False):
    """K4 group readings to try, fewest Z2 x Z2 coordinates first (or most, with ``prefer_xor``)."""
    for r in (range(n, -1, -1) if prefer_xor else range(n + 1)):
        for pos in itertools.combinations(range(n - 1, -1, -1), r):
            yield tuple(K4_AS_Z2Z2 if j in pos else K4_AS_Z4 for j in range(n))


PERFECT_CODE_TARGETS = (AbelianGroup((4, 4)), AbelianGroup((4, 2, 2)), AbelianGroup((2, 2, 2, 2)))


def find_additive_map(spec, want_fn, targets, budget: SearchBudget | None = None) -> AdditiveMap:
    """First homomorphism over the given targets and K4 readings; ``want_fn(target)`` gives the multiset."""
    spec = as_spec(spec)
    for target in targets:
        want = want_fn(target)
        if want is None:
            continue
        for modes in _k4_mode_choices(spec.n, prefer_xor=spec.m == 0):
            for amap in find_homomorphisms(spec, target, want, k4_modes=modes, budget=budget):
                return amap
    raise NotFound(f"no additive map of {spec} onto {', '.join(map(str, targets))} with the wanted multiset")


def find_additive_perfect_code(spec, budget: SearchBudget | None = None):
    """An additive 1-perfect code and its coset partition.

    Searches homomorphisms onto a group of order ``degree + 1`` mapping the
    neighbour differences bijectively onto the nonzero elements.  Returns
    ``(code, cosets, coloring, amap)`` where ``code`` is the kernel, the
    cosets are the fibers, and the coloring (fiber index + 1) has quotient
    J - E.
    """
    spec = as_spec(spec)
    order = spec.degree + 1
    if order & (order - 1):
        raise NotFound(f"degree + 1 = {order} is not a power of 2")
    targets = [t for t in PERFECT_CODE_TARGETS if t.order == order] or \
        [AbelianGroup((2,) * (order.bit_length() - 1))]
    if spec.m == 0:
        targets = targets[::-1]
    amap = find_additive_map(spec, lambda t: {e: 1 for e in range(1, t.order)}, targets, budget)
    coloring = amap.coloring(name=f"additive-perfect-partition({spec})")
    if spec.order <= 4**12:
        coloring.materialize()
        J_E = np.ones((order, order), dtype=np.int64) - np.eye(order, dtype=np.int64)
        verify_quotient(coloring, J_E)
    cosets = [coloring.code(c) for c in range(1, order + 1)]
    for i, cs in enumerate(cosets):
        cs.name = f"coset{i}"
        if spec.order <= 4**12 and not is_mu_fold_perfect(cs, 1):
            raise VerificationError("coset is not 1-perfect")
    return cosets[0], cosets, coloring, amap


def circulant(first_row) -> np.ndarray:
    k = len(first_row)
    return np.array([[first_row[(j - i) % k] for j in range(k)] for i in range(k)], dtype=np.int64)


def find_block_factors(G, H, inner: int = 2, outer: int = 1, budget: SearchBudget | None = None):
    """Factors for an 8-coloring of G x H with quotient ``[[inner J, outer J], [outer J, inner J]]``.

    Looks for a circulant 4x4 ``A`` with row sum ``deg(G) - 4 outer``, an
    8-coloring ``g`` of G with quotient ``[[A, outer J], [outer J, A]]`` and a
    4-coloring ``h`` of H with quotient ``inner J - A``.  The diagonal product
    of ``g`` with ``h`` (twice) then has the wanted quotient.  Returns
    ``(g, h, A)``.
    """
    G, H = as_spec(G), as_spec(H)
    budget = budget or SearchBudget(seconds=60)
    J = np.ones((4, 4), dtype=np.int64)
    row = G.degree - 4 * outer
    if row < 0 or 4 * inner - row != H.degree:
        raise ValueError("degrees of the factors do not fit the block quotient")
    for first in itertools.product(range(min(row, inner) + 1), repeat=4):
        if sum(first) != row:
            continue
        A = circulant(first)
        try:
            h = find_perfect_coloring(H, inner * J - A, budget=budget)
            g = find_perfect_coloring(G, np.block([[A, outer * J], [outer * J, A]]), budget=budget)
        except Unsatisfiable:
            continue
        return g, h, A
    raise NotFound(f"no circulant block factorization over {G} x {H}")
