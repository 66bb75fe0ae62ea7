"""Perfect (b, c)-colorings: one builder per admissible family of parameters.

Every route ends by uniting the first few colors of an equal-diagonal
coloring, except the (b, b) product and the family recursion for
gcd(b, c) = 1, b + c = 2^(2l-1).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Callable

import numpy as np

from ..eqpart import Coloring, merge_colors
from ..errors import DeskScaleExceeded, NotAdmissible, Unsatisfiable, UnsupportedSpec
from ..graph import GraphSpec, as_spec, digits, from_digits
from ..params import admissibility, log2_exact, necessary_conditions
from ..search import (
    ExactCoverInstance,
    SearchBudget,
    enumerate_perfect_colorings,
    exact_cover,
    perfect_two_colorings,
)
from .base import perfect_code_coloring
from .common import E, J, certify
from .compose import bc_family_compose, diag_product, extend, multiply_coloring, quotient_of
from .derived import multipartite, three_j_minus_e

MAX_DIAMETER = 31  # vertex indices are int64


def bc_quotient(spec, b: int, c: int) -> np.ndarray:
    deg = as_spec(spec).degree
    return np.array([[deg - b, b], [c, deg - c]], dtype=np.int64)


def unite_first(g: Coloring, r: int, name: str = "") -> Coloring:
    """Colors 1..r become color 1, the rest color 2."""
    return merge_colors(g, [list(range(1, r + 1)), list(range(r + 1, g.k + 1))], name=name)


# ------------------------------------------------------------- (b, b)


def bb_coloring(spec, *, verify: bool = True) -> Coloring:
    """Perfect (b, b)-coloring with b = 2(2m + n): parity of the high bits of all coordinates.

    A K4 coordinate splits {0,1} | {2,3} (a (2,2)-coloring); a Shrikhande
    coordinate (a, b) splits by the parity of a (a (4,4)-coloring).  The
    sum mod 2 of these adds the parameters.
    """
    spec = as_spec(spec)
    b = 2 * spec.diameter

    def func(idx):
        shr, k4 = digits(spec, idx)
        par = (shr >> 2).sum(axis=-1) + (k4 >> 1).sum(axis=-1)
        return (par & 1) + 1

    col = Coloring(spec, func=func, k=2, name=f"bb({spec})")
    return certify(col, bc_quotient(spec, b, b), verify=verify)


# ---------------------------------------------- equal-diagonal q-colorings


def perfect_code_pairs(spec, *, verify: bool = False) -> Coloring:
    """Partition into 2^(2l-1) disjoint 2-fold 1-perfect codes; quotient 2(J - E) + E."""
    g = perfect_code_coloring(spec)
    q = g.k // 2
    col = merge_colors(g, [[2 * i + 1, 2 * i + 2] for i in range(q)], name=f"pairs({spec})")
    return certify(col, 2 * (J(q) - E(q)) + E(q), verify=verify)


def perfect_code_diameter(l: int) -> int:
    return (4**l - 1) // 3


def plus_four(K: int, *, verify: bool = False) -> Coloring:
    """2^K-coloring of D((2^K + 1)/3, 0) with quotient 2(J - E) + 4E, K odd.

    K = 1 splits the first Shrikhande coordinate by its high bit; each
    step unites pairs (i, 2j), (i, 2j+1) of a (K+1)-multipartite coloring of
    D(2^K, 0) and takes the diagonal product with the previous coloring in
    all four blocks.
    """
    if K < 1 or K % 2 == 0:
        raise ValueError("K must be odd and positive")
    if K == 1:
        spec = GraphSpec(1, 0)
        col = Coloring(spec, func=lambda idx: ((np.asarray(idx) >> 3) & 1) + 1, k=2, name="plus4(1)")
    else:
        prev = plus_four(K - 2)
        h = multipartite(K - 1, GraphSpec(1 << (K - 2), 0), verify=False)
        q = 1 << (K - 1)
        grouping = [[i * q + 2 * j + 1, i * q + 2 * j + 2] for i in range(4) for j in range(q // 2)]
        merged = merge_colors(h, grouping)
        merged.quotient = np.kron(J(4) - E(4), 2 * J(q // 2))
        col = diag_product(merged, [prev] * 4, verify=False)
        col.name = f"plus4({K})"
    q = 1 << K
    return certify(col, 2 * (J(q) - E(q)) + 4 * E(q), verify=verify)


def _three_pieces(r: int) -> tuple[int, int]:
    """(number of 3(J-E) pieces, number of 2(J-E)+E pieces) adding up to r(J - E) + aE."""
    k, rem = divmod(r, 3)
    if rem == 0:
        return k, 0
    if rem == 2:
        return k, 1
    if k == 0:
        raise UnsupportedSpec("r = 1 has no decomposition into 3(J-E) and 2(J-E)+E pieces")
    return k - 1, 2


def sum_coloring(parts: list[Coloring], *, verify: bool = False) -> Coloring:
    """Colors added mod q across a product; quotients add (all equal-diagonal)."""
    col = parts[0]
    for h in parts[1:]:
        col = diag_product(col, [h], verify=False)
    S = sum(quotient_of(p) for p in parts)
    return certify(col, S, verify=verify)


def hamming_equal_diagonal(K: int, r: int, *, verify: bool = False) -> Coloring:
    """2^K-coloring of a Hamming graph with quotient r(J - E) + aE, a in {0, 1, 2}, r >= 2."""
    q = 1 << K
    t, p = _three_pieces(r)
    parts = [three_j_minus_e(GraphSpec(0, q - 1), verify=False) for _ in range(t)]
    parts += [perfect_code_pairs(GraphSpec(0, (2 * q - 1) // 3)) for _ in range(p)]
    return sum_coloring(parts, verify=verify)


def even_equal_diagonal(K: int, r: int, m_extra: int = 0, *, verify: bool = False) -> Coloring:
    """2^K-coloring with quotient 2r(J - E) + aE, a in {0, 2, 4}."""
    if r == 1:
        return plus_four(K, verify=verify)
    base = hamming_equal_diagonal(K, r)
    return multiply_coloring(base, 2, m_extra, verify=verify)


def odd_equal_diagonal(K: int, s: int, m_extra: int = 0, *, verify: bool = False) -> Coloring:
    """2^K-coloring with quotient s(J - E) + aE for odd s >= 3: an even part plus 3(J - E)."""
    q = 1 << K
    tail = three_j_minus_e(GraphSpec(0, q - 1), verify=False)
    if s == 3:
        return certify(tail, quotient_of(tail), verify=verify)
    return sum_coloring([even_equal_diagonal(K, (s - 3) // 2, m_extra), tail], verify=verify)


# -------------------------------------------------- small coverage families


BCIND_BASES = (GraphSpec(1, 0), GraphSpec(0, 3))


def _candidate_codes(spec: GraphSpec, c: int, budget: SearchBudget) -> list[tuple[int, ...]]:
    b = 8 - c
    if spec.order <= 16:
        return sorted({tuple(np.flatnonzero(mask)) for mask, bc in perfect_two_colorings(spec)
                       if bc == (b, c)})
    # too many vertices for brute force: sample colorings by backtracking, then
    # close the pool under coordinate-wise XOR translations
    S = np.array([[spec.degree - b, b], [c, spec.degree - c]])
    found = list(enumerate_perfect_colorings(spec, S, budget=budget, limit=40))
    shr, x = digits(spec, np.arange(spec.order))
    pool = set()
    for col in found:
        code = np.flatnonzero(col == 1)
        for t in itertools.product(range(4), repeat=spec.n):
            y = x[code] ^ np.array(t)
            pool.add(tuple(sorted(from_digits(spec, shr[code], y).tolist())))
    return sorted(pool)


def search_bcind_family(spec, c: int, budget: SearchBudget | None = None) -> list[np.ndarray]:
    """Color-1 masks of 8 perfect (8-c, c)-colorings covering every vertex exactly c times.

    Exact cover with multiplicity c over a pool of perfect colorings.  Only
    c in {2, 3, 4} is searched; c = 5, 6 swap the colors of c = 3, 2.
    """
    spec = as_spec(spec)
    if spec not in BCIND_BASES:
        raise UnsupportedSpec(f"families are built on {BCIND_BASES}, not {spec}")
    if c in (5, 6):
        return [~m for m in search_bcind_family(spec, 8 - c, budget)]
    if c not in (2, 3, 4):
        raise UnsupportedSpec("c must be in 2..6")
    budget = budget or SearchBudget(seconds=60, seed=1)
    pool = _candidate_codes(spec, c, budget)
    if not pool:
        raise Unsatisfiable(f"no perfect ({8 - c},{c})-coloring of {spec} in the pool")
    sol = exact_cover(ExactCoverInstance(spec.order, pool, mu=c),
                      SearchBudget(budget.nodes, budget.seconds, seed=0))
    out = []
    for r in sol:
        m = np.zeros(spec.order, dtype=bool)
        m[list(pool[r])] = True
        out.append(m)
    return out


@lru_cache(maxsize=None)
def _shipped_families() -> dict:
    text = resources.files("doobcolor.data").joinpath("bcind.json").read_text()
    return json.loads(text)


def bcind_family(spec, c: int, *, search: bool = False) -> list[Coloring]:
    """8 perfect (8-c, c)-colorings of D(1,0) or H(3,4) with color-1 coverage exactly c.

    Loaded from the shipped table unless ``search`` is set; either way each
    member is verified and the coverage is checked.
    """
    spec = as_spec(spec)
    if search:
        masks = search_bcind_family(spec, c)
    else:
        base = 8 - c if c in (5, 6) else c
        rows = _shipped_families().get(f"{spec.m},{spec.n}", {}).get(str(base))
        if rows is None:
            raise UnsupportedSpec(f"no shipped family for {spec}, c = {c}")
        masks = []
        for idx in rows:
            m = np.zeros(spec.order, dtype=bool)
            m[idx] = True
            masks.append(~m if base != c else m)
    S = bc_quotient(spec, 8 - c, c)
    fam = [certify(Coloring(spec, np.where(m, 1, 2), k=2, name=f"bcind({spec},{c})[{i}]"), S)
           for i, m in enumerate(masks)]
    cov = np.sum([m for m in masks], axis=0)
    if len(fam) != 8 or (cov != c).any():
        raise Unsatisfiable(f"family on {spec} does not cover every vertex {c} times")
    for f in fam:
        f.coverage = c
    return fam


def bcind_table(budget: SearchBudget | None = None) -> dict:
    """Search every shipped family afresh; the JSON-ready table."""
    table = {}
    for spec in BCIND_BASES:
        table[f"{spec.m},{spec.n}"] = {
            str(c): [np.flatnonzero(m).tolist() for m in search_bcind_family(spec, c, budget)]
            for c in (2, 3, 4)}
    return table


# ----------------------------------------------- gcd 1, b + c = 2^(2l-1)


def gamma_split(c: int, k: int) -> list[int]:
    """c = gamma_1 + ... + gamma_4 with each gamma in {0, 2^k} or in 2..2^k - 2."""
    if k < 3:
        raise ValueError("k must be at least 3; for k = 2 odd c has no split")
    q = 1 << k
    if not 2 <= c <= 4 * q - 2:
        raise ValueError(f"c = {c} outside 2..{4 * q - 2}")
    t, x = divmod(c, q)
    if x == 0:
        head = []
    elif x == 1:
        head, t = [q - 2, 3], t - 1
    elif x == q - 1:
        head = [q - 4, 3]
    else:
        head = [x]
    out = head + [q] * t
    return out + [0] * (4 - len(out))


def coverage_family(K: int, c: int, base: GraphSpec, m_steps: tuple[int, ...] = (),
                    indices=None) -> list[Coloring]:
    """2^K perfect (2^K - c, c)-colorings with color-1 coverage c (K odd >= 3).

    K = 3 is the searched family on ``base``; each step K -> K + 2 composes
    four rows of level-K families through a K-multipartite coloring of a
    diameter-2^K graph with ``m_steps[i]`` Shrikhande factors.
    """
    if K == 3:
        fam = bcind_family(base, c)
        return fam if indices is None else [fam[i] for i in indices]
    k = K - 2
    q = 1 << k
    m_h = m_steps[0] if m_steps else 0
    if k == 3 and m_h:
        raise UnsupportedSpec("the 3-multipartite step needs H(8,4)")
    rows = []
    for gam in gamma_split(c, k):
        if gam == 0:
            rows.append([2] * q)
        elif gam == q:
            rows.append([1] * q)
        else:
            rows.append(coverage_family(k, gam, base, m_steps[1:]))
    h = multipartite(k, GraphSpec(m_h, q - 2 * m_h), verify=False)
    return bc_family_compose(rows, h, verify=False, indices=indices)


# --------------------------------------------------------------- dispatch


@dataclass
class Plan:
    spec: GraphSpec
    route: str
    build: Callable[[], Coloring]


def _flexible_plans(D: int, route: str, build_at: Callable[[int], Coloring],
                    allowed: Callable[[int], bool]) -> list[Plan]:
    return [Plan(GraphSpec(m, D - 2 * m), route, lambda m=m: build_at(m))
            for m in range(D // 2 + 1) if allowed(m)]


def _perfect_code_m_ok(D0: int, m0: int) -> bool:
    return m0 == 0 or D0 <= 5


def _multiplied_perfect(s: int, l: int, m: int) -> Coloring:
    """4^l-coloring with quotient s(J - E) on D(m, n), 2m + n = s (4^l - 1)/3."""
    D0 = perfect_code_diameter(l)
    for m0 in range(min(D0 // 2, m // s), -1, -1):
        n0 = D0 - 2 * m0
        extra = m - s * m0
        if _perfect_code_m_ok(D0, m0) and 0 <= extra <= n0 * (s // 2):
            base = perfect_code_coloring(GraphSpec(m0, n0))
            if s == 1:
                return base
            base.quotient = J(base.k) - E(base.k)
            return multiply_coloring(base, s, extra, verify=False)
    raise UnsupportedSpec(f"no base for s = {s}, l = {l}, m = {m}")


def _multiplied_perfect_ok(s: int, l: int, m: int) -> bool:
    D0 = perfect_code_diameter(l)
    return any(_perfect_code_m_ok(D0, m0) and 0 <= m - s * m0 <= (D0 - 2 * m0) * (s // 2)
               for m0 in range(min(D0 // 2, m // s) + 1))


def plans(b: int, c: int) -> list[Plan]:
    """Every construction this package has for (b, c), at its smallest diameter."""
    rep = admissibility(b, c)
    if not rep.admissible:
        raise NotAdmissible(str(rep))
    g = gcd(b, c)
    q = (b + c) // g
    e = log2_exact(q)
    name = f"bc({b},{c})"
    out: list[Plan] = []
    if b == c:
        D = b // 2
        out += _flexible_plans(D, "parity of high bits", lambda m: bb_coloring(GraphSpec(m, D - 2 * m),
                                                                                verify=False),
                               lambda m: True)
    elif e % 2 == 0:
        l = e // 2
        cp = c // g
        D = g * perfect_code_diameter(l)
        out += _flexible_plans(
            D, "union of perfect codes" if g == 1 else "multiplied perfect-code partition",
            lambda m: unite_first(_multiplied_perfect(g, l, m), cp, name),
            lambda m: _multiplied_perfect_ok(g, l, m))
    elif g == 2:
        l = (e + 1) // 2
        D = perfect_code_diameter(l)
        cp = c // 2
        out += _flexible_plans(D, "2-fold perfect-code partition",
                               lambda m: unite_first(perfect_code_pairs(GraphSpec(m, D - 2 * m)), cp, name),
                               lambda m: _perfect_code_m_ok(D, m))
    elif g > 2:
        K = e
        cp = c // g

        def route_d(m_extra: int) -> Coloring:
            if g % 2 == 0:
                base = even_equal_diagonal(K, g // 2, m_extra)
            else:
                base = odd_equal_diagonal(K, g, m_extra)
            return unite_first(base, cp, name)

        # the graph follows from the pieces; only the multiplied part takes Shrikhande factors
        for m_extra in _route_d_extras(K, g):
            out.append(Plan(_route_d_spec(K, g, m_extra), "sum of equal-diagonal colorings",
                            lambda m_extra=m_extra: route_d(m_extra)))
    else:
        K = e
        if c == 1 or b == 1:
            raise NotAdmissible(f"({b},{c}) with b + c = 2^{K} needs b, c != 1")
        for base in BCIND_BASES:
            D = (q - 2) // 3 if base.m else (q + 1) // 3
            m_steps = tuple(0 for _ in range((K - 3) // 2))
            m = base.m
            out.append(Plan(GraphSpec(m, D - 2 * m), "coverage families",
                            lambda base=base, m_steps=m_steps: _coverage_top(K, c, base, m_steps, name)))
    return out


def _coverage_top(K: int, c: int, base: GraphSpec, m_steps, name: str) -> Coloring:
    col = coverage_family(K, c, base, m_steps, indices=[0])[0]
    col.name = name
    return col


def _route_d_extras(K: int, g: int) -> list[int]:
    r = g // 2 if g % 2 == 0 else (g - 3) // 2
    if r <= 1:
        return [0]
    # n of the Hamming base before multiplying by 2
    q = 1 << K
    t, p = _three_pieces(r)
    n0 = t * (q - 1) + p * (2 * q - 1) // 3
    return list(range(n0 + 1))


def _route_d_spec(K: int, g: int, m_extra: int) -> GraphSpec:
    q = 1 << K
    tail = (0, q - 1) if g % 2 else (0, 0)
    r = g // 2 if g % 2 == 0 else (g - 3) // 2
    if r == 0:
        even = (0, 0)
    elif r == 1:
        even = ((q + 1) // 3, 0)
    else:
        t, p = _three_pieces(r)
        n0 = t * (q - 1) + p * (2 * q - 1) // 3
        even = (m_extra, 2 * n0 - 2 * m_extra)
    return GraphSpec(even[0] + tail[0], even[1] + tail[1])


PREFERENCES = ("minimal", "hamming", "doob")


def choose_plan(b: int, c: int, preference: str = "minimal", spec=None) -> Plan:
    """Pick a construction: ``minimal`` (smallest diameter, then fewest Shrikhande
    factors), ``hamming`` (m = 0 only), ``doob`` (smallest diameter, then most
    Shrikhande factors), or the given ``spec`` (built smaller and extended)."""
    options = plans(b, c)
    if spec is not None:
        spec = as_spec(spec)
        fits = [p for p in options if p.spec.m <= spec.m and p.spec.n <= spec.n]
        if not fits:
            raise UnsupportedSpec(f"no ({b},{c}) construction fits inside {spec}")
        return min(fits, key=lambda p: (p.spec.diameter, -p.spec.m))
    if preference == "minimal":
        return min(options, key=lambda p: (p.spec.diameter, p.spec.m))
    if preference == "hamming":
        ham = [p for p in options if p.spec.m == 0]
        if not ham:
            raise UnsupportedSpec(f"no Hamming-graph construction for ({b},{c})")
        return min(ham, key=lambda p: p.spec.diameter)
    if preference == "doob":
        return min(options, key=lambda p: (p.spec.diameter, -p.spec.m))
    raise ValueError(f"preference must be one of {PREFERENCES} or a spec")


def build_bc_coloring(b: int, c: int, preference: str = "minimal", *, spec=None,
                      verify: bool = True, samples: int = 4096, seed: int = 0) -> Coloring:
    """A perfect (b, c)-coloring, self-verified; ``.spec``, ``.quotient``, ``.route`` describe it.

    Raises :class:`NotAdmissible` for pairs outside every construction and
    :class:`DeskScaleExceeded` (carrying the spec) past diameter 31.
    """
    plan = choose_plan(b, c, preference, spec)
    target = as_spec(spec) if spec is not None else plan.spec
    if target.diameter > MAX_DIAMETER or plan.spec.diameter > MAX_DIAMETER:
        raise DeskScaleExceeded(f"({b},{c}) needs {target}, beyond diameter {MAX_DIAMETER}", target)
    col = plan.build()
    if col.spec != plan.spec:
        raise UnsupportedSpec(f"route built {col.spec}, planned {plan.spec}")
    col.quotient = bc_quotient(col.spec, b, c)
    if target != col.spec:
        col = extend(col, target.m - col.spec.m, target.n - col.spec.n, verify=False)
    col.name = f"bc({b},{c})"
    col = certify(col, bc_quotient(target, b, c), verify=verify, samples=samples, seed=seed)
    col.route = plan.route
    report = necessary_conditions(b, c, target)
    if not report.passed:
        raise NotAdmissible(f"built ({b},{c}) on {target} but {report}")
    return col
