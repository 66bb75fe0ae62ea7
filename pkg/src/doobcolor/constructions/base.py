"""Base colorings and codes: label partitions, Hamming codes, distance-3 splittings.

Every builder returns lazy objects described by vectorised index functions;
colorings go through :func:`~doobcolor.constructions.common.certify`, so
anything that fits the exhaustive budget is checked vertex by vertex.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from importlib import resources

import numpy as np

from ..eqpart import Code, Coloring, is_mu_fold_perfect
from ..errors import NotFound, UnsupportedSpec, VerificationError
from ..gf import SHRIKHANDE_LABEL, field
from ..graph import EXHAUSTIVE_LIMIT, GraphSpec, as_spec, digits
from ..params import is_power_of
from ..search import (
    AbelianGroup,
    AdditiveMap,
    K4_AS_Z2Z2,
    find_additive_perfect_code,
)
from .common import E, J, CodePartition, certify

# ------------------------------------------------------------- label sums


def label_sum(spec: GraphSpec, idx) -> np.ndarray:
    """GF(4) sum of the coordinate labels (Shrikhande label, K4 symbol as is)."""
    shr, k4 = digits(spec, idx)
    out = np.zeros(np.shape(idx), dtype=np.int64)
    for c in range(spec.m):
        out ^= SHRIKHANDE_LABEL[shr[..., c]]
    for j in range(spec.n):
        out ^= k4[..., j]
    return out


def mds_coloring(spec, *, verify: bool = True) -> Coloring:
    """4-coloring by label sum; its classes are 2-MDS codes, quotient D(J - E)."""
    spec = as_spec(spec)
    col = Coloring(spec, func=lambda idx: label_sum(spec, idx) + 1, k=4, name=f"mds({spec})")
    return certify(col, spec.diameter * (J(4) - E(4)), verify=verify)


def mds_partition(spec, *, verify: bool = True) -> CodePartition:
    """The four 2-MDS label classes of ``spec``."""
    return CodePartition(mds_coloring(spec, verify=verify))


# ---------------------------------------------------------- Hamming codes


def hamming_length(l: int) -> int:
    return (4**l - 1) // 3


def hamming_columns(l: int) -> np.ndarray:
    """Projective points of GF(4)^l with first nonzero entry 1, lexicographic."""
    if l < 1:
        raise ValueError("l must be positive")
    cols = [v for v in itertools.product(range(4), repeat=l)
            if any(v) and next(x for x in v if x) == 1]
    return np.array(cols, dtype=np.int64)


def hamming_additive_map(l: int) -> AdditiveMap:
    """Syndrome map of the GF(4) Hamming code as a homomorphism onto Z2^(2l).

    Each K4 coordinate is read as Z2 x Z2 (GF(4) addition is XOR); the
    syndrome component ``i`` occupies bits ``2(l-1-i)`` and ``2(l-1-i)+1``.
    """
    gf4 = field(2)
    cols = hamming_columns(l)
    n = len(cols)
    target = AbelianGroup((2,) * (2 * l))
    tables = []
    for p in range(n):
        tab = np.zeros((4, 2 * l), dtype=np.int64)
        for v in range(4):
            syn = 0
            for comp in cols[p]:
                syn = (syn << 2) | int(gf4.mul(v, int(comp)))
            tab[v] = [(syn >> (2 * l - 1 - b)) & 1 for b in range(2 * l)]
        tables.append(tab)
    return AdditiveMap(GraphSpec(0, n), target, tables, (K4_AS_Z2Z2,) * n)


def _syndrome_tables(l: int) -> list[np.ndarray]:
    amap = hamming_additive_map(l)
    return [amap.target.encode(t) for t in amap.tables]


def hamming_syndrome(l: int, idx) -> np.ndarray:
    """Syndrome (an int below 4^l) of each word of H((4^l-1)/3, 4)."""
    spec = GraphSpec(0, hamming_length(l))
    _, k4 = digits(spec, idx)
    out = np.zeros(np.shape(idx), dtype=np.int64)
    for p, tab in enumerate(_syndrome_tables_cached(l)):
        out ^= tab[k4[..., p]]
    return out


@lru_cache(maxsize=None)
def _syndrome_tables_cached(l: int):
    return tuple(_syndrome_tables(l))


def hamming_one_perfect(l: int) -> Code:
    """The GF(4) Hamming code in H((4^l-1)/3, 4): words of zero syndrome."""
    spec = GraphSpec(0, hamming_length(l))
    code = Code(spec, func=lambda idx: hamming_syndrome(l, idx) == 0, name=f"hamming({l})")
    return code


# -------------------------------------------------- additive perfect codes

_DATA_FILES = {(2, 1): "additive_d21.json", (1, 3): "additive_d13.json"}


def additive_map_to_json(amap: AdditiveMap) -> str:
    return json.dumps({
        "m": amap.spec.m, "n": amap.spec.n,
        "target": list(amap.target.moduli),
        "k4_modes": list(amap.k4_modes),
        "tables": [t.tolist() for t in amap.tables],
    }, indent=1)


def additive_map_from_json(text: str) -> AdditiveMap:
    d = json.loads(text)
    return AdditiveMap(GraphSpec(d["m"], d["n"]), AbelianGroup(tuple(d["target"])),
                       [np.array(t, dtype=np.int64) for t in d["tables"]], tuple(d["k4_modes"]))


def _check_perfect_map(amap: AdditiveMap) -> AdditiveMap:
    """Neighbour differences must hit every nonzero element exactly once."""
    imgs = sorted(amap.neighbor_images())
    if imgs != list(range(1, amap.target.order)):
        raise VerificationError(f"additive map on {amap.spec} is not a perfect-code syndrome")
    return amap


@lru_cache(maxsize=None)
def additive_perfect_map(spec) -> AdditiveMap:
    """A homomorphism whose kernel is a 1-perfect code and whose fibers partition V.

    Hamming syndromes for m = 0; for the diameter-5 Doob graphs the shipped
    homomorphism tables (regenerated by search if missing).
    """
    spec = as_spec(spec)
    D = spec.diameter
    l = next((l for l in range(1, 16) if hamming_length(l) == D), None)
    if l is None:
        raise UnsupportedSpec(f"{spec}: diameter {D} is not (4^l - 1)/3")
    if spec.m == 0:
        return hamming_additive_map(l)
    if D != 5:
        raise UnsupportedSpec(f"{spec}: Doob 1-perfect partitions are only available at diameter 5")
    name = _DATA_FILES.get((spec.m, spec.n))
    if name is not None:
        try:
            text = resources.files("doobcolor.data").joinpath(name).read_text()
            return _check_perfect_map(additive_map_from_json(text))
        except FileNotFoundError:
            pass
    try:
        _, _, _, amap = find_additive_perfect_code(spec)
    except NotFound as exc:
        raise UnsupportedSpec(f"{spec}: no additive 1-perfect code found") from exc
    return _check_perfect_map(amap)


def perfect_code_coloring(spec, *, verify: bool = True) -> Coloring:
    """4^l-coloring by syndrome: the classes are disjoint 1-perfect codes, quotient J - E."""
    spec = as_spec(spec)
    amap = additive_perfect_map(spec)
    q = amap.target.order
    col = Coloring(spec, func=lambda idx: amap(idx) + 1, k=q, name=f"perfect-partition({spec})")
    return certify(col, J(q) - E(q), verify=verify)


def perfect_code_partition(spec, *, verify: bool = True) -> CodePartition:
    """Disjoint 1-perfect codes covering ``spec``; class 0 is the additive code itself."""
    part = CodePartition(perfect_code_coloring(spec, verify=verify))
    if verify and part.spec.order <= EXHAUSTIVE_LIMIT:
        for code in part:
            if not is_mu_fold_perfect(code, 1):
                raise VerificationError(f"{code.name} is not 1-perfect")
    return part


# ------------------------------------------------------------------ D(4,0)

D40 = GraphSpec(4, 0)


def _z4sq_sum(digs: np.ndarray) -> np.ndarray:
    """Sum in Z4^2 of Shrikhande digits along the last axis, as a digit 4a + b."""
    a = (digs >> 2).sum(axis=-1) & 3
    b = (digs & 3).sum(axis=-1) & 3
    return (a << 2) | b


def d40_classes(idx) -> tuple[np.ndarray, np.ndarray]:
    """``(a, t)`` for vertices of D(4,0): the Z4^2 coordinate sum (digit 4a+b) and the class.

    The class is y2 + y3 alpha + y4 alpha^2 in GF(4) with y_i the label of
    coordinate i; it ignores coordinate 1, so translating by (a, 00, 00, 00)
    carries the classes of the zero-sum set onto those of the sum-a set.
    """
    gf4 = field(2)
    shr, _ = digits(D40, idx)
    y = SHRIKHANDE_LABEL[shr]
    t = y[..., 1] ^ gf4.mul(y[..., 2], 2) ^ gf4.mul(y[..., 3], 3)
    return _z4sq_sum(shr), np.asarray(t, dtype=np.int64)


def d40_partition(a=(0, 0)) -> list[Code]:
    """The four distance-3 classes of {x in D(4,0) : x*_1 + ... + x*_4 = a}."""
    a0, a1 = a
    digit = ((a0 % 4) << 2) | (a1 % 4)
    idx = np.arange(D40.order, dtype=np.int64)
    s, t = d40_classes(idx)
    return [Code(D40, (s == digit) & (t == i), name=f"d40[{a0}{a1}][{i}]") for i in range(4)]


# -------------------------------------------- distance-3 splitting of MDS


def _q_tables(k: int) -> np.ndarray:
    """``tab[p, v] = pos_p * v`` in GF(2^k) for v in Q = {0, 1, x, x+1}."""
    F = field(k)
    pos = F.position_labels()
    return np.array([[int(F.mul(int(p), v)) for v in range(4)] for p in pos], dtype=np.int64)


@lru_cache(maxsize=None)
def _q_tables_cached(k: int):
    return _q_tables(k)


@lru_cache(maxsize=None)
def _packed_byte_tables(k: int) -> np.ndarray:
    """Per byte of the index (four positions), the XOR of (a << k) | sigma over those positions."""
    n = 1 << k
    tab = _q_tables_cached(k)
    groups = (n + 3) // 4
    out = np.zeros((groups, 256), dtype=np.int64)
    byte = np.arange(256)
    for g in range(groups):
        for t in range(4):
            j = n - 1 - (4 * g + t)  # position whose digit sits at bit 2t of byte g
            if j < 0:
                continue
            x = (byte >> (2 * t)) & 3
            out[g] ^= (x << k) | tab[j][x]
    return out


def mdspart_labels(k: int, idx) -> tuple[np.ndarray, np.ndarray]:
    """``(a, j)`` for words of H(2^k, 4) read over Q in GF(2^k).

    ``a`` is the symbol sum (first check row), ``j`` the part index: 0 for
    second syndrome 0, else 1 + log_alpha of the second syndrome.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    F = field(k)
    idx = np.asarray(idx, dtype=np.int64)
    packed = np.zeros(idx.shape, dtype=np.int64)
    for g, table in enumerate(_packed_byte_tables(k)):
        packed ^= table[(idx >> (8 * g)) & 255]
    a = packed >> k
    sigma = packed & ((1 << k) - 1)
    j = np.where(sigma == 0, 0, F.log[np.where(sigma == 0, 1, sigma)] + 1)
    return a, j


def mds_distance3_partition(k: int) -> list[Code]:
    """Parts L_1..L_{2^k} of the zero-sum 2-MDS code of H(2^k, 4), each of distance >= 3.

    Dense masks up to k = 3; membership predicates beyond.
    """
    spec = GraphSpec(0, 1 << k)
    if k > 6:
        raise UnsupportedSpec(f"k = {k} exceeds the supported range 2..6")
    parts = []
    for i in range(1 << k):
        def member(idx, i=i):
            a, j = mdspart_labels(k, idx)
            return (a == 0) & (j == i)
        code = Code(spec, func=member, name=f"mdspart{k}[{i}]")
        if spec.order <= EXHAUSTIVE_LIMIT:
            code.mask  # noqa: B018  materialize
        parts.append(code)
    return parts


def mdspart_algebraic_check(k: int) -> bool:
    """No nonzero Q-word of weight <= 2 lies in the kernel of both check rows."""
    F = field(k)
    pos = [int(x) for x in F.position_labels()]
    for p, v in itertools.product(range(1 << k), range(1, 4)):
        if v == 0 and int(F.mul(pos[p], v)) == 0:
            return False
    for p, q in itertools.combinations(range(1 << k), 2):
        for u, v in itertools.product(range(1, 4), repeat=2):
            if u ^ v == 0 and int(F.mul(pos[p], u)) ^ int(F.mul(pos[q], v)) == 0:
                return False
    return True


def multipartite_quotient(k: int) -> np.ndarray:
    """One neighbour of every color (r, s) with r != i, none with r == i."""
    return np.kron(J(4) - E(4), J(1 << k))


def multipartite_hamming(k: int, *, verify: bool = True) -> Coloring:
    """k-multipartite coloring of H(2^k, 4): color (a, j) -> a 2^k + j + 1.

    The sum-a class is the zero-sum code translated by e_a = (a, 0, ..., 0);
    since position 1 carries the label 0 the part index is unchanged.
    """
    spec = GraphSpec(0, 1 << k)

    def func(idx):
        a, j = mdspart_labels(k, idx)
        return a * (1 << k) + j + 1

    col = Coloring(spec, func=func, k=4 << k, name=f"multipartite{k}({spec})")
    col.parts = (4, 1 << k)
    return certify(col, multipartite_quotient(k), verify=verify)


def _coset_tables(target: AbelianGroup, K: list[int], shifts: list[int], last: dict[int, int]):
    """Per element u of the target: (i, j) with u - shift_i in K and shift_i - u = image of j."""
    table = np.full(target.order, -1, dtype=np.int64)
    Kset = set(K)
    for u in range(target.order):
        for i, t in enumerate(shifts):
            diff = int(target.add(t, target.neg(u)))
            if diff in Kset:
                table[u] = i * 4 + last[diff]
                break
    return table


def multipartite_diameter4(spec, *, verify: bool = True) -> Coloring:
    """2-multipartite coloring of a diameter-4 graph, sliced from a 1-perfect partition.

    With phi the syndrome map of D(m, n+1), M^0_j holds the x whose
    extension by j in the new last K4 coordinate is a codeword, and M^i_j
    is M^0_j moved by the i-th translate.  Translates act in the group the
    homomorphism is defined on, so M^i_j = {x : phi'(x) = phi'(t_i) - phi_last(j)}.
    """
    spec = as_spec(spec)
    if spec.diameter != 4:
        raise ValueError(f"{spec} does not have diameter 4")
    big = GraphSpec(spec.m, spec.n + 1)
    amap = additive_perfect_map(big)
    tgt = amap.target
    last = {int(tgt.encode(amap.tables[-1][w])): w for w in range(4)}
    K = sorted(last)

    def phi_small(idx):
        return amap(np.asarray(idx, dtype=np.int64) << 2)

    cands = _translate_candidates(spec)
    shifts = [int(v) for v in phi_small(np.array(cands, dtype=np.int64))]
    cosets = [frozenset(int(tgt.add(s, q)) for q in K) for s in shifts]
    if len(set(cosets)) != 4:
        shifts = _search_translates(spec, phi_small, tgt, K)
    table = _coset_tables(tgt, K, shifts, last)
    if (table < 0).any():
        raise VerificationError("translates do not cover the syndrome cosets")

    col = Coloring(spec, func=lambda idx: table[phi_small(idx)] + 1, k=16,
                   name=f"multipartite2({spec})")
    col.parts = (4, 4)
    return certify(col, multipartite_quotient(2), verify=verify)


def _translate_candidates(spec: GraphSpec) -> list[int]:
    """Translates 0, e_1, e_2, e_3 on the last K4 coordinate, or 00, 01, 10, 11 on the last Shrikhande one."""
    if spec.n:
        return [0, 1, 2, 3]
    return [0, 1, 4, 5]


def _search_translates(spec, phi_small, tgt, K) -> list[int]:
    """Fallback: low-index vertices whose images meet four distinct cosets of K."""
    Kset = set(K)
    shifts: list[int] = []
    seen: list[frozenset] = []
    for v in range(spec.order):
        s = int(phi_small(np.array([v]))[0])
        cs = frozenset(int(tgt.add(s, q)) for q in Kset)
        if cs not in seen:
            seen.append(cs)
            shifts.append(s)
            if len(shifts) == 4:
                return shifts
    raise VerificationError(f"{spec}: syndrome image misses a coset")


def is_hamming_diameter(D: int) -> bool:
    return is_power_of(3 * D + 1, 4)
