"""Arithmetic in GF(2^k) for k <= 16, and the GF(4) labels of Z4 symbols.

Field elements are plain ints whose bits are polynomial coefficients over
GF(2); ``alpha`` (the class of the polynomial variable, the int 2) is a
primitive element for every modulus in :data:`PRIMITIVE_POLYNOMIALS`.
:class:`FieldElem` wraps an int with its field for operator syntax; the
vectorised constructions work on int arrays through :class:`GF2k` tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import SHRIKHANDE_CONNECTING

# Fixed moduli; bit i is the coefficient of x**i.
PRIMITIVE_POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Carry-less product of ``a`` and ``b`` reduced modulo ``modulus``."""
    deg = modulus.bit_length() - 1
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return out


class GF2k:
    """The field GF(2^k) with exp/log tables."""

    def __init__(self, k: int):
        if k not in PRIMITIVE_POLYNOMIALS:
            raise ValueError(f"unsupported extension degree {k}")
        self.k = k
        self.size = 1 << k
        self.modulus = PRIMITIVE_POLYNOMIALS[k]
        order = self.size - 1
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(self.size, -1, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = poly_mulmod(x, 2 if k > 1 else 1, self.modulus)
        exp[order:] = exp[:order]
        self.exp = exp
        self.log = log
        self._order = order

    def __repr__(self):
        return f"GF2k({self.k})"

    @property
    def alpha(self) -> int:
        return int(self.exp[1]) if self.k > 1 else 1

    def add(self, a, b):
        return np.bitwise_xor(a, b)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        out = self.exp[(self.log[np.where(zero, 1, a)] + self.log[np.where(zero, 1, b)])]
        out = np.where(zero, 0, out)
        return out if out.ndim else int(out)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % self._order])

    def inv(self, a: int) -> int:
        return self.pow(a, -1)

    def alpha_pow(self, e: int) -> int:
        return int(self.exp[e % self._order])

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = poly_mulmod(x, a, self.modulus)
            n += 1
        return n

    def position_labels(self) -> np.ndarray:
        """Field elements in the fixed order 0, 1, alpha, ..., alpha^(2^k-2)."""
        return np.concatenate([[0], self.exp[: self._order]]).astype(np.int64)


@lru_cache(maxsize=None)
def field(k: int) -> GF2k:
    return GF2k(k)


@dataclass(frozen=True)
class FieldElem:
    k: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.k):
            raise ValueError(f"{self.bits} is not an element of GF(2^{self.k})")

    def _check(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.k != self.k:
            raise ValueError(f"mismatched fields GF(2^{self.k}) and GF(2^{other.k})")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.k, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.k, int(field(self.k).mul(self.bits, other.bits)))

    def __pow__(self, e: int):
        return FieldElem(self.k, field(self.k).pow(self.bits, e))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"FieldElem(k={self.k}, bits={self.bits:#b})"

    @classmethod
    def alpha(cls, k: int) -> "FieldElem":
        return cls(k, field(k).alpha)


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def pow(a: FieldElem, e: int) -> FieldElem:  # noqa: A001
    return a**e


# GF(4) = {0, 1, alpha, alpha^2} with alpha^2 = alpha + 1 is stored as the ints
# 0, 1, 2, 3.  The fixed bijection Z4 <-> GF(4) (0, 1, 2, 3 -> 0, 1, alpha,
# alpha^2) and Q <-> Z4 (0, 1, x, x+1 -> 0, 1, 2, 3) are both the identity on
# these ints.
GF4_FROM_Z4 = np.arange(4, dtype=np.int64)
Z4_FROM_GF4 = np.arange(4, dtype=np.int64)

# label of the Shrikhande digit 4a + b: (a mod 2) alpha + (b mod 2)
SHRIKHANDE_LABEL = np.array([((u >> 2 & 1) << 1) | (u & 1) for u in range(16)], dtype=np.int64)


def shrikhande_label(p) -> FieldElem:
    """The additive homomorphism Z4^2 -> (GF(4), +), (a, b) -> (a mod 2) alpha + (b mod 2)."""
    a, b = p
    return FieldElem(2, ((a & 1) << 1) | (b & 1))


def z4_label(x: int) -> FieldElem:
    return FieldElem(2, int(GF4_FROM_Z4[x]))


def label_additivity_check() -> bool:
    """True iff label(a + b) == label(a) + label(b) over all 256 pairs in Z4^2."""
    for a0 in range(4):
        for a1 in range(4):
            for b0 in range(4):
                for b1 in range(4):
                    s = ((a0 + b0) % 4, (a1 + b1) % 4)
                    if shrikhande_label(s) != shrikhande_label((a0, a1)) + shrikhande_label((b0, b1)):
                        return False
    return True


def label_classes() -> dict[int, list[tuple[int, int]]]:
    """Preimages A_r of each GF(4) element r under :func:`shrikhande_label`."""
    out: dict[int, list[tuple[int, int]]] = {r: [] for r in range(4)}
    for a in range(4):
        for b in range(4):
            out[shrikhande_label((a, b)).bits].append((a, b))
    return out


def connecting_set_labels() -> list[int]:
    return [shrikhande_label(d).bits for d in SHRIKHANDE_CONNECTING]


Q_ELEMENTS = (0, 1, 2, 3)  # 0, 1, x, x+1 as bit patterns in any GF(2^k), k >= 2
