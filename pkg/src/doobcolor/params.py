"""Arithmetic oracles on parameters: necessary conditions, admissibility, multifold existence."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .graph import as_spec


def is_power_of(x: int, base: int) -> bool:
    if x < 1:
        return False
    while x % base == 0:
        x //= base
    return x == 1


def log2_exact(x: int) -> int | None:
    return x.bit_length() - 1 if x >= 1 and x & (x - 1) == 0 else None


@dataclass
class ConditionReport:
    b: int
    c: int
    spec: object
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def __str__(self):
        head = f"({self.b},{self.c}) on {self.spec}: " + ("pass" if self.passed else "fail")
        lines = [head] + [f"  violated: {v}" for v in self.violations] + [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


_DIVISIBILITY_NOTE = (
    "the one-sided condition uses 3 | b (6 | b when n = 0), the form the cycle-counting "
    "argument gives; the variant 3 | (b + 1) is not applied"
)


def necessary_conditions(b: int, c: int, spec) -> ConditionReport:
    """Conditions every perfect (b, c)-coloring of ``spec`` must satisfy."""
    if b < 1 or c < 1:
        raise ValueError("b and c must be positive")
    spec = as_spec(spec)
    rep = ConditionReport(b, c, spec)
    g = gcd(b, c)
    if log2_exact((b + c) // g) in (None, 0):
        rep.violations.append(f"(b+c)/gcd(b,c) = {(b + c) // g} is not a power of 2 greater than 1")
    if (b + c) % 4 or not 1 <= (b + c) // 4 <= spec.diameter:
        rep.violations.append(f"b+c = {b + c} is not 4i with 1 <= i <= {spec.diameter}")
    for one, other, name in ((c, b, "c"), (b, c, "b")):
        if one != 1:
            continue
        rep.notes.append(_DIVISIBILITY_NOTE)
        other_name = "b" if name == "c" else "c"
        if not is_power_of(other + 1, 4):
            rep.violations.append(f"{name} = 1 requires {other_name} = 4^l - 1, got {other}")
        if spec.n == 0:
            rep.violations.append(f"{name} = 1 requires n != 0")
        if other % 3:
            rep.violations.append(f"{name} = 1 requires 3 | {other_name}")
        if spec.n == 0 and other % 6:
            rep.violations.append(f"{name} = 1 and n = 0 require 6 | {other_name}")
    return rep


# Classification rules, numbered in the order they are checked.
RULES = {
    1: "(b,1) is infinity-admissible iff b = 4^l - 1",
    2: "(b,c) with b, c != 1 is infinity-admissible iff (b+c)/gcd(b,c) = 2^l",
    3: "(b,1) is 1-admissible iff b = 4^l - 1",
    4: "gcd(b,c) >= 2 and (b+c)/gcd(b,c) = 2^l: 0-admissible",
    5: "gcd(b,c) = 1 and (b+c)/gcd(b,c) = 4^l: 1-admissible",
    6: "gcd(b,c) = 1 and (b+c)/gcd(b,c) = 2^(2l-1): 8-admissible",
}


@dataclass
class AdmissibilityReport:
    b: int
    c: int
    infinity: bool
    a: int | None
    rules: tuple[int, ...]
    reason: str = ""

    @property
    def admissible(self) -> bool:
        return self.infinity or self.a is not None

    def __str__(self):
        if not self.admissible:
            return f"({self.b},{self.c}): not admissible ({self.reason})"
        parts = []
        if self.infinity:
            parts.append("infinity-admissible")
        if self.a is not None:
            parts.append(f"{self.a}-admissible")
        rules = ", ".join(f"rule {r}: {RULES[r]}" for r in self.rules)
        return f"({self.b},{self.c}): " + " and ".join(parts) + f" [{rules}]"


def admissibility(b: int, c: int) -> AdmissibilityReport:
    """Classify (b, c): infinity-admissibility and the smallest guaranteed ``a``.

    On top of the power-of-two ratio, b + c must be a multiple of 4, since
    b + c is an eigenvalue gap of the graph; without it pairs like (3, 3)
    would pass the gcd rule.
    """
    if b < 1 or c < 1:
        raise ValueError("b and c must be positive")
    g = gcd(b, c)
    ratio = (b + c) // g
    e = log2_exact(ratio)
    if e in (None, 0):
        return AdmissibilityReport(b, c, False, None, (), f"{b + c}/{g} = {ratio} is not a power of 2")
    if (b + c) % 4:
        return AdmissibilityReport(b, c, False, None, (), f"b+c = {b + c} is not a multiple of 4")
    if b == 1 or c == 1:
        other = b if c == 1 else c
        if is_power_of(other + 1, 4):
            return AdmissibilityReport(b, c, True, 1, (1, 3))
        return AdmissibilityReport(b, c, False, None, (), f"{other} is not of the form 4^l - 1")
    if g >= 2:
        return AdmissibilityReport(b, c, True, 0, (2, 4))
    if e % 2 == 0:
        return AdmissibilityReport(b, c, True, 1, (2, 5))
    return AdmissibilityReport(b, c, True, 8, (2, 6))


@dataclass
class MultifoldParams:
    exists: bool
    alpha: int | None = None
    k: int | None = None
    l: int | None = None

    def __bool__(self):
        return self.exists


def multifold_exists(spec, mu: int) -> MultifoldParams:
    """Whether ``mu`` is the multiplicity of a code built by the multifold recursion.

    True iff 2m+n = 1 mod 4 and mu = alpha * l with 6m+3n+1 = alpha * 2^k,
    alpha odd and 1 <= l <= 2^k.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    spec = as_spec(spec)
    if spec.diameter % 4 != 1:
        return MultifoldParams(False)
    total = spec.degree + 1
    k = (total & -total).bit_length() - 1
    alpha = total >> k
    if mu % alpha or not 1 <= mu // alpha <= 1 << k:
        return MultifoldParams(False, alpha, k)
    return MultifoldParams(True, alpha, k, mu // alpha)
