"""Shared plumbing for the builders: self-verification and small matrix helpers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..eqpart import Code, Coloring, verify_quotient
from ..errors import NotEquitable, VerificationError
from ..graph import EXHAUSTIVE_LIMIT

DEFAULT_SAMPLES = 4096


def J(k: int, l: int | None = None) -> np.ndarray:
    return np.ones((k, k if l is None else l), dtype=np.int64)


def E(k: int) -> np.ndarray:
    return np.eye(k, dtype=np.int64)


def sample_vertices(spec, samples: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.unique(rng.integers(0, spec.order, size=samples, dtype=np.int64))


def certify(coloring: Coloring, S, *, verify: bool = True, samples: int = DEFAULT_SAMPLES,
            seed: int = 0) -> Coloring:
    """Attach the declared quotient ``S`` and check it.

    Exhaustive (after materializing) when the graph fits the exhaustive
    budget, otherwise at ``samples`` random vertices.  ``coloring.verified``
    records which.  A mismatch is an internal error of the builder.
    """
    S = np.asarray(S, dtype=np.int64)
    coloring.quotient = S
    coloring.verified = None
    if not verify:
        return coloring
    try:
        if coloring.spec.order <= EXHAUSTIVE_LIMIT:
            coloring.materialize()
            verify_quotient(coloring, S)
            coloring.verified = "exhaustive"
        else:
            vs = sample_vertices(coloring.spec, samples, seed)
            verify_quotient(coloring, S, vertices=vs)
            coloring.verified = f"sampled({vs.size})"
    except NotEquitable as exc:
        raise VerificationError(f"{coloring.name or 'coloring'} on {coloring.spec}: {exc}") from exc
    except ValueError as exc:
        # non-surjective output while materializing
        raise VerificationError(f"{coloring.name or 'coloring'} on {coloring.spec}: {exc}") from exc
    return coloring


def declared(coloring: Coloring) -> np.ndarray:
    """The quotient a builder attached, or :class:`ValueError` if there is none."""
    S = getattr(coloring, "quotient", None)
    if S is None:
        raise ValueError(f"{coloring!r} carries no quotient; pass one explicitly")
    return S


def is_equal_diagonal(M: np.ndarray) -> bool:
    M = np.asarray(M)
    return bool((np.roll(np.roll(M, 1, axis=0), 1, axis=1) == M).all())


@dataclass
class CodePartition:
    """Disjoint codes covering the vertex set, held as the coloring ``code i = color i + 1``."""

    coloring: Coloring

    @property
    def spec(self):
        return self.coloring.spec

    def __len__(self):
        return self.coloring.k

    def __getitem__(self, i: int) -> Code:
        if not 0 <= i < len(self):
            raise IndexError(i)
        code = self.coloring.code(i + 1)
        code.name = f"{self.coloring.name}[{i}]"
        return code

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def codes(self) -> list[Code]:
        return list(self)
