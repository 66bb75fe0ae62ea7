"""Text formats for colorings (``pc1``) and codes (``code1``).

pc1: header ``pc1 m=<m> n=<n> k=<k>`` followed by the 4^(2m+n) colors in
canonical vertex order.  code1: header ``code1 m=<m> n=<n>`` followed by the
sorted canonical indices of the codewords.  Lines starting with ``#`` are
comments; values are whitespace separated with no layout constraint.
"""

from __future__ import annotations

import os
import re
import tempfile
from pathlib import Path

import numpy as np

from .eqpart import Code, Coloring
from .errors import FormatError
from .graph import GraphSpec

_HEADER = re.compile(r"^(pc1|code1)\s+m=(\d+)\s+n=(\d+)(?:\s+k=(\d+))?\s*$")
_PER_LINE = 64


def _split(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty file")
    match = _HEADER.match(lines[0].strip())
    if not match:
        raise FormatError(f"bad header line {lines[0]!r}")
    kind, m, n, k = match.groups()
    body = " ".join(lines[1:]).split()
    try:
        values = np.array(body, dtype=np.int64)
    except ValueError as exc:
        raise FormatError(f"non-integer entry: {exc}") from None
    return kind, GraphSpec(int(m), int(n)), (int(k) if k else None), values


def parse(text: str) -> Coloring | Code:
    kind, spec, k, values = _split(text)
    if kind == "pc1":
        if k is None:
            raise FormatError("pc1 header needs k=")
        if values.size != spec.order:
            raise FormatError(f"expected {spec.order} colors, found {values.size}")
        if values.size and (values.min() < 1 or values.max() > k):
            raise FormatError(f"colors must lie in 1..{k}")
        try:
            return Coloring(spec, values, k=k)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    if k is not None:
        raise FormatError("code1 header takes no k=")
    if values.size == 0:
        raise FormatError("a code needs at least one codeword")
    if values.min() < 0 or values.max() >= spec.order:
        raise FormatError("codeword index out of range")
    if (np.diff(values) <= 0).any():
        raise FormatError("codeword indices must be strictly increasing")
    return Code.from_indices(spec, values)


def read(path) -> Coloring | Code:
    return parse(Path(path).read_text())


def _body_lines(values: np.ndarray) -> list[str]:
    return [" ".join(map(str, values[i: i + _PER_LINE].tolist())) for i in range(0, values.size, _PER_LINE)]


def dumps(obj: Coloring | Code, comments=()) -> str:
    spec = obj.spec
    lines = [f"# {c}" for c in comments]
    if isinstance(obj, Coloring):
        lines.append(f"pc1 m={spec.m} n={spec.n} k={obj.k}")
        lines += _body_lines(obj.colors.astype(np.int64))
    else:
        lines.append(f"code1 m={spec.m} n={spec.n}")
        lines += _body_lines(obj.indices)
    return "\n".join(lines) + "\n"


def write(path, obj: Coloring | Code, comments=()) -> Path:
    """Write atomically: a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(obj, comments))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
