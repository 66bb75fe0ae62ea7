"""Command line: info, verify, construct, admissible, search.

Exit status: 0 ok, 1 verification failure (or a search proven unsatisfiable),
2 bad parameters or unmet preconditions, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import formats
from .eqpart import (
    Coloring,
    completely_regular_check,
    compute_quotient,
    is_mu_fold_perfect,
    verify_quotient,
)
from .errors import (
    BudgetExhausted,
    ConditionViolated,
    DeskScaleExceeded,
    FormatError,
    NotAdmissible,
    NotCompletelyRegular,
    NotEquitable,
    NotFound,
    Unsatisfiable,
    UnsupportedSpec,
    VerificationError,
)
from .graph import EXHAUSTIVE_LIMIT, GraphSpec, eigenvalue_multiplicities
from .params import admissibility, necessary_conditions

OK, FAIL, BAD_INPUT, BUDGET = 0, 1, 2, 3


@dataclass
class CommandReport:
    status: str
    summary: str
    result: dict = field(default_factory=dict)
    duration: float = 0.0
    code: int = OK

    def render(self, as_json: bool = False) -> str:
        if as_json:
            return json.dumps({"status": self.status, "summary": self.summary, "result": self.result,
                               "duration": round(self.duration, 3)}, indent=2, default=_jsonable)
        lines = [f"status: {self.status}", self.summary]
        if self.result:
            lines.append("result: " + json.dumps(self.result, default=_jsonable))
        lines.append(f"time: {self.duration:.2f}s")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    return str(x)


def parse_matrix(text: str) -> np.ndarray:
    """Row-major matrix: rows separated by ';', entries by spaces."""
    rows = [r.split() for r in text.strip().split(";") if r.strip()]
    if not rows or len({len(r) for r in rows}) != 1:
        raise ValueError(f"malformed matrix {text!r}")
    return np.array([[int(v) for v in r] for r in rows], dtype=np.int64)


def format_matrix(S) -> str:
    return "; ".join(" ".join(str(int(v)) for v in row) for row in np.asarray(S))


def _ok(summary, **result) -> CommandReport:
    return CommandReport("ok", summary, result)


def _fail(summary, code=FAIL, **result) -> CommandReport:
    return CommandReport("fail", summary, result, code=code)


# ------------------------------------------------------------------ info


def cmd_info(m: int, n: int) -> CommandReport:
    spec = GraphSpec(m, n)
    mult = eigenvalue_multiplicities(spec)
    text = (f"{spec}: {spec.order} vertices, degree {spec.degree}, diameter {spec.diameter}\n"
            "eigenvalues: " + ", ".join(f"{ev} (x{k})" for ev, k in mult.items()))
    return _ok(text, vertices=spec.order, degree=spec.degree, diameter=spec.diameter,
               eigenvalues=list(mult), multiplicities=list(mult.values()))


# ---------------------------------------------------------------- verify


def cmd_verify(path, quotient=None, crc=False, mu=None) -> CommandReport:
    obj = formats.read(path)
    spec = obj.spec
    if spec.order > EXHAUSTIVE_LIMIT:
        raise DeskScaleExceeded("file graph exceeds the exhaustive budget", spec)
    if isinstance(obj, Coloring):
        if crc or mu is not None:
            return _fail("--crc and --mu apply to code files", BAD_INPUT)
        if quotient is not None:
            S = parse_matrix(quotient)
            try:
                verify_quotient(obj, S)
            except NotEquitable as exc:
                return _fail(f"not equitable with the given quotient: {exc}", witness=exc.vertex,
                             color=exc.color, expected=exc.expected_row, observed=exc.observed_row)
            return _ok(f"{spec}: quotient {format_matrix(S)} verified", quotient=S)
        try:
            S = compute_quotient(obj)
        except NotEquitable as exc:
            return _fail(f"not a perfect coloring: {exc}", witness=exc.vertex, color=exc.color,
                         expected=exc.expected_row, observed=exc.observed_row)
        return _ok(f"{spec}: perfect {obj.k}-coloring, quotient {format_matrix(S)}", quotient=S)
    # code files
    if quotient is not None:
        return _fail("--quotient applies to coloring files", BAD_INPUT)
    out = {}
    if mu is not None:
        if not is_mu_fold_perfect(obj, mu):
            return _fail(f"{spec}: not a {mu}-fold 1-perfect code ({len(obj)} codewords)", mu=mu)
        out["mu"] = mu
    if crc or mu is None:
        try:
            ia = completely_regular_check(obj)
        except NotCompletelyRegular as exc:
            return _fail(f"{spec}: not completely regular: {exc}", witness=exc.vertex)
        out["intersection_array"] = [int(v) for v in ia.values]
        out["quotient"] = ia.quotient
    parts = []
    if "mu" in out:
        parts.append(f"{mu}-fold 1-perfect")
    if "intersection_array" in out:
        parts.append(f"completely regular, intersection array {out['intersection_array']}")
    return _ok(f"{spec}: code of {len(obj)} words, " + "; ".join(parts), **out)


# ------------------------------------------------------------- construct


def _write_or_skip(obj, out: Path | None, header, result) -> str:
    if out is None:
        return ""
    if obj.spec.order > EXHAUSTIVE_LIMIT:
        result["written"] = None
        return f"\nnot written: {obj.spec} has {obj.spec.order} vertices, beyond the materialization limit"
    formats.write(out, obj, header)
    result.setdefault("written", []).append(str(out))
    return f"\nwritten: {out}"


def cmd_construct(builder: str, args: list[int], out=None, *, prefer="minimal", spec=None, b=None,
                  k=None, samples=4096, seed=0, recipe_text=None) -> CommandReport:
    from .constructions import base, bc, derived, multifold, recipe

    out = Path(out) if out else None
    header = [f"builder: {builder} {' '.join(map(str, args))}".rstrip()]
    if builder == "recipe":
        col = recipe.evaluate(recipe_text, samples=samples, seed=seed)
        header += [f"recipe: {ln}" for ln in recipe_text.strip().splitlines()]
        return _report_coloring(col, out, header)
    if builder == "bc":
        _nargs(args, 2, builder)
        col = bc.build_bc_coloring(args[0], args[1], prefer, spec=spec, samples=samples, seed=seed)
        header.append(f"route: {col.route}")
        return _report_coloring(col, out, header)
    if builder == "multifold":
        _nargs(args, 2, builder)
        part = multifold.multifold_partition(GraphSpec(*args), samples=samples, seed=seed)
        result = {"spec": str(part.spec), "codes": len(part), "mu": part.alpha, "verified": part.verified}
        note = ""
        for i, code in enumerate(part):
            target = None if out is None else out.with_name(f"{out.name}.{i}.code1")
            note += _write_or_skip(code, target, header + [f"code {i} of {len(part)}, {part.alpha}-fold 1-perfect"],
                                   result)
        return _ok(f"{part.spec}: {len(part)} disjoint {part.alpha}-fold 1-perfect codes "
                   f"({part.verified})" + note, **result)
    if builder == "rad2":
        _nargs(args, 2, builder)
        if b is None:
            raise ValueError("rad2 needs --b")
        g = GraphSpec(*args)
        kk = k if k is not None else ((g.diameter & -g.diameter).bit_length() - 1)
        code = derived.rad2_code(g, kk, b, samples=max(samples, 10_000), seed=seed)
        S = code.quotient
        result = {"spec": str(g), "k": kk, "b": b,
                  "intersection_array": [[int(S[0, 1]), int(S[1, 2])], [int(S[1, 0]), int(S[2, 1])]],
                  "quotient": S, "verified": code.verified,
                  "note": f"b is read as any value in 1..{(1 << kk) - 1}, not only the endpoints"}
        header += [f"intersection array {result['intersection_array']}"]
        note = _write_or_skip(code, out, header, result)
        return _ok(f"{g}: completely regular code of covering radius 2, quotient {format_matrix(S)} "
                   f"({code.verified})" + note, **result)
    simple = {
        "perfect": (2, lambda a: base.perfect_code_coloring(GraphSpec(*a))),
        "mds": (2, lambda a: base.mds_coloring(GraphSpec(*a))),
        "multipartite": (3, lambda a: derived.multipartite(a[0], GraphSpec(a[1], a[2]))),
        "threej": (2, lambda a: derived.three_j(GraphSpec(*a))),
        "threejme": (2, lambda a: derived.three_j_minus_e(GraphSpec(*a))),
        "gammamds": (3, lambda a: derived.gamma_mds_coloring(GraphSpec(a[1], a[2]), a[0])),
        "bb": (2, lambda a: bc.bb_coloring(GraphSpec(*a))),
    }
    if builder not in simple:
        raise ValueError(f"unknown builder {builder!r}")
    nargs, fn = simple[builder]
    _nargs(args, nargs, builder)
    return _report_coloring(fn(args), out, header)


def _nargs(args, n, builder):
    if len(args) != n:
        raise ValueError(f"{builder} takes {n} integer arguments")


def _report_coloring(col: Coloring, out, header) -> CommandReport:
    from .constructions.common import certify

    if getattr(col, "verified", None) is None:
        certify(col, col.quotient)
    S = col.quotient
    header = header + [f"spec: {col.spec}", f"quotient: {format_matrix(S)}", f"verified: {col.verified}"]
    result = {"spec": str(col.spec), "k": col.k, "quotient": S, "verified": col.verified}
    note = _write_or_skip(col, out, header, result)
    return _ok(f"{col.spec}: perfect {col.k}-coloring, quotient {format_matrix(S)} ({col.verified})" + note,
               **result)


# ------------------------------------------------------------ admissible


def cmd_admissible(b: int, c: int, spec=None) -> CommandReport:
    rep = admissibility(b, c)
    result = {"infinity": rep.infinity, "a": rep.a, "rules": list(rep.rules)}
    text = str(rep)
    if spec is not None:
        nc = necessary_conditions(b, c, spec)
        result["necessary_conditions"] = {"spec": str(spec), "passed": nc.passed, "violations": nc.violations}
        text += "\n" + str(nc)
    return _ok(text, **result)


# ---------------------------------------------------------------- search


def cmd_search(kind: str, m: int, n: int, *, mu=1, quotient=None, out=None, budget=None, c=None) -> CommandReport:
    from . import search

    spec = GraphSpec(m, n)
    out = Path(out) if out else None
    header = [f"search: {kind} {m} {n}"]
    result = {"spec": str(spec)}
    if kind == "code":
        header[0] += f" --mu {mu}"
        obj = search.find_perfect_code(spec, mu, budget)
        summary = f"{spec}: {mu}-fold 1-perfect code with {len(obj)} words"
    elif kind == "coloring":
        if quotient is None:
            raise ValueError("coloring search needs --quotient")
        S = parse_matrix(quotient)
        header[0] += f" --quotient '{quotient}'"
        obj = search.find_perfect_coloring(spec, S, budget=budget)
        obj.quotient = S
        summary = f"{spec}: perfect coloring with quotient {format_matrix(S)}"
        result["quotient"] = S
    elif kind == "additive":
        code, cosets, coloring, amap = search.find_additive_perfect_code(spec, budget)
        obj = coloring
        summary = f"{spec}: additive 1-perfect code onto {amap.target}, {len(cosets)} cosets"
    elif kind == "family":
        from .constructions.bc import search_bcind_family

        if c is None:
            raise ValueError("family search needs --c")
        masks = search_bcind_family(spec, c, budget)
        result["members"] = [np.flatnonzero(mk).tolist() for mk in masks]
        summary = f"{spec}: 8 perfect ({8 - c},{c})-colorings covering every vertex {c} times"
        if out is not None:
            out.write_text(json.dumps(result["members"]) + "\n")
            result["written"] = [str(out)]
        return _ok(summary, **result)
    else:
        raise ValueError(f"unknown search kind {kind!r}")
    note = _write_or_skip(obj, out, header, result)
    return _ok(summary + note, **result)


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="doobcolor", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("info", help="graph parameters and spectrum")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)

    s = sub.add_parser("verify", help="check a pc1/code1 file")
    s.add_argument("file")
    s.add_argument("--quotient", help="expected quotient, rows separated by ';'")
    s.add_argument("--crc", action="store_true", help="completely regular check of a code")
    s.add_argument("--mu", type=int, help="check a mu-fold 1-perfect code")

    s = sub.add_parser("construct", help="run a builder or a recipe file")
    s.add_argument("builder", help="bc, multifold, rad2, perfect, mds, multipartite, threej, threejme, "
                                   "gammamds, bb, or recipe")
    s.add_argument("args", nargs="*", help="integer arguments, or the recipe path")
    s.add_argument("-o", "--out", help="output file (multifold: prefix for one file per code)")
    s.add_argument("--prefer", default="minimal", choices=["minimal", "hamming", "doob"])
    s.add_argument("--spec", nargs=2, type=int, metavar=("M", "N"), help="target graph for bc")
    s.add_argument("--b", type=int, help="number of united classes for rad2")
    s.add_argument("--k", type=int, help="power of 2 for rad2 (default: 2-adic valuation of the diameter)")
    s.add_argument("--samples", type=int, default=4096)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("admissible", help="classify a (b, c) pair")
    s.add_argument("b", type=int)
    s.add_argument("c", type=int)
    s.add_argument("--spec", nargs=2, type=int, metavar=("M", "N"), help="also check necessary conditions")

    s = sub.add_parser("search", help="search for codes and colorings")
    s.add_argument("kind", choices=["code", "coloring", "additive", "family"])
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--mu", type=int, default=1)
    s.add_argument("--quotient")
    s.add_argument("--c", type=int, help="coverage for the family search")
    s.add_argument("-o", "--out")
    s.add_argument("--nodes", type=int, default=10**7)
    s.add_argument("--seconds", type=float, default=600.0)
    s.add_argument("--seed", type=int)
    return p


def run(argv=None) -> CommandReport:
    from .search import SearchBudget

    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.cmd == "info":
            rep = cmd_info(args.m, args.n)
        elif args.cmd == "verify":
            rep = cmd_verify(args.file, args.quotient, args.crc, args.mu)
        elif args.cmd == "construct":
            spec = GraphSpec(*args.spec) if args.spec else None
            if args.builder == "recipe":
                if len(args.args) != 1:
                    raise ValueError("recipe takes one file argument")
                rep = cmd_construct("recipe", [], args.out, samples=args.samples, seed=args.seed,
                                    recipe_text=Path(args.args[0]).read_text())
            else:
                ints = [int(a) for a in args.args]
                rep = cmd_construct(args.builder, ints, args.out, prefer=args.prefer, spec=spec, b=args.b,
                                    k=args.k, samples=args.samples, seed=args.seed)
        elif args.cmd == "admissible":
            spec = GraphSpec(*args.spec) if args.spec else None
            rep = cmd_admissible(args.b, args.c, spec)
        else:
            budget = SearchBudget(nodes=args.nodes, seconds=args.seconds, seed=args.seed)
            rep = cmd_search(args.kind, args.m, args.n, mu=args.mu, quotient=args.quotient, out=args.out,
                             budget=budget, c=args.c)
    except Unsatisfiable as exc:
        rep = _fail(f"unsatisfiable: {exc}", FAIL, outcome="Unsatisfiable")
    except BudgetExhausted as exc:
        rep = _fail(f"budget exhausted: {exc}", BUDGET, outcome="BudgetExhausted", nodes=exc.nodes)
    except (VerificationError, NotEquitable, NotCompletelyRegular) as exc:
        rep = _fail(f"verification failed: {exc}", FAIL)
    except DeskScaleExceeded as exc:
        rep = _fail(f"beyond desk scale: {exc}", BAD_INPUT, spec=str(exc.spec) if exc.spec else None)
    except ConditionViolated as exc:
        rep = _fail(f"condition {exc.item} violated: {exc}", BAD_INPUT, item=exc.item)
    except (NotAdmissible, UnsupportedSpec, NotFound, FormatError, ValueError, OSError) as exc:
        rep = _fail(f"{type(exc).__name__}: {exc}", BAD_INPUT)
    rep.duration = time.perf_counter() - t0
    rep.json = args.json
    return rep


def main(argv=None) -> int:
    rep = run(argv)
    print(rep.render(getattr(rep, "json", False)))
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
