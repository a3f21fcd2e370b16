"""Command-line verification harness.

Usage::

    ptvirasoro verify cubic-table --max-order 10
    ptvirasoro verify surface-n1 --spec my.surf --fuzz 50 --seed 1 --format tsv

Exit codes: 0 when every row passes, 1 when some check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .cherncalc import fano_integrals, todd_quotient_cubic
from .cohmodel import ValidationError
from .cubicpt import (
    TABLE,
    bracket,
    check_row,
    cubic_model,
    cubic_menu,
    virasoro_residual_cubic,
)
from .descalg import DescExpr, OperatorPreset, apply_Lk, apply_Rk, apply_Sk, collapse, expr_degree
from .exact import RatFn
from .hilbsurf import (
    SurfaceSpec,
    bracket_hilb,
    disconnected_bracket,
    disjoint_union,
    load_surface,
    random_surface_spec,
    relabel,
    surface_menu,
    virasoro_residual_surface,
)
from .insertions import ParseError, parse_insertion

__all__ = [
    "SUITES",
    "SuiteOptions",
    "SuiteReport",
    "Row",
    "run_suite",
    "emit_report",
    "parse_surface_spec",
    "main",
]


@dataclass(frozen=True)
class Row:
    id: str
    anchor: str
    expected: str
    computed: str

    @property
    def status(self) -> str:
        return "pass" if self.expected == self.computed else "FAIL"


@dataclass
class SuiteReport:
    name: str
    rows: list[Row] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, id: str, anchor: str, expected, computed) -> Row:
        row = Row(f"{self.name}/{id}", anchor, str(expected), str(computed))
        self.rows.append(row)
        return row

    @property
    def passed(self) -> int:
        return sum(r.status == "pass" for r in self.rows)

    @property
    def failed(self) -> int:
        return len(self.rows) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def first_failure(self) -> Row | None:
        return next((r for r in self.rows if r.status != "pass"), None)


@dataclass
class SuiteOptions:
    max_order: int = 10
    specs: list[SurfaceSpec] = field(default_factory=list)
    fuzz: int = 0
    seed: int = 1


# ---- suites -----------------------------------------------------------------


def _table_suite(opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("cubic-table")
    for row in TABLE:
        res = check_row(row, opt.max_order)
        expected = _fmt_fits({mono: row.closed_form * c for mono, c in row.pairing.terms.items()})
        computed = _fmt_fits(res["fits"])
        if not res["series_ok"]:
            computed += " [series mismatch]"
        if not res["functional_equation_ok"]:
            computed += " [functional equation fails]"
        rep.add(_row_id(row.insertion), "line-class table", expected, computed)
    return rep


def _row_id(insertion: str) -> str:
    return insertion.replace("(", "").replace(")", "")


def _fmt_fits(fits: dict[tuple, RatFn]) -> str:
    parts = []
    for mono in sorted(fits):
        f = fits[mono]
        if f.is_zero():
            continue
        label = "*".join(f"P({i},{j})" for i, j in mono)
        parts.append(f"{label}: {f}" if label else str(f))
    return "; ".join(parts) or "0"


def cubic_virasoro_cases() -> list[tuple[str, int, str]]:
    """The hand-checkable cases ``(label, k, insertion)``."""
    cases = [("case1", 2, "1")]
    for j, g in [(1, "H3"), (2, "H2"), (3, "H"), (4, "1")]:
        cases.append((f"case2-ch{j}{g}", 1, f"ch{j}({g})"))
    cases.append(("case3", 1, "ch2(g1)*ch2(g2)"))
    return cases


def _first_nonzero(res: dict) -> str:
    for e in sorted(res):
        if not res[e].is_zero():
            return f"q^{e}: {res[e]!r}"
    return "0"


def _cubic_virasoro_suite(opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("cubic-virasoro")
    m = cubic_model()
    for label, k, ins in cubic_virasoro_cases():
        D = parse_insertion(ins, m) if ins != "1" else DescExpr.one()
        rep.add(label, f"L_{k} {ins}", "0", _first_nonzero(virasoro_residual_cubic(k, D, opt.max_order)))
    for k in (-1, 0):
        menu = cubic_menu(4 - 2 * k)
        bad = [
            (str(D), r)
            for D in menu
            for r in [_first_nonzero(virasoro_residual_cubic(k, D, opt.max_order))]
            if r != "0"
        ]
        computed = f"{len(menu)} zero" if not bad else f"{bad[0][0]} -> {bad[0][1]}"
        rep.add(f"menu-k{k}", f"L_{k} on degree {4 - 2 * k}", f"{len(menu)} zero", computed)
    return rep


FANO_VALUES = [
    ("ch4(1)*ch4(1)", Fraction(5, 4)),
    ("ch4(1)*ch3(H)", Fraction(15, 4)),
    ("ch4(1)*ch2(H2)", Fraction(-15, 2)),
    ("ch3(H)*ch3(H)", Fraction(45, 4)),
    ("ch3(H)*ch2(H2)", Fraction(-45, 2)),
    ("ch2(H2)*ch2(H2)", Fraction(45)),
    ("ch5(1)", Fraction(15, 4)),
    ("ch4(H)", Fraction(21, 4)),
    ("ch3(H2)", Fraction(-45, 2)),
    ("ch2(H3)", Fraction(18)),
]

# reciprocal quotient td(O(1) x Q) / td(O(3)), as monomials (H, c1, c2)
TODD_DISPLAY = {
    (0, 0, 0): Fraction(1),
    (0, 1, 0): Fraction(-1, 2),
    (0, 2, 0): Fraction(1, 6),
    (0, 0, 1): Fraction(-1, 12),
    (1, 1, 0): Fraction(1, 12),
    (1, 2, 0): Fraction(-1, 24),
    (2, 0, 0): Fraction(1, 4),
    (2, 1, 0): Fraction(-1, 8),
    (2, 2, 0): Fraction(31, 720),
    (2, 0, 1): Fraction(-1, 60),
    (3, 1, 0): Fraction(7, 360),
    (3, 2, 0): Fraction(-7, 720),
}


def todd_display_terms(q) -> dict[tuple[int, int, int], Fraction]:
    """Coefficients of a Todd quotient keyed by ``(H, c1, c2)`` exponents."""
    names = q.ring.names
    out = {}
    for mono, v in q.terms.items():
        e = dict(zip(names, mono))
        out[(e.get("H", 0), e.get("c1", 0), e.get("c2", 0))] = v
    return out


def _fano_suite(opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("fano-geometry")
    ints = fano_integrals()
    rep.add("int-c1^2", "Fano integrals", 45, ints["c1^2"])
    rep.add("int-c2", "Fano integrals", 27, ints["c2"])
    computed = todd_display_terms(todd_quotient_cubic(5, inverse=True))
    for key, v in TODD_DISPLAY.items():
        rep.add(f"todd-H{key[0]}c1^{key[1]}c2^{key[2]}", "Todd quotient", v, computed.get(key, 0))
    extra = {k: v for k, v in computed.items() if k not in TODD_DISPLAY and v}
    rep.add("todd-no-extra-terms", "Todd quotient", "{}", extra)
    m = cubic_model()
    for ins, v in FANO_VALUES:
        rep.add(_row_id(ins), "n=0 invariants", v, bracket(1, parse_insertion(ins, m)).scalar())
    return rep


def _surface_cases(m) -> Iterable[tuple[int, DescExpr, int]]:
    """Degree-matched ``(k, D, n)`` with ``k <= 4`` and ``D`` of length at most 3."""
    p = OperatorPreset.surface(m)
    menu = surface_menu(m)
    for length in range(4):
        for mono in combinations_with_replacement(menu, length):
            d = sum(g.deg + 2 * g.k - 2 * p.shift for g in mono)
            for n in (0, 1):
                twice_k = 4 * n - d
                if twice_k % 2 == 0 and -1 <= twice_k // 2 <= 4:
                    yield twice_k // 2, DescExpr({mono: 1}), n


def surface_specs(opt: SuiteOptions) -> list[SurfaceSpec]:
    rng = random.Random(opt.seed)
    fuzzed = [
        random_surface_spec(rng, f"fuzz{i}-seed{opt.seed}") for i in range(opt.fuzz)
    ]
    return list(opt.specs) + fuzzed


def _surface_suite(opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("surface-n1")
    specs = surface_specs(opt)
    if not specs:
        rep.notes.append("no surfaces given; use --spec or --fuzz")
    for spec in specs:
        m = load_surface(spec)
        rep.add(f"{spec.name}/hrr", "HRR identities", True, m.hrr_report().passed)
        count, bad = 0, None
        for k, D, n in _surface_cases(m):
            count += 1
            r = virasoro_residual_surface(k, D, n, m)
            if r and bad is None:
                bad = f"L_{k} {D} on S^[{n}] = {r}"
        rep.add(f"{spec.name}/residuals", "L_k D = 0, n <= 1", f"{count} zero", bad or f"{count} zero")
    return rep


def disconnected_cases(rng: random.Random, pairs: int) -> Iterable[tuple[str, object, object, DescExpr, DescExpr, int]]:
    for i in range(pairs):
        s1, s2 = random_surface_spec(rng, f"S{i}"), random_surface_spec(rng, f"E{i}")
        m1, m2 = load_surface(s1), load_surface(s2)
        g1, g2 = surface_menu(m1, 4), surface_menu(m2, 4)
        for n in (0, 1):
            a = DescExpr({tuple(rng.sample(g1, rng.randint(0, 2))): 1})
            b = DescExpr({tuple(rng.sample(g2, rng.randint(0, 2))): 1})
            yield f"pair{i}/n{n}", m1, m2, a, b, n


def two_paths(m1, m2, a: DescExpr, b: DescExpr, n: int) -> tuple[Fraction, Fraction]:
    """``<a b>`` on ``(S1 u S2)^[n]``, by distribution and on the direct-sum model.

    On the component of ``(S1 u S2)^[1]`` where the point lies on ``S1``,
    descendents of classes from ``S2`` take their ``S2^[0]`` values.  The
    direct-sum realization reproduces this because ``ch_0`` is a multiple
    of the full unit and ``ch_{k>=2}`` of an ``S2`` class is supported on ``S2``.
    """
    split = disconnected_bracket([(m1, a), (m2, b)], n)
    u = disjoint_union(m1, m2)
    joint = relabel(a, "A.", m1) * relabel(b, "B.", m2)
    return split, bracket_hilb(n, joint, u)


def _disconnected_suite(opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("disconnected")
    rng = random.Random(opt.seed)
    for label, m1, m2, a, b, n in disconnected_cases(rng, max(opt.fuzz, 5)):
        split, joint = two_paths(m1, m2, a, b, n)
        rep.add(label, "disconnected factorization", split, joint)
    return rep


def _operator_suite(opt: SuiteOptions) -> SuiteReport:
    rep = SuiteReport("operator-identities")
    m = cubic_model()
    p = OperatorPreset.threefold(m)
    P = lambda s: parse_insertion(s, m)
    l1 = collapse(apply_Lk(DescExpr.one(), 1, m, p), m)
    rep.add("L1(1)", "collapsed L_1", P("-2*ch3(H)"), l1)
    x = P("ch3(H)*ch4(1)")
    got = collapse(apply_Lk(x, 1, m, p), m)
    want = collapse(apply_Rk(x, 1, m, p) + P("-2*ch3(H)") * x + P("2/3*ch2(H3)") * apply_Rk(x, -1, m, p), m)
    rep.add("L1(ch3H ch41)", "collapsed L_1", want, got)
    l2 = collapse(apply_Lk(DescExpr.one(), 2, m, p), m)
    rep.add(
        "L2(1)",
        "collapsed L_2",
        P("-4*ch4(H) + 4/3*ch2(H)*ch2(H3) - 1/3*ch2(H2)*ch2(H2) - 4/3*ch2(H3) + 2*ch2(H3)"),
        l2,
    )
    s0 = collapse(apply_Sk(DescExpr.one(), 0, m, p), m)
    rep.add("S0(1)", "S_0 = -int td_3", DescExpr.one(-1), s0)
    for D in cubic_menu(2)[:10]:
        e = apply_Lk(D, 1, m, p)
        rep.add(f"deg L1({D})", "degree shift", expr_degree(D, p) + 2, expr_degree(e, p) if not e.is_zero() else expr_degree(D, p) + 2)
    return rep


SUITES: dict[str, Callable[[SuiteOptions], SuiteReport]] = {
    "cubic-table": _table_suite,
    "cubic-virasoro": _cubic_virasoro_suite,
    "fano-geometry": _fano_suite,
    "surface-n1": _surface_suite,
    "disconnected": _disconnected_suite,
    "operator-identities": _operator_suite,
}


def run_suite(name: str, options: SuiteOptions | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](options or SuiteOptions())


# ---- output -----------------------------------------------------------------

HEADER = ("id", "anchor", "expected", "computed", "status")


def _clean(s: str) -> str:
    return s.replace("\t", " ").replace("\n", " ")


def emit_report(r: SuiteReport, format: str = "text") -> bytes:
    if format == "tsv":
        lines = ["\t".join(HEADER)]
        lines += ["\t".join(_clean(x) for x in (w.id, w.anchor, w.expected, w.computed, w.status)) for w in r.rows]
        return ("\n".join(lines) + "\n").encode()
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = []
    for w in r.rows:
        lines.append(f"[{w.status:>4}] {w.id}  ({w.anchor})")
        if w.status != "pass":
            lines.append(f"        expected: {w.expected}")
            lines.append(f"        computed: {w.computed}")
    lines += [f"note: {n}" for n in r.notes]
    lines.append(f"{r.name}: {r.passed} passed, {r.failed} failed")
    return ("\n".join(lines) + "\n").encode()


# ---- surface spec files ---------------------------------------------------------

SPEC_KEYS = ("name", "h20", "h11", "c1", "intersection", "pairing20_02", "c1sq", "c2")


class SpecFileError(ValueError):
    pass


def _scalar(text: str, where: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise SpecFileError(f"{where}: not a rational number: {text.strip()!r}") from None


def _vector(text: str, where: str) -> list[Fraction]:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise SpecFileError(f"{where}: expected a bracketed list")
    inner = t[1:-1].strip()
    return [_scalar(x, where) for x in re.split(r"[,\s]+", inner) if x] if inner else []


def _matrix(text: str, where: str) -> list[list[Fraction]]:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise SpecFileError(f"{where}: expected a bracketed matrix")
    inner = t[1:-1].strip()
    if not inner:
        return []
    rows = re.findall(r"\[[^\[\]]*\]", inner)
    if re.sub(r"\[[^\[\]]*\]|[,\s]", "", inner):
        raise SpecFileError(f"{where}: matrix rows must be bracketed lists")
    return [_vector(r, where) for r in rows]


def parse_surface_spec(text: str, source: str = "<spec>") -> SurfaceSpec:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if "=" not in line:
            raise SpecFileError(f"{where}: expected 'key = value'")
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in SPEC_KEYS:
            raise SpecFileError(f"{where}: unknown key {key!r}")
        if key in values:
            raise SpecFileError(f"{where}: duplicate key {key!r}")
        values[key] = value
    missing = [k for k in SPEC_KEYS if k not in values]
    if missing:
        raise SpecFileError(f"{source}: missing keys {', '.join(missing)}")

    def integer(key):
        v = _scalar(values[key], f"{source}: {key}")
        if v.denominator != 1 or v < 0:
            raise SpecFileError(f"{source}: {key} must be a non-negative integer")
        return int(v)

    return SurfaceSpec.make(
        values["name"],
        integer("h20"),
        integer("h11"),
        _vector(values["c1"], f"{source}: c1"),
        _matrix(values["intersection"], f"{source}: intersection"),
        _matrix(values["pairing20_02"], f"{source}: pairing20_02"),
        _scalar(values["c1sq"], f"{source}: c1sq"),
        _scalar(values["c2"], f"{source}: c2"),
    )


# ---- entry point ------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ptvirasoro", description="Exact Virasoro constraint checks.")
    sub = ap.add_subparsers(dest="verb", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--max-order", type=int, default=10)
    v.add_argument("--spec", action="append", default=[], metavar="PATH")
    v.add_argument("--fuzz", type=int, default=0)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--format", choices=("text", "tsv"), default="text")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.max_order < 4:
            raise SpecFileError("--max-order must be at least 4")
        specs = []
        for path in args.spec:
            spec = parse_surface_spec(Path(path).read_text(), path)
            load_surface(spec)
            specs.append(spec)
        opt = SuiteOptions(args.max_order, specs, args.fuzz, args.seed)
        report = run_suite(args.suite, opt)
    except (SpecFileError, ValidationError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(emit_report(report, args.format))
    sys.stdout.flush()
    if not report.ok:
        bad = report.first_failure()
        print(f"first failure: {bad.id}: expected {bad.expected}, computed {bad.computed}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
