"""The descendent algebra and the Virasoro operators acting on it.

A :class:`DescExpr` is an element of the free supercommutative algebra on
symbols ``ch_k(e)`` with ``e`` a basis (or formal) class of a
:class:`~ptvirasoro.cohmodel.CohModel`.  A symbol is odd exactly when its
class is odd.  Monomials are kept sorted by ``(class, k)`` with Koszul signs,
so equal elements have equal term dictionaries.

Operators ``L_k = R_k + T_k + S_k`` are parameterised by an
:class:`OperatorPreset`; one preset serves 3-folds (shift 3) and one serves
surfaces (shift 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Mapping, NamedTuple

from .cohmodel import CohClass, CohModel

__all__ = [
    "Gen",
    "DescExpr",
    "OperatorPreset",
    "ch",
    "normal_form",
    "degree",
    "expr_degree",
    "collapse",
    "apply_Rk",
    "tk_element",
    "apply_Sk",
    "apply_Lk",
    "reduction_rewrite",
]


class Gen(NamedTuple):
    """The symbol ``ch_k(cls)``; ``deg`` and ``hp`` are the class's degree and Hodge p."""

    k: int
    cls: str
    deg: int
    hp: int

    @property
    def odd(self) -> bool:
        return self.deg % 2 == 1

    def __str__(self) -> str:
        return f"ch{self.k}({self.cls})"


Monomial = tuple[Gen, ...]


def _sort_key(g: Gen):
    return (g.cls, g.k)


def _canonical(gens: Iterable[Gen]) -> tuple[int, Monomial]:
    """Sort a product of symbols; returns ``(sign, monomial)`` with sign 0 for an odd square."""
    seq = list(gens)
    sign = 1
    # insertion sort, tracking transpositions of odd symbols
    for i in range(1, len(seq)):
        j = i
        while j > 0 and _sort_key(seq[j - 1]) > _sort_key(seq[j]):
            if seq[j - 1].odd and seq[j].odd:
                sign = -sign
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a == b and a.odd:
            return 0, ()
    return sign, tuple(seq)


class DescExpr:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        out: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            sign, key = _canonical(mono)
            if sign == 0 or c == 0:
                continue
            out[key] = out.get(key, 0) + sign * Fraction(c)
        self.terms = {m: c for m, c in out.items() if c != 0}

    @classmethod
    def _trusted(cls, terms: dict[Monomial, Fraction]) -> "DescExpr":
        # keys already canonical, values Fractions; only zeros are dropped
        e = object.__new__(cls)
        e.terms = {m: c for m, c in terms.items() if c}
        return e

    @classmethod
    def one(cls, c=1) -> "DescExpr":
        return cls({(): c})

    @classmethod
    def zero(cls) -> "DescExpr":
        return cls()

    @classmethod
    def gen(cls, g: Gen, c=1) -> "DescExpr":
        return cls({(g,): c})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def __add__(self, other) -> "DescExpr":
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return DescExpr._trusted(out)

    __radd__ = __add__

    def __neg__(self) -> "DescExpr":
        return DescExpr._trusted({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "DescExpr":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "DescExpr":
        return _lift(other) - self

    def __mul__(self, other) -> "DescExpr":
        if not isinstance(other, DescExpr):
            c = Fraction(other)
            return DescExpr._trusted({m: v * c for m, v in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign, key = _canonical(ma + mb)
                if sign:
                    v = ca * cb
                    out[key] = out.get(key, 0) + (v if sign > 0 else -v)
        return DescExpr._trusted(out)

    def __rmul__(self, other) -> "DescExpr":
        return self * other

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DescExpr.one(other)
        return isinstance(other, DescExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"DescExpr({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), [_sort_key(g) for g in m])):
            c = self.terms[m]
            body = "*".join(str(g) for g in m)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def _lift(x) -> DescExpr:
    return x if isinstance(x, DescExpr) else DescExpr.one(x)


def normal_form(e: DescExpr) -> DescExpr:
    """Canonical form; expressions are kept canonical, so this re-derives it."""
    return DescExpr({m: c for m, c in e.terms.items()})


def ch(m: CohModel, k: int, gamma: CohClass | str, c=1) -> DescExpr:
    """``c * ch_k(gamma)`` expanded by linearity over basis classes."""
    if isinstance(gamma, str):
        if c == 1:
            return _ch_named(m, k, gamma)
        gamma = m.cls(gamma)
    out: dict[Monomial, Fraction] = {}
    for name, v in gamma.items():
        info = m.info(name)
        out[(Gen(k, name, info.degree, info.p),)] = v * c
    return DescExpr(out)


@lru_cache(maxsize=4096)
def _ch_named(m: CohModel, k: int, name: str) -> DescExpr:
    return ch(m, k, m.cls(name))


# ---- presets ---------------------------------------------------------------


@dataclass(frozen=True)
class OperatorPreset:
    """Data distinguishing 3-fold operators from surface operators.

    ``tk_quadratic_source`` is the class whose diagonal pushforward feeds
    the quadratic part of ``T_k``; ``tk_scalar_term`` feeds its linear part.
    """

    shift: int
    tk_quadratic_source: CohClass
    tk_scalar_term: CohClass
    tk_prefactor: Fraction

    def __post_init__(self):
        if self.shift not in (2, 3):
            raise ValueError("shift must be 2 or 3")

    @classmethod
    def threefold(cls, m: CohModel) -> "OperatorPreset":
        return cls(3, m.c(1), m.mul(m.c(1), m.c(2)) / 24, Fraction(-1, 2))

    @classmethod
    def surface(cls, m: CohModel) -> "OperatorPreset":
        c1 = m.c(1)
        return cls(2, m.unit, (m.mul(c1, c1) + m.c(2)) / 12, Fraction(1))

    @classmethod
    def for_model(cls, m: CohModel) -> "OperatorPreset":
        return cls.threefold(m) if m.dim == 3 else cls.surface(m)


def degree(g: Gen, p: OperatorPreset) -> int:
    return g.deg + 2 * g.k - 2 * p.shift


def expr_degree(e: DescExpr, p: OperatorPreset) -> int | None:
    """Common degree of all monomials, or ``None`` if ``e`` is inhomogeneous (or zero)."""
    degs = {sum(degree(g, p) for g in mono) for mono in e.terms}
    return degs.pop() if len(degs) == 1 else None


# ---- basic operations ------------------------------------------------------


def _map_generators(e: DescExpr, f: Callable[[Gen], DescExpr | None]) -> DescExpr:
    """Substitute every generator by ``f(g)`` (``None`` keeps it)."""
    out = DescExpr.zero()
    cache: dict[Gen, DescExpr] = {}
    for mono, c in e.terms.items():
        t = DescExpr.one(c)
        for g in mono:
            if g not in cache:
                r = f(g)
                cache[g] = DescExpr.gen(g) if r is None else r
            t = t * cache[g]
            if t.is_zero():
                break
        out = out + t
    return out


def _derivation(e: DescExpr, f: Callable[[Gen], DescExpr]) -> DescExpr:
    """Extend an even derivation given on generators; no Koszul signs arise."""
    out: dict[Monomial, Fraction] = {}
    cache: dict[Gen, DescExpr] = {}
    for mono, c in e.terms.items():
        for i, g in enumerate(mono):
            if g not in cache:
                cache[g] = f(g)
            dg = cache[g]
            for dm, dc in dg.terms.items():
                sign, key = _canonical(mono[:i] + dm + mono[i + 1:])
                if sign:
                    v = c * dc
                    out[key] = out.get(key, 0) + (v if sign > 0 else -v)
    return DescExpr._trusted(out)


def collapse(e: DescExpr, m: CohModel) -> DescExpr:
    """Replace ``ch_0(g)`` by ``-int g`` and ``ch_1(g)`` by 0."""

    def f(g: Gen):
        if g.k == 0:
            return DescExpr.one(-m.integrate(CohClass.basis(g.cls)))
        if g.k == 1:
            return DescExpr.zero()
        return None

    return _map_generators(e, f)


def _shifted(m: CohModel, g: Gen, k: int, cls: CohClass, strict: bool) -> DescExpr:
    if k < 0:
        if strict:
            raise IndexError(f"ch_{k} is undefined")
        return DescExpr.zero()
    return ch(m, k, cls)


def apply_Rk(
    e: DescExpr,
    k: int,
    m: CohModel,
    p: OperatorPreset,
    twist: CohClass | None = None,
    strict: bool = False,
) -> DescExpr:
    """The derivation ``R_k``; with ``twist`` the operator ``R_{-1}[twist]``.

    Symbols with negative index are zero; ``strict=True`` raises instead.
    """
    if k < -1:
        raise ValueError("R_k needs k >= -1")
    if twist is not None:
        if k != -1:
            raise ValueError("a twist is only defined for k = -1")

        def f(g: Gen) -> DescExpr:
            return _shifted(m, g, g.k - 1, m.mul(twist, CohClass.basis(g.cls)), strict)

        return _derivation(e, f)

    def f(g: Gen) -> DescExpr:
        w = 1
        for j in range(k + 1):
            w *= g.k + g.hp - p.shift + j
        if w == 0:
            return DescExpr.zero()
        if g.k + k < 0:
            if strict:
                raise IndexError(f"ch_{g.k + k} is undefined")
            return DescExpr.zero()
        return DescExpr.gen(g._replace(k=g.k + k), w)

    return _derivation(e, f)


def _fact(n: int) -> int | None:
    return factorial(n) if n >= 0 else None


@lru_cache(maxsize=256)
def tk_element(m: CohModel, k: int, p: OperatorPreset) -> DescExpr:
    if k < -1:
        raise ValueError("T_k needs k >= -1")
    out = DescExpr.zero()
    quad = m.kunneth_pushforward(p.tk_quadratic_source)
    for a in range(k + 3):
        b = k + 2 - a
        for t in quad:
            fa, fb = _fact(a + t.left.p - p.shift), _fact(b + t.right.p - p.shift)
            if fa is None or fb is None:
                continue
            sign = -1 if (t.left.p * t.right.p) % 2 else 1
            w = p.tk_prefactor * sign * fa * fb * t.coeff
            out = out + ch(m, a, t.left.name) * ch(m, b, t.right.name) * w
    lin = m.kunneth_pushforward(p.tk_scalar_term)
    for a in range(k + 1):
        b = k - a
        for t in lin:
            w = factorial(a) * factorial(b) * t.coeff
            out = out + ch(m, a, t.left.name) * ch(m, b, t.right.name) * w
    return out


def apply_Sk(e: DescExpr, k: int, m: CohModel, p: OperatorPreset) -> DescExpr:
    if k < -1:
        raise ValueError("S_k needs k >= -1")
    out = DescExpr.zero()
    for t in m.kunneth_diagonal():
        if t.left.p != 0:
            continue
        inner = ch(m, k + 1, t.right.name) * e
        out = out + apply_Rk(inner, -1, m, p, twist=CohClass.basis(t.left.name)) * t.coeff
    return out * factorial(k + 1)


def apply_Lk(e: DescExpr, k: int, m: CohModel, p: OperatorPreset | None = None) -> DescExpr:
    p = p or OperatorPreset.for_model(m)
    return apply_Rk(e, k, m, p) + tk_element(m, k, p) * e + apply_Sk(e, k, m, p)


def reduction_rewrite(
    e: DescExpr,
    m: CohModel,
    beta_pairing: Mapping[str, object],
    n: int,
    d_beta,
) -> DescExpr:
    """Apply the string, divisor and dilaton rewrites to a collapsed expression.

    ``ch_2(g)`` vanishes for ``g`` of type ``(p,0)`` or ``(0,q)``;
    ``ch_2(d)`` becomes ``beta_pairing[d]`` for ``d`` of degree 2;
    ``ch_3(1)`` becomes ``n - d_beta/2``.
    """
    unit = next(iter(m.unit.coords)) if len(m.unit.coords) == 1 else None

    def f(g: Gen):
        if g.k == 2:
            if g.hp == 0 or g.hp == g.deg:
                return DescExpr.zero()
            if g.deg == 2:
                return DescExpr.one(Fraction(beta_pairing.get(g.cls, 0)))
        if g.k == 3 and g.cls == unit:
            return DescExpr.one(n - Fraction(d_beta) / 2)
        return None

    return _map_generators(e, f)
