"""Stable pairs on a cubic 3-fold in the class of a line.

The moduli space ``P_{n+1}`` is the projective bundle ``L^[n] = P(Sym^n S)``
over the Fano surface of lines ``F``.  Its cohomology is generated over
``H*(F)`` by ``zeta``; on ``F`` we only need ``c1, c2`` of the tautological
bundle and the classes ``phi(g)`` of odd cubic classes ``g``.

:class:`LnClass` is a class on ``L^[n]`` written as a combination of
``c1^a c2^b zeta^z phi(g_1)...phi(g_r)``.  Anything of degree above 4 on
``F`` is dropped as soon as it appears.  Integration pushes powers of
``zeta`` down to Segre classes and then integrates over ``F`` with

* ``int c1^2 = 45``, ``int c2 = 27``,
* ``int c1 phi(g) phi(g') = 6 P(g, g')``,
* ``int phi(g1) phi(g2) phi(g3) phi(g4) = P12 P34 + P14 P23 + P13 P42``,

where ``P(g, g') = int_X g g'``.  The result is a :class:`PairingPoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .cherncalc import (
    GradedElt,
    GradedRing,
    cubic_fano_ring,
    fano_integrals,
    segre_pushforward,
    symmetric_reduce,
    todd_quotient_cubic,
)
from .cohmodel import BasisClass, CohClass, CohModel, ModelSpec, build_model
from .descalg import DescExpr, Gen, OperatorPreset, apply_Lk
from .exact import QSeries, RatFn, functional_equation_residual, reconstruct_rational, rf_series

__all__ = [
    "FanoModel",
    "PairingPoly",
    "LnClass",
    "build_cubic_models",
    "cubic_model",
    "descendent_class",
    "virtual_class",
    "virtual_class_closed",
    "integrate_ln",
    "bracket",
    "partition_function",
    "virasoro_residual_cubic",
    "cubic_menu",
    "TABLE",
    "TableRow",
]

D_BETA = 2
FORMAL_ODD = 8


# ---- the cubic itself -------------------------------------------------------


def _cubic_spec() -> ModelSpec:
    basis = [
        BasisClass("1", 0, 0, 0),
        BasisClass("H", 2, 1, 1),
        BasisClass("L", 4, 2, 2),
        BasisClass("p", 6, 3, 3),
    ]
    basis += [BasisClass(f"a{i}", 3, 2, 1) for i in range(1, 6)]
    basis += [BasisClass(f"b{i}", 3, 1, 2) for i in range(1, 6)]
    products = {("H", "H"): {"L": 3}, ("H", "L"): {"p": 1}}
    for i in range(1, 6):
        products[(f"a{i}", f"b{i}")] = {"p": 1}
    # formal odd classes alternate between the two Hodge types
    formal = {
        f"g{i}": (3, 1, 2) if i % 2 else (3, 2, 1) for i in range(1, FORMAL_ODD + 1)
    }
    return ModelSpec(
        dim=3,
        basis=basis,
        products=products,
        integrals={"p": 1},
        chern={1: {"H": 2}, 2: {"L": 12}, 3: {"p": -6}},
        point={"p": 1},
        unit="1",
        symbols={"H2": {"L": 3}, "H3": {"p": 3}},
        formal=formal,
        name="cubic",
    )


@lru_cache(maxsize=None)
def cubic_model() -> CohModel:
    return build_model(_cubic_spec())


# X classes as polynomials in H (needed for the GRR product on X x F)
_H_POWER = {"1": (1, 0), "H": (1, 1), "L": (Fraction(1, 3), 2), "p": (Fraction(1, 3), 3)}


@dataclass(frozen=True)
class FanoModel:
    """Integration data on the Fano surface, derived from the Grassmannian."""

    c1sq: Fraction
    c2: Fraction
    c1_phi_phi: Fraction = Fraction(6)


@lru_cache(maxsize=None)
def _fano() -> FanoModel:
    ints = fano_integrals()
    f = FanoModel(ints["c1^2"], ints["c2"])
    assert (f.c1sq, f.c2) == (45, 27), "Fano integrals disagree with 45 and 27"
    return f


def build_cubic_models() -> tuple[CohModel, FanoModel]:
    return cubic_model(), _fano()


# ---- pairing polynomials ----------------------------------------------------

Pair = tuple[str, str]


def _same_hodge_type(m: CohModel, i: str, j: str) -> bool:
    # int g g' over X needs total type (3, 3); two classes of type (1, 2) pair to zero
    try:
        return m.info(i).p == m.info(j).p
    except KeyError:
        return False


class PairingPoly:
    """Polynomial in antisymmetric symbols ``P(i, j) = int_X g_i g_j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Pair, ...], object] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c) -> "PairingPoly":
        return cls({(): c})

    @classmethod
    def pair(cls, i: str, j: str) -> "PairingPoly":
        m = cubic_model()
        if i in m.by_name and j in m.by_name:
            return cls.const(m.pairing(CohClass.basis(i), CohClass.basis(j)))
        if i == j or _same_hodge_type(m, i, j):
            return cls()
        return cls({((i, j),): 1}) if i < j else cls({((j, i),): -1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> "PairingPoly":
        if not isinstance(other, PairingPoly):
            other = PairingPoly.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return PairingPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "PairingPoly":
        return PairingPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "PairingPoly":
        return self + (-other)

    def __mul__(self, other) -> "PairingPoly":
        if not isinstance(other, PairingPoly):
            return PairingPoly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(sorted(ka + kb))
                out[k] = out.get(k, 0) + va * vb
        return PairingPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairingPoly):
            other = PairingPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def scalar(self) -> Fraction:
        if any(k for k in self.terms):
            raise ValueError(f"{self} is not a scalar")
        return self.terms.get((), Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            mono = "*".join(f"P({i},{j})" for i, j in k)
            v = self.terms[k]
            parts.append(str(v) if not mono else (mono if v == 1 else f"{v}*{mono}"))
        return " + ".join(parts)


# ---- classes on L^[n] ------------------------------------------------------

Key = tuple[int, int, int, tuple[str, ...]]


def _sort_odd(labels: tuple[str, ...]) -> tuple[int, tuple[str, ...]]:
    seq = list(labels)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    if len(set(seq)) != len(seq):
        return 0, ()
    return sign, tuple(seq)


def _f_degree(key: Key) -> int:
    a, b, _, phis = key
    return 2 * a + 4 * b + len(phis)


class LnClass:
    """Class on ``L^[n]``; keys are ``(a, b, z, phis)`` for ``c1^a c2^b zeta^z phi(phis)``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Key, object] | None = None):
        self.n = n
        out: dict[Key, Fraction] = {}
        for (a, b, z, phis), c in (terms or {}).items():
            sign, phis = _sort_odd(tuple(phis))
            key = (a, b, z, phis)
            if sign == 0 or c == 0 or _f_degree(key) > 4 or self.real_degree(key) > 2 * (n + 2):
                continue
            out[key] = out.get(key, 0) + sign * Fraction(c)
        self.terms = {k: v for k, v in out.items() if v != 0}

    @staticmethod
    def real_degree(key: Key) -> int:
        return _f_degree(key) + 2 * key[2]

    @classmethod
    def const(cls, n: int, c) -> "LnClass":
        return cls(n, {(0, 0, 0, ()): c})

    @classmethod
    def phi(cls, n: int, label: str, c=1) -> "LnClass":
        return cls(n, {(0, 0, 0, (label,)): c})

    @classmethod
    def from_fano(cls, n: int, f: GradedElt, z_name: str | None = None) -> "LnClass":
        """Import a polynomial in ``c1, c2`` (and optionally ``zeta``)."""
        r = f.ring
        out = {}
        for m, c in f.terms.items():
            e = dict(zip(r.names, m))
            out[(e.get("c1", 0), e.get("c2", 0), e.get(z_name, 0) if z_name else 0, ())] = c
        return cls(n, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LnClass") -> "LnClass":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LnClass(self.n, out)

    def __neg__(self) -> "LnClass":
        return LnClass(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LnClass") -> "LnClass":
        return self + (-other)

    def __mul__(self, other) -> "LnClass":
        if not isinstance(other, LnClass):
            return LnClass(self.n, {k: v * other for k, v in self.terms.items()})
        out: dict[Key, Fraction] = {}
        for (a1, b1, z1, p1), v1 in self.terms.items():
            for (a2, b2, z2, p2), v2 in other.terms.items():
                key = (a1 + a2, b1 + b2, z1 + z2, p1 + p2)
                if _f_degree(key) > 4:
                    continue
                out[key] = out.get(key, 0) + v1 * v2
        return LnClass(self.n, out)

    __rmul__ = __mul__

    def part(self, real_degree: int) -> "LnClass":
        return LnClass(self.n, {k: v for k, v in self.terms.items() if self.real_degree(k) == real_degree})

    def exp(self) -> "LnClass":
        out = term = LnClass.const(self.n, 1)
        for j in range(1, self.n + 4):
            term = term * self * Fraction(1, j)
            if term.is_zero():
                break
            out = out + term
        return out

    def reduce_zeta(self) -> "LnClass":
        """Rewrite ``zeta^{n+1} = -c1(Sym^n S) zeta^n - c2(Sym^n S) zeta^{n-1}`` repeatedly."""
        n = self.n
        c1s, c2s = sym_chern_ln(n)
        out = LnClass(n)
        todo = dict(self.terms)
        while todo:
            key, v = todo.popitem()
            a, b, z, phis = key
            if z <= n:
                out = out + LnClass(n, {key: v})
                continue
            rest = LnClass(n, {(a, b, z - n - 1, phis): v})
            zn = LnClass(n, {(0, 0, n, ()): 1})
            zn1 = LnClass(n, {(0, 0, n - 1, ()): 1})
            for k2, v2 in (rest * (-(c1s * zn) - c2s * zn1)).terms.items():
                todo[k2] = todo.get(k2, 0) + v2
                if todo[k2] == 0:
                    del todo[k2]
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LnClass) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, z, phis), v in sorted(self.terms.items()):
            fs = [f"c1^{a}" if a > 1 else "c1"] if a else []
            fs += [f"c2^{b}" if b > 1 else "c2"] if b else []
            fs += [f"z^{z}" if z > 1 else "z"] if z else []
            fs += [f"phi({g})" for g in phis]
            parts.append(f"{v}*" + "*".join(fs) if fs else str(v))
        return " + ".join(parts)


def sym_chern_ln(n: int) -> tuple[LnClass, LnClass]:
    from .cherncalc import sym_power_chern

    c1s, c2s = sym_power_chern(n)
    return LnClass.from_fano(n, c1s), LnClass.from_fano(n, c2s)


# ---- descendents -------------------------------------------------------------


@lru_cache(maxsize=None)
def _level0_even() -> dict[str, GradedElt]:
    """``ch^0`` of the sheaf part for even basis classes, summed over all k."""
    r = cubic_fano_ring(5)
    H, c1, c2 = r.gens()
    L = H * H / 3 - H * c1 / 3 + (c1 * c1 - c2) / 3
    T = todd_quotient_cubic(5)
    LT = L * T
    out = {}
    for name, (c, e) in _H_POWER.items():
        prod = LT * (H ** e) * c
        top = r.zero()
        for m, v in prod.terms.items():
            if m[0] == 3:
                top = top + r.from_dict({(0, m[1], m[2]): v})
        out[name] = top * 3
    return out


def _level0_total(n: int, gamma: CohClass) -> LnClass:
    m = cubic_model()
    even = _level0_even()
    out = LnClass(n)
    for name, v in gamma.items():
        if m.info(name).odd:
            out = out + (LnClass.phi(n, name) + LnClass(n, {(1, 0, 0, (name,)): Fraction(1, 2)})) * v
        else:
            out = out + LnClass.from_fano(n, even[name]) * v
    return out


@lru_cache(maxsize=None)
def _total_descendent(n: int, name: str) -> LnClass:
    m = cubic_model()
    gamma = CohClass.basis(name)
    if n == 0:
        return _level0_total(0, gamma)
    H = m.cls("H")
    e_nh = m.unit + H * n + m.mul(H, H) * Fraction(n * n, 2) + m.power(H, 3) * Fraction(n ** 3, 6)
    shifted = m.mul(e_nh, gamma)
    x = LnClass(n, {(0, 0, 1, ()): 1, (1, 0, 0, ()): n})
    return x.exp() * _level0_total(n, shifted)


def descendent_class(n: int, k: int, gamma: CohClass | str) -> LnClass:
    """``ch_k(gamma)`` on ``P_{n+1}``; ``ch_0`` and ``ch_1`` are collapsed."""
    m = cubic_model()
    if isinstance(gamma, str):
        gamma = m.cls(gamma)
    out = LnClass(n)
    for name, v in gamma.items():
        info = m.info(name)
        if k == 0:
            out = out + LnClass.const(n, -m.integrate(CohClass.basis(name)) * v)
        elif k >= 2:
            d = 2 * k + info.degree - 6
            if d >= 0:
                out = out + _total_descendent(n, name).part(d) * v
    return out


# ---- virtual class -----------------------------------------------------------


@lru_cache(maxsize=None)
def virtual_class(n: int) -> LnClass:
    """``c_n(Obs)`` as a product over the Chern roots ``al, be`` of ``S``."""
    if n == 0:
        return LnClass.const(0, 1)
    r = GradedRing({"al": 1, "be": 1, "z": 1}, group_caps=[(("al", "be"), 2)])
    al, be, z = r.gens()
    c1 = al + be
    prod = c1 * (-1) ** n
    for j in range(n - 1):
        prod = prod * (z + c1 * n - al * j - be * (n - 2 - j))
    tgt = GradedRing({"c1": 1, "c2": 2, "z": 1}, group_caps=[(("c1", "c2"), 2)])
    red = symmetric_reduce(prod, ["al", "be"], tgt, ["c1", "c2"])
    return LnClass.from_fano(n, red, "z")


def virtual_class_closed(n: int) -> LnClass:
    if n == 0:
        return LnClass.const(0, 1)
    sign = (-1) ** n
    terms = {(1, 0, n - 1, ()): sign}
    if n >= 2:
        terms[(2, 0, n - 2, ())] = sign * Fraction((n + 2) * (n - 1), 2)
    return LnClass(n, terms)


# ---- integration -------------------------------------------------------------


def _integrate_fano(a: int, b: int, phis: tuple[str, ...], c: Fraction) -> PairingPoly:
    f = _fano()
    if 2 * a + 4 * b + len(phis) != 4:
        return PairingPoly()
    if not phis:
        return PairingPoly.const(c * (f.c1sq if a == 2 else f.c2))
    if len(phis) == 2:
        return PairingPoly.pair(*phis) * (f.c1_phi_phi * c)
    g1, g2, g3, g4 = phis
    P = PairingPoly.pair
    return (P(g1, g2) * P(g3, g4) + P(g1, g4) * P(g2, g3) + P(g1, g3) * P(g4, g2)) * c


def integrate_ln(x: LnClass) -> PairingPoly:
    """``int_{L^[n]} x`` via Segre pushforward to ``F`` and the Fano integrals."""
    n = x.n
    out = PairingPoly()
    for (a, b, z, phis), v in x.terms.items():
        j = z - n
        if j < 0 or LnClass.real_degree((a, b, z, phis)) != 2 * (n + 2):
            continue
        s = segre_pushforward(n, j) if n > 0 else _point_segre(j)
        for sm, sc in s.terms.items():
            e = dict(zip(s.ring.names, sm))
            out = out + _integrate_fano(a + e.get("c1", 0), b + e.get("c2", 0), phis, v * sc)
    return out


def _point_segre(j: int) -> GradedElt:
    r = GradedRing({"c1": 1, "c2": 2}, cap=2)
    return r.one() if j == 0 else r.zero()


def realize(n: int, D: DescExpr) -> LnClass:
    """Product of the realized descendents of each monomial of ``D``."""
    out = LnClass(n)
    for mono, c in D.terms.items():
        t = LnClass.const(n, c)
        for g in mono:
            t = t * descendent_class(n, g.k, CohClass.basis(g.cls))
            if t.is_zero():
                break
        out = out + t
    return out


def bracket(n_plus_1: int, D: DescExpr) -> PairingPoly:
    """``<D>_{n+1}``: integral of the realized ``D`` against the virtual class."""
    n = n_plus_1 - 1
    if n < 0:
        raise ValueError("n+1 must be positive")
    return integrate_ln(virtual_class(n) * realize(n, D))


# ---- partition functions -----------------------------------------------------


def series_by_monomial(coeffs: Mapping[int, PairingPoly], order: int) -> dict[tuple, QSeries]:
    """Split ``sum_e coeffs[e] q^e`` into one rational series per pairing monomial."""
    monos = {k for p in coeffs.values() for k in p.terms}
    return {
        mono: QSeries.from_dict({e: p.terms.get(mono, 0) for e, p in coeffs.items()}, order)
        for mono in monos
    }


def partition_function(
    D: DescExpr, n_max: int = 10, bounds: tuple[int, int] = (5, 4)
) -> tuple[dict[int, PairingPoly], dict[tuple, RatFn]]:
    """Brackets ``q^{n+1} <D>_{n+1}`` for ``n <= n_max`` and their rational fits."""
    coeffs = {n + 1: bracket(n + 1, D) for n in range(n_max + 1)}
    fits = {
        mono: reconstruct_rational(s, *bounds)
        for mono, s in series_by_monomial(coeffs, n_max + 1).items()
    }
    return coeffs, fits


def virasoro_residual_cubic(k: int, D: DescExpr, n_max: int = 10) -> dict[int, PairingPoly]:
    """Coefficients of ``sum_n q^{n+1} <L_k D>_{n+1}`` for ``n <= n_max``."""
    m = cubic_model()
    E = apply_Lk(D, k, m, OperatorPreset.threefold(m))
    return {n + 1: bracket(n + 1, E) for n in range(n_max + 1)}


# ---- the table of closed forms -----------------------------------------------


@dataclass(frozen=True)
class TableRow:
    key: str
    insertion: str
    closed_form: RatFn
    pairing: PairingPoly
    parity: int


def _rf(num: Iterable, den: Iterable = (1,)) -> RatFn:
    return RatFn(list(num), list(den))


def _table() -> list[TableRow]:
    P = PairingPoly.pair
    one = PairingPoly.const(1)
    d1 = [1, 1]  # 1 + q
    den = lambda e: _poly_pow(d1, e)
    four = P("g1", "g2") * P("g3", "g4") + P("g1", "g4") * P("g2", "g3") + P("g1", "g3") * P("g4", "g2")
    rows = [
        ("ch4_1*ch4_1", "ch4(1)*ch4(1)", _rf([0, 5, -220, 630, -220, 5], _scale(den(4), 4)), one),
        ("ch4_1*ch3_H", "ch4(1)*ch3(H)", _rf([0, 15, -75, 75, -15], _scale(den(3), 4)), one),
        ("ch4_1*ch2_H2", "ch4(1)*ch2(H2)", _rf([0, -15, 60, -15], _scale(den(2), 2)), one),
        ("ch3_H*ch3_H", "ch3(H)*ch3(H)", _rf([0, Fraction(45, 4)]), one),
        ("ch3_H*ch2_H2", "ch3(H)*ch2(H2)", _rf([0, -45, 45], _scale(den(1), 2)), one),
        ("ch2_H2*ch2_H2", "ch2(H2)*ch2(H2)", _rf([0, 45]), one),
        ("ch5_1", "ch5(1)", _rf([0, 15, -75, 75, -15], _scale(den(3), 4)), one),
        ("ch4_H", "ch4(H)", _rf([0, Fraction(21, 4)]), one),
        ("ch3_H2", "ch3(H2)", _rf([0, -45, 45], _scale(den(1), 2)), one),
        ("ch2_H3", "ch2(H3)", _rf([0, 18]), one),
        ("ch2_g*ch3_g'", "ch2(g1)*ch3(g2)", _rf([0, 3, -3], den(1)), P("g1", "g2")),
        ("ch2_g*ch2_g'*ch4_1", "ch2(g1)*ch2(g2)*ch4(1)", _rf([0, 1, -4, 1], den(2)), P("g1", "g2")),
        ("ch2_g*ch2_g'*ch3_H", "ch2(g1)*ch2(g2)*ch3(H)", _rf([0, 3, -3], den(1)), P("g1", "g2")),
        ("ch2_g*ch2_g'*ch2_H2", "ch2(g1)*ch2(g2)*ch2(H2)", _rf([0, -6]), P("g1", "g2")),
        ("ch2_g1..g4", "ch2(g1)*ch2(g2)*ch2(g3)*ch2(g4)", _rf([0, 1]), four),
    ]
    out = []
    for key, ins, f, pp in rows:
        out.append(TableRow(key, ins, f, pp, _parity(ins)))
    return out


def _poly_pow(p, e):
    out = [Fraction(1)]
    for _ in range(e):
        nxt = [Fraction(0)] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                nxt[i + j] += a * b
        out = nxt
    return out


def _scale(p, c):
    return [x * c for x in p]


def _parity(insertion: str) -> int:
    """Sum of ``k`` over the descendents of an insertion string."""
    total = 0
    for factor in insertion.split("*"):
        total += int(factor[2:factor.index("(")])
    return total


TABLE = _table()


def check_row(row: TableRow, n_max: int = 10) -> dict[str, object]:
    """Evaluate one table row; returns computed pieces and per-check booleans."""
    from .insertions import parse_insertion

    m = cubic_model()
    D = parse_insertion(row.insertion, m)
    coeffs, fits = partition_function(D, n_max)
    expected_series = rf_series(row.closed_form, n_max + 1)
    expected = {
        e: row.pairing * expected_series[e] for e in range(1, n_max + 2)
    }
    series_ok = all(coeffs[e] == expected[e] for e in expected)
    fit_ok = set(fits) == set(row.pairing.terms) and all(
        fits[mono] == row.closed_form * row.pairing.terms[mono] for mono in fits
    )
    fe = functional_equation_residual(row.closed_form, row.parity, D_BETA)
    return {
        "coeffs": coeffs,
        "fits": fits,
        "series_ok": series_ok,
        "fit_ok": fit_ok,
        "functional_equation_ok": fe.is_zero(),
    }


def cubic_menu(target_degree: int, max_even: int = 3) -> list[DescExpr]:
    """Monomials of the given degree used for residual sweeps.

    Even factors are ``ch_k`` of ``1, H, H2, H3`` with ``k >= 2``, at most
    ``max_even`` of them.  Odd factors come as a pair ``ch_a(g1) ch_b(g2)``
    (opposite Hodge types) with at most one even factor, or as the
    four-point ``ch_2(g1) ... ch_2(g4)``.
    """
    from itertools import combinations_with_replacement

    m = cubic_model()
    p = OperatorPreset.threefold(m)

    def gen(k: int, name: str) -> Gen:
        b = m.info(name)
        return Gen(k, name, b.degree, b.p)

    def deg(mono) -> int:
        return sum(b.degree + 2 * g.k - 2 * p.shift for g in mono for b in [m.info(g.cls)])

    even = [gen(k, name) for name in ("1", "H", "L", "p") for k in range(2, 2 + p.shift + 3)]
    out = []
    for r in range(max_even + 1):
        for mono in combinations_with_replacement(even, r):
            if deg(mono) == target_degree:
                out.append(mono)
    for a in range(2, 6):
        for b in range(2, 6):
            for r in range(2):
                for mono in combinations_with_replacement(even, r):
                    full = (gen(a, "g1"), gen(b, "g2")) + mono
                    if deg(full) == target_degree:
                        out.append(full)
    four = tuple(gen(2, f"g{i}") for i in range(1, 5))
    if deg(four) == target_degree:
        out.append(four)
    return [DescExpr({mono: 1}) for mono in out]
