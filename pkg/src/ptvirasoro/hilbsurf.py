"""Descendents on Hilbert schemes of at most one point of a surface.

``S^[0]`` is a point and ``S^[1] = S``.  On ``S^[1]`` the universal
subscheme is the diagonal, so by Grothendieck-Riemann-Roch
``ch_k(g) = [g * td(S)^-1]`` in degree ``|g| + 2k - 4`` for ``k >= 2``.
In both cases ``ch_0(g) = -int g`` and ``ch_1(g) = 0``.

Surfaces with ``H^1 = 0`` are described by a :class:`SurfaceSpec`: Hodge
numbers, the intersection form on ``H^{1,1}``, the pairing between
``H^{2,0}`` and ``H^{0,2}`` and the Chern numbers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .cherncalc import surface_chern_ring, todd_from_chern
from .cohmodel import (
    BasisClass,
    CohClass,
    CohModel,
    ModelSpec,
    ValidationError,
    build_model,
    direct_sum,
)
from .descalg import DescExpr, Gen, OperatorPreset, apply_Lk, apply_Rk, ch, tk_element

__all__ = [
    "SurfaceSpec",
    "load_surface",
    "hilb_descendent",
    "bracket_hilb",
    "disconnected_bracket",
    "virasoro_residual_surface",
    "random_surface_spec",
    "plane_spec",
    "k3_spec",
    "inverse_todd",
    "surface_menu",
]


@dataclass(frozen=True)
class SurfaceSpec:
    name: str
    h20: int
    h11: int
    c1: tuple[Fraction, ...]
    intersection: tuple[tuple[Fraction, ...], ...]
    pairing20_02: tuple[tuple[Fraction, ...], ...]
    c1sq: Fraction
    c2: Fraction
    seed: int | None = field(default=None, compare=False)

    @classmethod
    def make(cls, name, h20, h11, c1, intersection, pairing20_02, c1sq, c2, seed=None):
        fr = lambda rows: tuple(tuple(Fraction(x) for x in r) for r in rows)
        return cls(
            name, int(h20), int(h11), tuple(Fraction(x) for x in c1),
            fr(intersection), fr(pairing20_02), Fraction(c1sq), Fraction(c2), seed,
        )


def plane_spec() -> SurfaceSpec:
    return SurfaceSpec.make("plane", 0, 1, [3], [[1]], [], 9, 3)


def k3_spec() -> SurfaceSpec:
    # U^3 + E8(-1)^2 is the lattice; any unimodular even form of the right
    # signature works for these checks, so a diagonal form stands in.
    q = [[0] * 20 for _ in range(20)]
    for i in range(20):
        q[i][i] = 1 if i < 3 else -1
    return SurfaceSpec.make("k3", 1, 20, [0] * 20, q, [[1]], 0, 24)


def _check_spec(s: SurfaceSpec) -> None:
    if len(s.c1) != s.h11 or len(s.intersection) != s.h11:
        raise ValidationError("shape", "c1 and intersection must have h11 entries")
    if any(len(r) != s.h11 for r in s.intersection):
        raise ValidationError("shape", "intersection matrix is not square")
    if len(s.pairing20_02) != s.h20 or any(len(r) != s.h20 for r in s.pairing20_02):
        raise ValidationError("shape", "pairing20_02 must be h20 x h20")
    q = s.intersection
    for i in range(s.h11):
        for j in range(s.h11):
            if q[i][j] != q[j][i]:
                raise ValidationError("duality", "intersection matrix is not symmetric", (i, j))
    quad = sum(s.c1[i] * q[i][j] * s.c1[j] for i in range(s.h11) for j in range(s.h11))
    if quad != s.c1sq:
        raise ValidationError("chern", f"c1 coordinates give c1^2 = {quad}, spec says {s.c1sq}")
    if (s.c1sq + s.c2) / 12 != 1 + s.h20:
        raise ValidationError("hrr", f"(c1^2+c2)/12 = {(s.c1sq + s.c2) / 12} but 1+h20 = {1 + s.h20}")
    if (5 * s.c2 - s.c1sq) / 6 != s.h11:
        raise ValidationError("hrr", f"(5c2-c1^2)/6 = {(5 * s.c2 - s.c1sq) / 6} but h11 = {s.h11}")


def load_surface(spec: SurfaceSpec) -> CohModel:
    _check_spec(spec)
    basis = [BasisClass("1", 0, 0, 0)]
    basis += [BasisClass(f"h{i + 1}", 2, 1, 1) for i in range(spec.h11)]
    basis += [BasisClass(f"u{i + 1}", 2, 2, 0) for i in range(spec.h20)]
    basis += [BasisClass(f"v{i + 1}", 2, 0, 2) for i in range(spec.h20)]
    basis.append(BasisClass("p", 4, 2, 2))
    products = {}
    for i in range(spec.h11):
        for j in range(spec.h11):
            products[(f"h{i + 1}", f"h{j + 1}")] = {"p": spec.intersection[i][j]}
    for i in range(spec.h20):
        for j in range(spec.h20):
            products[(f"u{i + 1}", f"v{j + 1}")] = {"p": spec.pairing20_02[i][j]}
    c1 = {f"h{i + 1}": x for i, x in enumerate(spec.c1)}
    m = build_model(
        ModelSpec(
            dim=2, basis=basis, products=products, integrals={"p": 1},
            chern={1: c1, 2: {"p": spec.c2}}, point={"p": 1}, unit="1", name=spec.name,
        )
    )
    report = m.hrr_report()
    if not report.passed:
        raise ValidationError("hrr", str(report))
    return m


def random_surface_spec(rng: random.Random, name: str | None = None) -> SurfaceSpec:
    """A random spec satisfying both HRR constraints by construction."""
    h20 = rng.randint(0, 2)
    h11 = rng.randint(1, 4)
    c2 = 2 + 2 * h20 + h11
    c1sq = 10 + 10 * h20 - h11
    while True:
        q = [[0] * h11 for _ in range(h11)]
        for i in range(h11):
            for j in range(i, h11):
                q[i][j] = q[j][i] = rng.randint(-2, 2) if i != j else rng.choice([-1, 1, 2])
        x = [rng.randint(-2, 2) for _ in range(h11)]
        j = rng.randrange(h11)
        x[j] = rng.choice([-1, 1])
        rest = sum(x[a] * q[a][b] * x[b] for a in range(h11) for b in range(h11)) - q[j][j]
        q[j][j] = c1sq - rest
        pair = [[rng.randint(-2, 2) for _ in range(h20)] for _ in range(h20)]
        if _det(q) != 0 and _det(pair) != 0:
            break
    return SurfaceSpec.make(name or f"random-{h20}-{h11}", h20, h11, x, q, pair, c1sq, c2)


def _det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in r] for r in a]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return d


# ---- realization -------------------------------------------------------------


@lru_cache(maxsize=None)
def _inverse_todd_poly():
    r = surface_chern_ring()
    c1, c2 = r.gens()
    td = todd_from_chern(2, [r.one(), c1, c2], 2)
    return td.inverse()


def inverse_todd(m: CohModel) -> CohClass:
    """``td(T_S)^-1`` as a class on ``S``."""
    poly = _inverse_todd_poly()
    out = CohClass()
    c1, c2 = m.c(1), m.c(2)
    for (a, b), v in poly.terms.items():
        out = out + m.prod(*([c1] * a + [c2] * b)) * v
    return out


@lru_cache(maxsize=None)
def _hilb1(m: CohModel, k: int, name: str) -> CohClass:
    info = m.info(name)
    g = CohClass.basis(name)
    if k == 0:
        return m.unit * -m.integrate(g)
    if k == 1:
        return CohClass()
    d = info.degree + 2 * k - 4
    return m.homogeneous_parts(m.mul(g, inverse_todd(m))).get(d, CohClass())


def hilb_descendent(n: int, k: int, gamma: CohClass, m: CohModel):
    """``ch_k(gamma)`` on ``S^[n]``: a scalar for ``n = 0``, a class on ``S`` for ``n = 1``."""
    if n == 0:
        return -m.integrate(gamma) if k == 0 else Fraction(0)
    if n == 1:
        out = CohClass()
        for name, v in gamma.items():
            out = out + _hilb1(m, k, name) * v
        return out
    raise ValueError("only n = 0 and n = 1 are supported")


def realize_hilb(n: int, D: DescExpr, m: CohModel):
    """Image of ``D`` in ``H*(S^[n])``: a scalar for ``n = 0``, a class for ``n = 1``."""
    if n == 0:
        total = Fraction(0)
        for mono, c in D.terms.items():
            t = c
            for g in mono:
                t *= hilb_descendent(0, g.k, CohClass.basis(g.cls), m)
                if t == 0:
                    break
            total += t
        return total
    if n == 1:
        total = CohClass()
        for mono, c in D.terms.items():
            cls = m.unit * c
            for g in mono:
                cls = m.mul(cls, _hilb1(m, g.k, g.cls))
                if cls.is_zero():
                    break
            total = total + cls
        return total
    raise ValueError("only n = 0 and n = 1 are supported")


def bracket_hilb(n: int, D: DescExpr, m: CohModel) -> Fraction:
    """``<D>`` on ``S^[n]`` for ``n`` in ``{0, 1}``."""
    x = realize_hilb(n, D, m)
    return x if n == 0 else m.integrate(x)


def disconnected_bracket(parts: Sequence[tuple[CohModel, DescExpr]], n: int) -> Fraction:
    """Sum over ways of distributing ``n`` points (at most one per part)."""
    total = Fraction(0)

    def rec(i: int, left: int, acc: Fraction):
        nonlocal total
        if i == len(parts):
            if left == 0:
                total += acc
            return
        m, D = parts[i]
        for ni in (0, 1):
            if ni <= left:
                v = bracket_hilb(ni, D, m)
                if v:
                    rec(i + 1, left - ni, acc * v)

    rec(0, n, Fraction(1))
    return total


def relabel(D: DescExpr, prefix: str, m: CohModel) -> DescExpr:
    """Move an expression on one part onto a direct-sum model with prefixed names."""
    out = {}
    for mono, c in D.terms.items():
        out[tuple(Gen(g.k, prefix + g.cls, g.deg, g.hp) for g in mono)] = c
    return DescExpr(out)


@lru_cache(maxsize=None)
def _real_gen(m: CohModel, n: int, k: int, name: str):
    if k < 0:
        return Fraction(0) if n == 0 else CohClass()
    return realize_hilb(n, ch(m, k, CohClass.basis(name)), m)


def _real_cls(m: CohModel, n: int, k: int, cls: CohClass):
    out = Fraction(0) if n == 0 else CohClass()
    for name, c in cls.coords.items():
        out = out + _real_gen(m, n, k, name) * c
    return out


@lru_cache(maxsize=None)
def _real_rk_gen(m: CohModel, n: int, k: int, g: Gen):
    return realize_hilb(n, apply_Rk(DescExpr.gen(g), k, m, _surface_preset(m)), m)


def _s_terms(m: CohModel):
    return [
        (t.coeff, CohClass.basis(t.left.name), CohClass.basis(t.right.name))
        for t in m.kunneth_diagonal() if t.left.p == 0
    ]


@lru_cache(maxsize=None)
def _real_s_const(m: CohModel, n: int, k: int):
    """Image of ``sum c ch_k(L R)`` over the diagonal terms with ``L`` of type (0, *)."""
    out = Fraction(0) if n == 0 else CohClass()
    for coeff, left, right in _s_terms(m):
        out = out + _real_cls(m, n, k, m.mul(left, right)) * coeff
    return out


@lru_cache(maxsize=None)
def _real_s_gen(m: CohModel, n: int, k: int, gk: int, name: str):
    """Image of ``sum c ch_{k+1}(R) ch_{gk-1}(L gamma)``."""
    mul = (lambda x, y: x * y) if n == 0 else m.mul
    out = Fraction(0) if n == 0 else CohClass()
    if gk < 1:
        return out
    for coeff, left, right in _s_terms(m):
        lo = _real_cls(m, n, gk - 1, m.mul(left, CohClass.basis(name)))
        out = out + mul(_real_cls(m, n, k + 1, right), lo) * coeff
    return out


def virasoro_residual_surface(k: int, D: DescExpr, n: int, m: CohModel) -> Fraction:
    """``<L_k D>`` on ``S^[n]``, evaluated generator by generator.

    Realization is a ring map and ``R_k``, ``R_{-1}[a]`` are derivations, so
    the image of ``L_k D`` only needs the images of single generators.  All
    classes of a surface with ``H^1 = 0`` are even, so no signs appear.
    :func:`virasoro_residual_surface_direct` builds ``L_k D`` explicitly.
    """
    if n not in (0, 1):
        raise ValueError("only n = 0 and n = 1 are supported")
    mul = (lambda x, y: x * y) if n == 0 else m.mul
    one = Fraction(1) if n == 0 else m.unit

    def prod(xs):
        out = one
        for x in xs:
            out = mul(out, x)
        return out

    fact = factorial(k + 1)
    t_real = _realized_tk(m, k, n)
    total = Fraction(0) if n == 0 else CohClass()
    for mono, c in D.terms.items():
        gs = [_real_gen(m, n, g.k, g.cls) for g in mono]
        rest = [prod(gs[:i] + gs[i + 1:]) for i in range(len(gs))]
        acc = mul(t_real + _real_s_const(m, n, k) * fact, prod(gs))
        for i, g in enumerate(mono):
            acc = acc + mul(_real_rk_gen(m, n, k, g), rest[i])
            acc = acc + mul(_real_s_gen(m, n, k, g.k, g.cls), rest[i]) * fact
        total = total + acc * c
    return total if n == 0 else m.integrate(total)


def virasoro_residual_surface_direct(k: int, D: DescExpr, n: int, m: CohModel) -> Fraction:
    """Same as :func:`virasoro_residual_surface`, via the full ``L_k D`` expression."""
    return bracket_hilb(n, apply_Lk(D, k, m, _surface_preset(m)), m)


@lru_cache(maxsize=None)
def _realized_tk(m: CohModel, k: int, n: int):
    return realize_hilb(n, tk_element(m, k, _surface_preset(m)), m)


@lru_cache(maxsize=None)
def _surface_preset(m: CohModel) -> OperatorPreset:
    return OperatorPreset.surface(m)


def surface_menu(m: CohModel, max_k: int = 6) -> list[Gen]:
    """Generators ``ch_k`` of ``1, h1, p, u1, v1`` (those present) for ``k <= max_k``."""
    names = [x for x in ("1", "h1", "p", "u1", "v1") if x in m.by_name]
    return [
        Gen(k, x, m.by_name[x].degree, m.by_name[x].p) for x in names for k in range(max_k + 1)
    ]


def disjoint_union(m1: CohModel, m2: CohModel) -> CohModel:
    return direct_sum([("A.", m1), ("B.", m2)], name=f"{m1.name}+{m2.name}")
