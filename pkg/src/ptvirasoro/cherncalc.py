"""Characteristic classes in truncated polynomial rings.

Everything here works in :class:`GradedRing`, a commutative polynomial ring
over the rationals whose generators carry an *algebraic* (complex) degree.
Rings drop monomials eagerly according to caps: a total degree cap, caps on
the degree in groups of generators (e.g. classes pulled back from a surface
vanish above degree 2) and per-generator exponent caps (``H**4 = 0`` on a
3-fold).  Optional rewriting rules replace a monomial by a lower-order
combination, as in a projective bundle relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GradedRing",
    "GradedElt",
    "RootBundle",
    "DegreeOverflow",
    "todd_coefficients",
    "todd_series",
    "todd_from_chern",
    "chern_from_roots",
    "symmetric_reduce",
    "sym_power_chern",
    "segre_pushforward",
    "segre_from_chern",
    "todd_quotient_cubic",
    "grassmannian_g14_integrals",
    "fano_class_in_grassmannian",
]

Monomial = tuple[int, ...]


class DegreeOverflow(ValueError):
    pass


class GradedRing:
    """Truncated commutative polynomial ring.

    ``gens`` maps generator names to algebraic degrees.  ``cap`` bounds the
    total degree, ``group_caps`` is a list of ``(names, cap)`` bounding the
    degree in a subset of generators and ``exp_caps`` bounds single exponents.
    ``rules`` maps a monomial (as ``{name: exp}``) to its replacement
    (as ``{monomial-dict-tuple: coeff}``), applied whenever the lead
    monomial divides a term.
    """

    def __init__(
        self,
        gens: Mapping[str, int],
        cap: int | None = None,
        group_caps: Iterable[tuple[Sequence[str], int]] = (),
        exp_caps: Mapping[str, int] | None = None,
    ):
        self.names = tuple(gens)
        self.weights = tuple(gens[n] for n in self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.cap = cap
        self.group_caps = [
            (tuple(self.index[n] for n in names), c) for names, c in group_caps
        ]
        self.exp_caps = {self.index[n]: c for n, c in (exp_caps or {}).items()}
        self.rules: list[tuple[Monomial, dict[Monomial, Fraction]]] = []

    @property
    def signature(self) -> tuple:
        return (self.names, self.weights, self.cap, tuple(self.group_caps),
                tuple(sorted(self.exp_caps.items())), repr(self.rules))

    def add_rule(self, lead: Mapping[str, int], repl: "GradedElt") -> None:
        self.rules.append((self.mono(lead), dict(repl.terms)))

    def mono(self, exps: Mapping[str, int]) -> Monomial:
        m = [0] * len(self.names)
        for n, e in exps.items():
            m[self.index[n]] = e
        return tuple(m)

    def degree(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def alive(self, m: Monomial) -> bool:
        if self.cap is not None and self.degree(m) > self.cap:
            return False
        for idx, c in self.group_caps:
            if sum(self.weights[i] * m[i] for i in idx) > c:
                return False
        for i, c in self.exp_caps.items():
            if m[i] > c:
                return False
        return True

    # constructors
    def zero(self) -> "GradedElt":
        return GradedElt(self, {})

    def one(self) -> "GradedElt":
        return self.const(1)

    def const(self, c) -> "GradedElt":
        return GradedElt(self, {(0,) * len(self.names): Fraction(c)})

    def gen(self, name: str) -> "GradedElt":
        return GradedElt(self, {self.mono({name: 1}): Fraction(1)})

    def gens(self) -> list["GradedElt"]:
        return [self.gen(n) for n in self.names]

    def from_dict(self, d: Mapping[Monomial | tuple, object]) -> "GradedElt":
        return GradedElt(self, {tuple(k): Fraction(v) for k, v in d.items()})

    def _normalize(self, terms: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        out: dict[Monomial, Fraction] = {}
        todo = list(terms.items())
        while todo:
            m, c = todo.pop()
            if c == 0 or not self.alive(m):
                continue
            for lead, repl in self.rules:
                if all(a >= b for a, b in zip(m, lead)):
                    rest = tuple(a - b for a, b in zip(m, lead))
                    for rm, rc in repl.items():
                        todo.append((tuple(a + b for a, b in zip(rest, rm)), c * rc))
                    break
            else:
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c != 0}


class GradedElt:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = ring._normalize(dict(terms))

    def _lift(self, other) -> "GradedElt":
        if isinstance(other, GradedElt):
            if other.ring is not self.ring and other.ring.signature != self.ring.signature:
                raise ValueError("elements live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "GradedElt":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GradedElt(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "GradedElt":
        return GradedElt(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GradedElt":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "GradedElt":
        return self._lift(other) - self

    def __mul__(self, other) -> "GradedElt":
        if not isinstance(other, GradedElt):
            c = Fraction(other)
            return GradedElt(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._lift(other)
        out: dict[Monomial, Fraction] = {}
        r = self.ring
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(a + b for a, b in zip(ma, mb))
                if r.alive(m):
                    out[m] = out.get(m, 0) + ca * cb
        return GradedElt(r, out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "GradedElt":
        return self * (1 / Fraction(c))

    def __pow__(self, e: int) -> "GradedElt":
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElt):
            other = self.ring.const(other) if isinstance(other, (int, Fraction)) else None
            if other is None:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> Fraction:
        return self.terms.get((0,) * len(self.ring.names), Fraction(0))

    def coeff(self, **exps: int) -> Fraction:
        return self.terms.get(self.ring.mono(exps), Fraction(0))

    def part(self, d: int) -> "GradedElt":
        return GradedElt(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree(m) == d})

    def max_degree(self) -> int:
        return max((self.ring.degree(m) for m in self.terms), default=0)

    def subs(self, target: GradedRing, images: Mapping[str, "GradedElt"]) -> "GradedElt":
        """Ring map sending each generator to ``images[name]`` (default: same name)."""
        out = target.zero()
        cache: dict[tuple[int, int], GradedElt] = {}
        for m, c in self.terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    name = self.ring.names[i]
                    key = (i, e)
                    if key not in cache:
                        img = images[name] if name in images else target.gen(name)
                        cache[key] = img ** e
                    t = t * cache[key]
            out = out + t
        return out

    def inverse(self) -> "GradedElt":
        """Inverse of an element with invertible constant term (truncated)."""
        c0 = self.constant()
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero")
        nil = self / c0 - 1
        out, term = self.ring.one(), self.ring.one()
        for _ in range(self._nil_bound()):
            term = -term * nil
            if term.is_zero():
                break
            out = out + term
        return out / c0

    def exp(self) -> "GradedElt":
        if self.constant() != 0:
            raise ValueError("exp needs a nilpotent argument")
        out, term = self.ring.one(), self.ring.one()
        for j in range(1, self._nil_bound() + 1):
            term = term * self / j
            if term.is_zero():
                break
            out = out + term
        return out

    def _nil_bound(self) -> int:
        r = self.ring
        if r.cap is not None:
            return r.cap + 1
        bound = sum((c // min(r.weights[i] for i in idx)) for idx, c in r.group_caps)
        bound += sum(r.exp_caps.values())
        return max(bound, 1) + 1

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (self.ring.degree(m), m)):
            c = self.terms[m]
            mon = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e
            )
            parts.append(f"{c}" if not mon else (mon if c == 1 else f"{c}*{mon}"))
        return " + ".join(parts)


# ---- Todd / Chern ---------------------------------------------------------


@lru_cache(maxsize=None)
def todd_coefficients(order: int) -> tuple[Fraction, ...]:
    """Coefficients of x/(1-e^{-x}) through x**order."""
    # (1 - e^{-x})/x = sum (-1)^m x^m/(m+1)!
    g = [Fraction((-1) ** m, factorial(m + 1)) for m in range(order + 1)]
    inv = [Fraction(1)]
    for m in range(1, order + 1):
        inv.append(-sum(g[j] * inv[m - j] for j in range(1, m + 1)))
    return tuple(inv)


@lru_cache(maxsize=None)
def _log_todd_coefficients(order: int) -> tuple[Fraction, ...]:
    # log of x/(1-e^{-x}) = x/2 + sum_{m>=2} ... ; computed from the power series
    f = todd_coefficients(order)
    # log(1+u) with u = f - 1; derivative route: (log f)' = f'/f
    fp = [f[m + 1] * (m + 1) for m in range(order)]
    inv = [Fraction(1)]
    for m in range(1, order + 1):
        inv.append(-sum(f[j] * inv[m - j] for j in range(1, m + 1)))
    out = [Fraction(0)]
    for m in range(1, order + 1):
        out.append(sum(fp[j] * inv[m - 1 - j] for j in range(m)) / m)
    return tuple(out)


@dataclass(frozen=True)
class RootBundle:
    """A bundle given by Chern roots, each an element of an ambient ring."""

    roots: tuple[GradedElt, ...]

    @property
    def rank(self) -> int:
        return len(self.roots)


def _series_at(coeffs: Sequence[Fraction], x: GradedElt, order: int) -> GradedElt:
    out, power = x.ring.zero(), x.ring.one()
    for m in range(order + 1):
        out = out + power * coeffs[m]
        power = power * x
        if power.is_zero():
            break
    return out


def _truncate(x: GradedElt, order: int) -> GradedElt:
    return GradedElt(x.ring, {m: c for m, c in x.terms.items() if x.ring.degree(m) <= order})


def todd_series(b: RootBundle, order: int, ring: GradedRing | None = None) -> GradedElt:
    """Product of x/(1-e^{-x}) over the roots, through algebraic degree ``order``."""
    if ring is None:
        if not b.roots:
            raise ValueError("pass the ambient ring for a bundle without roots")
        ring = b.roots[0].ring
    if ring.cap is not None and order > ring.cap:
        raise DegreeOverflow(f"order {order} exceeds the ring cap {ring.cap}")
    coeffs = todd_coefficients(order)
    out = ring.one()
    for r in b.roots:
        out = _truncate(out * _series_at(coeffs, r, order), order)
    return out


def chern_from_roots(b: RootBundle, ring: GradedRing | None = None) -> list[GradedElt]:
    """Elementary symmetric functions ``[e_0, e_1, ..., e_rank]`` of the roots."""
    ring = ring or b.roots[0].ring
    e = [ring.one()] + [ring.zero()] * b.rank
    for r in b.roots:
        for i in range(b.rank, 0, -1):
            e[i] = e[i] + e[i - 1] * r
    return e


def power_sums(rank: int, chern: Sequence[GradedElt], order: int) -> list[GradedElt]:
    """Newton's identities: power sums ``p_0..p_order`` from ``chern = [1, c1, c2, ...]``."""
    ring = chern[0].ring
    e = lambda i: chern[i] if i < len(chern) else ring.zero()
    p = [ring.const(rank)]
    for m in range(1, order + 1):
        s = e(m) * ((-1) ** (m - 1) * m)
        for i in range(1, m):
            s = s + e(i) * p[m - i] * ((-1) ** (i - 1))
        p.append(s)
    return p


def todd_from_chern(rank: int, chern: Sequence[GradedElt], order: int) -> GradedElt:
    """Todd class from Chern classes via power sums: ``exp(sum a_m p_m)``."""
    a = _log_todd_coefficients(order)
    p = power_sums(rank, chern, order)
    ring = chern[0].ring
    s = ring.zero()
    for m in range(1, order + 1):
        s = s + p[m] * a[m]
    return _truncate(s.exp(), order)


def symmetric_reduce(
    f: GradedElt, roots: Sequence[str], target: GradedRing, e_names: Sequence[str]
) -> GradedElt:
    """Rewrite a polynomial symmetric in ``roots`` via elementary symmetric functions.

    Other generators of ``f.ring`` are carried over by name.  Raises
    ``ValueError`` if ``f`` is not symmetric.
    """
    src = f.ring
    ridx = [src.index[r] for r in roots]
    others = [i for i in range(len(src.names)) if i not in ridx]
    k = len(roots)
    # e_i(roots) in the source ring, without truncation issues: built directly
    free = GradedRing({n: src.weights[src.index[n]] for n in roots})
    e_src = chern_from_roots(RootBundle(tuple(free.gens())), free)
    work = {m: c for m, c in f.terms.items()}
    out = target.zero()
    while work:
        # lead monomial in the roots: lex-largest root exponent vector
        m = max(work, key=lambda m: tuple(m[i] for i in ridx))
        c = work[m]
        a = [m[i] for i in ridx]
        if any(a[i] < a[i + 1] for i in range(k - 1)):
            raise ValueError("polynomial is not symmetric in the given roots")
        diffs = [a[i] - (a[i + 1] if i + 1 < k else 0) for i in range(k)]
        rest = {src.names[i]: m[i] for i in others if m[i]}
        # target term c * prod e_i^{diffs} * rest
        t = target.const(c)
        for i, d in enumerate(diffs):
            if d:
                t = t * target.gen(e_names[i]) ** d
        for n, e in rest.items():
            t = t * target.gen(n) ** e
        out = out + t
        # subtract the same product expanded in roots (untruncated)
        prod = free.one()
        for i, d in enumerate(diffs):
            prod = prod * e_src[i + 1] ** d
        for pm, pc in prod.terms.items():
            full = list(m)
            for j, i in enumerate(ridx):
                full[i] = pm[j]
            for i in others:
                full[i] = m[i]
            key = tuple(full)
            work[key] = work.get(key, 0) - c * pc
            if work[key] == 0:
                del work[key]
    return out


@lru_cache(maxsize=None)
def surface_chern_ring(cap: int = 2) -> GradedRing:
    """``Q[c1, c2]`` of a rank-2 bundle on a surface (algebraic degree <= cap)."""
    return GradedRing({"c1": 1, "c2": 2}, cap=cap)


@lru_cache(maxsize=None)
def sym_power_chern(n: int) -> tuple[GradedElt, GradedElt]:
    """``(c1, c2)`` of ``Sym^n S`` for rank-2 ``S`` over a surface."""
    if n < 1:
        raise ValueError("n must be positive")
    roots_ring = GradedRing({"a": 1, "b": 1}, cap=2)
    a, b = roots_ring.gens()
    e = chern_from_roots(RootBundle(tuple(a * j + b * (n - j) for j in range(n + 1))))
    tgt = surface_chern_ring()
    return (
        symmetric_reduce(e[1], ["a", "b"], tgt, ["c1", "c2"]),
        symmetric_reduce(e[2], ["a", "b"], tgt, ["c1", "c2"]),
    )


def segre_from_chern(c1: GradedElt, c2: GradedElt, j: int) -> GradedElt:
    """Degree-``j`` part of ``1/(1 + c1 + c2)``."""
    s = (c1.ring.one() + c1 + c2).inverse()
    return s.part(j)


def segre_pushforward(n: int, j: int) -> GradedElt:
    """``pi_*(zeta^{n+j})`` on ``P(Sym^n S)`` over a surface: the Segre class ``s_j``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    c1, c2 = sym_power_chern(n)
    if j == 0:
        return c1.ring.one()
    if j == 1:
        return -c1
    if j == 2:
        return c1 * c1 - c2
    return c1.ring.zero()


# ---- the cubic 3-fold -----------------------------------------------------


@lru_cache(maxsize=None)
def cubic_fano_ring(order: int = 7) -> GradedRing:
    """``Q[H, c1, c2]`` for ``X x F(X)``: ``H^4 = 0`` and F-degree at most 2."""
    return GradedRing(
        {"H": 1, "c1": 1, "c2": 2}, cap=order, group_caps=[(("c1", "c2"), 2)], exp_caps={"H": 3}
    )


def todd_quotient_cubic(order: int = 5, inverse: bool = False) -> GradedElt:
    """``td(O(3)) / td(O(1) (x) Q)`` restricted to ``X x F(X)``.

    ``Q`` is the rank-3 universal quotient, ``c(Q) = 1/c(S)``.  With
    ``inverse=True`` the reciprocal ``td(O(1) (x) Q) / td(O(3))`` is returned.
    """
    if order > 7:
        raise DegreeOverflow("X x F(X) has dimension 5; order is capped at 7")
    r = cubic_fano_ring(order)
    H, c1, c2 = r.gens()
    # c(Q) = 1/(1 + c1 + c2) with the tautological S classes
    cq = (r.one() + c1 + c2).inverse()
    q_chern = [r.one(), cq.part(1), cq.part(2), cq.part(3)]
    # roots of O(1) (x) Q are H + y_i: power sums by the binomial rule
    pq = power_sums(3, q_chern, order)
    p = [r.const(3)]
    for m in range(1, order + 1):
        s = r.zero()
        for j in range(m + 1):
            s = s + H ** (m - j) * pq[j] * comb(m, j)
        p.append(s)
    a = _log_todd_coefficients(order)
    log_td = r.zero()
    for m in range(1, order + 1):
        log_td = log_td + p[m] * a[m]
    td_oq = _truncate(log_td.exp(), order)
    td_o3 = todd_series(RootBundle((H * 3,)), order)
    if inverse:
        return _truncate(td_oq * td_o3.inverse(), order)
    return _truncate(td_o3 * td_oq.inverse(), order)


# ---- Grassmannian G(1,4) and the Fano surface -----------------------------


def _monomials(weights: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    out = []

    def rec(i, left, cur):
        if i == len(weights):
            if left == 0:
                out.append(tuple(cur))
            return
        for e in range(left // weights[i] + 1):
            rec(i + 1, left - e * weights[i], cur + [e])

    rec(0, degree, [])
    return out


@lru_cache(maxsize=None)
def grassmannian_g14_integrals() -> dict[tuple[int, int], Fraction]:
    """Top-degree integrals ``int c1^a c2^b`` of the tautological subbundle on G(1,4).

    Derived from ``c4(Q) = c5(Q) = 0`` (``c(Q) = 1/c(S)``) multiplied by
    every complementary monomial, normalised by ``int c2^3 = 1``.
    """
    from .exact import solve_exact

    r = GradedRing({"c1": 1, "c2": 2})
    c1, c2 = r.gens()
    inv = r.one()
    # explicit inverse through degree 5; the ring is uncapped
    nil = c1 + c2
    term = r.one()
    for _ in range(6):
        term = -term * nil
        inv = inv + GradedElt(r, {m: c for m, c in term.terms.items() if r.degree(m) <= 6})
    c4q, c5q = inv.part(4), inv.part(5)
    unknowns = _monomials((1, 2), 6)
    col = {m: i for i, m in enumerate(unknowns)}
    rows, rhs = [], []
    for rel, d in ((c4q, 4), (c5q, 5)):
        for m in _monomials((1, 2), 6 - d):
            row = [Fraction(0)] * len(unknowns)
            for rm, rc in (rel * GradedElt(r, {m: Fraction(1)})).terms.items():
                row[col[rm]] += rc
            rows.append(row)
            rhs.append(Fraction(0))
    norm = [Fraction(0)] * len(unknowns)
    norm[col[(0, 3)]] = Fraction(1)
    rows.append(norm)
    rhs.append(Fraction(1))
    sol, nullity = solve_exact(rows, rhs)
    if nullity:
        raise ValueError("Grassmannian relations do not determine the integrals")
    return {m: sol[i] for m, i in col.items()}


def fano_class_in_grassmannian() -> GradedElt:
    """``c4(Sym^3 S^*)``, the class of the Fano surface in G(1,4)."""
    roots_ring = GradedRing({"a": 1, "b": 1}, cap=4)
    a, b = roots_ring.gens()
    # roots of S^* are -a, -b; Sym^3 has roots -(j a + (3-j) b)
    e = chern_from_roots(RootBundle(tuple(-(a * j + b * (3 - j)) for j in range(4))))
    return symmetric_reduce(e[4], ["a", "b"], GradedRing({"c1": 1, "c2": 2}), ["c1", "c2"])


def fano_integrals() -> dict[str, Fraction]:
    """``int_F c1^2`` and ``int_F c2`` pushed into G(1,4)."""
    g = grassmannian_g14_integrals()
    f = fano_class_in_grassmannian()

    def integrate(extra: tuple[int, int]) -> Fraction:
        return sum(
            (c * g[(m[0] + extra[0], m[1] + extra[1])] for m, c in f.terms.items()),
            Fraction(0),
        )

    return {"c1^2": integrate((2, 0)), "c2": integrate((0, 1))}
