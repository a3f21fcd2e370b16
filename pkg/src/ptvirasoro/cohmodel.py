"""Finite bigraded supercommutative cohomology rings with integration.

A :class:`CohModel` holds a basis with Hodge types, a multiplication table
on basis pairs, the integration functional and the Chern classes.  Classes
are :class:`CohClass` vectors keyed by basis names.

Besides the basis, a model may carry *formal* odd classes: labels with a
degree and Hodge type but no coordinates.  They exist so that descendents
of an arbitrary odd class can be manipulated symbolically.  Their products
are only defined with the unit, or with even classes landing in a degree
that has no odd cohomology (where the product must vanish).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, NamedTuple

from .exact import NoSolution, solve_exact

__all__ = [
    "BasisClass",
    "CohClass",
    "CohModel",
    "KunnethTerm",
    "ModelSpec",
    "ValidationError",
    "SingularPairing",
    "HRRReport",
    "build_model",
    "direct_sum",
]


class ValidationError(ValueError):
    def __init__(self, axiom: str, detail: str = "", pair: tuple | None = None):
        self.axiom, self.detail, self.pair = axiom, detail, pair
        msg = f"{axiom}: {detail}" if detail else axiom
        if pair is not None:
            msg += f" (at {pair})"
        super().__init__(msg)


class SingularPairing(ValidationError):
    def __init__(self, detail: str = ""):
        super().__init__("duality", detail or "intersection pairing is singular")


@dataclass(frozen=True)
class BasisClass:
    name: str
    degree: int
    p: int
    q: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class CohClass:
    """A cohomology class as a sparse vector over basis (or formal) names."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[str, object] | None = None):
        self.coords = {
            k: v if type(v) is Fraction else Fraction(v) for k, v in (coords or {}).items() if v
        }

    @classmethod
    def basis(cls, name: str, c=1) -> "CohClass":
        return cls({name: c})

    def is_zero(self) -> bool:
        return not self.coords

    def items(self):
        return self.coords.items()

    def __getitem__(self, name: str) -> Fraction:
        return self.coords.get(name, Fraction(0))

    def __add__(self, other: "CohClass") -> "CohClass":
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return CohClass(out)

    def __neg__(self) -> "CohClass":
        return CohClass({k: -v for k, v in self.coords.items()})

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __mul__(self, c) -> "CohClass":
        if isinstance(c, CohClass):
            raise TypeError("use CohModel.mul for cup products")
        return CohClass({k: v * c for k, v in self.coords.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "CohClass":
        return self * (1 / Fraction(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, CohClass) and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __repr__(self) -> str:
        if not self.coords:
            return "CohClass(0)"
        return "CohClass(" + " + ".join(f"{v}*{k}" for k, v in sorted(self.coords.items())) + ")"


class KunnethTerm(NamedTuple):
    left: BasisClass
    right: BasisClass
    coeff: Fraction


@dataclass
class ModelSpec:
    """Raw data for :func:`build_model`.

    ``products`` maps ordered basis pairs to classes (as ``{name: coeff}``);
    a pair given in one order is completed to the other by supercommutativity.
    Products with ``unit`` are filled in automatically.
    """

    dim: int
    basis: list[BasisClass]
    products: dict[tuple[str, str], Mapping[str, object]]
    integrals: dict[str, object]
    chern: dict[int, Mapping[str, object]]
    point: Mapping[str, object]
    unit: Mapping[str, object] | str = "1"
    symbols: dict[str, Mapping[str, object]] = field(default_factory=dict)
    formal: dict[str, tuple[int, int, int]] = field(default_factory=dict)
    name: str = ""


@dataclass(frozen=True)
class HRRReport:
    rows: tuple[tuple[str, Fraction, Fraction, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.rows)

    def __str__(self) -> str:
        return "\n".join(f"{'pass' if ok else 'FAIL'}  {label}: {a} vs {b}" for label, a, b, ok in self.rows)


def _koszul(a: BasisClass, b: BasisClass) -> int:
    return -1 if (a.odd and b.odd) else 1


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        try:
            x, nullity = solve_exact(m, e)
        except NoSolution:
            raise SingularPairing() from None
        if nullity:
            raise SingularPairing()
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


class CohModel:
    """A validated cohomology model; build it with :func:`build_model`."""

    def __init__(self, spec: ModelSpec):
        self.name = spec.name
        self.dim = spec.dim
        self.basis = list(spec.basis)
        self.by_name = {b.name: b for b in self.basis}
        self.formal = {
            k: BasisClass(k, d, p, q) for k, (d, p, q) in spec.formal.items()
        }
        unit = spec.unit
        self.unit = CohClass.basis(unit) if isinstance(unit, str) else CohClass(unit)
        table: dict[tuple[str, str], CohClass] = {}
        for (a, b), v in spec.products.items():
            table[(a, b)] = CohClass(v)
        for (a, b), v in list(table.items()):
            if (b, a) not in table:
                table[(b, a)] = v * _koszul(self.by_name[a], self.by_name[b])
        if isinstance(unit, str):
            for b in self.basis:
                table.setdefault((unit, b.name), CohClass.basis(b.name))
                table.setdefault((b.name, unit), CohClass.basis(b.name))
        self.table = {k: v for k, v in table.items() if not v.is_zero()}
        self.integrals = {k: Fraction(v) for k, v in spec.integrals.items() if v != 0}
        self.chern = {i: CohClass(c) for i, c in spec.chern.items()}
        self.point = CohClass(spec.point)
        self.symbols = {k: CohClass(v) for k, v in spec.symbols.items()}
        self._kunneth: list[KunnethTerm] | None = None

    # ---- lookup ----
    def info(self, name: str) -> BasisClass:
        if name in self.by_name:
            return self.by_name[name]
        if name in self.formal:
            return self.formal[name]
        raise KeyError(f"unknown class {name!r} in model {self.name or '?'}")

    def cls(self, name: str, c=1) -> CohClass:
        if name in self.symbols:
            return self.symbols[name] * c
        self.info(name)
        return CohClass.basis(name, c)

    def c(self, i: int) -> CohClass:
        return self.chern.get(i, CohClass())

    def degree(self, a: CohClass) -> int:
        degs = {self.info(k).degree for k in a.coords}
        if len(degs) != 1:
            raise ValueError(f"class {a} is not homogeneous")
        return degs.pop()

    def homogeneous_parts(self, a: CohClass) -> dict[int, CohClass]:
        out: dict[int, dict] = {}
        for k, v in a.items():
            out.setdefault(self.info(k).degree, {})[k] = v
        return {d: CohClass(v) for d, v in out.items()}

    # ---- ring structure ----
    def _mul_basis(self, a: str, b: str) -> CohClass:
        if a in self.formal or b in self.formal:
            return self._mul_formal(a, b)
        return self.table.get((a, b), CohClass())

    def _mul_formal(self, a: str, b: str) -> CohClass:
        if a in self.formal and b in self.formal:
            raise ValueError(f"product of formal classes {a}*{b} has no coordinates")
        f, other = (a, b) if a in self.formal else (b, a)
        if CohClass.basis(other) == self.unit:
            return CohClass.basis(f)
        deg = self.formal[f].degree + self.by_name[other].degree
        if not any(x.degree == deg and x.odd for x in self.basis) and deg % 2 == 1:
            return CohClass()
        raise ValueError(f"product {a}*{b} of a formal class is not determined")

    def mul(self, a: CohClass, b: CohClass) -> CohClass:
        out: dict[str, Fraction] = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                for k, v in self._mul_basis(ka, kb).items():
                    out[k] = out.get(k, 0) + va * vb * v
        return CohClass(out)

    def prod(self, *classes: CohClass) -> CohClass:
        out = self.unit
        for c in classes:
            out = self.mul(out, c)
        return out

    def power(self, a: CohClass, e: int) -> CohClass:
        return self.prod(*([a] * e))

    def integrate(self, a: CohClass) -> Fraction:
        return sum((v * self.integrals.get(k, 0) for k, v in a.items()), Fraction(0))

    def pairing(self, a: CohClass, b: CohClass) -> Fraction:
        return self.integrate(self.mul(a, b))

    def pairing_matrix(self) -> list[list[Fraction]]:
        return [
            [self.integrate(self._mul_basis(a.name, b.name)) for b in self.basis]
            for a in self.basis
        ]

    # ---- diagonal ----
    def kunneth_diagonal(self) -> list[KunnethTerm]:
        """Terms ``sum g^{ij} e_i (x) e_j`` of the diagonal, ``g`` the inverse pairing.

        With this normalisation ``sum coeff * left * integrate(right * b) == b``
        for every basis class ``b``.
        """
        if self._kunneth is None:
            g = _invert(self.pairing_matrix())
            self._kunneth = [
                KunnethTerm(a, b, g[i][j])
                for i, a in enumerate(self.basis)
                for j, b in enumerate(self.basis)
                if g[i][j] != 0
            ]
        return self._kunneth

    def kunneth_pushforward(self, c: CohClass) -> list[KunnethTerm]:
        """Diagonal pushforward of an even class: ``sum g^{ij} e_i (x) (e_j * c)``."""
        acc: dict[tuple[str, str], Fraction] = {}
        for t in self.kunneth_diagonal():
            for k, v in self.mul(CohClass.basis(t.right.name), c).items():
                key = (t.left.name, k)
                acc[key] = acc.get(key, 0) + t.coeff * v
        return [
            KunnethTerm(self.by_name[l], self.by_name[r], v)
            for (l, r), v in acc.items()
            if v != 0
        ]

    def hrr_report(self) -> HRRReport:
        """Compare Hodge-graded partial traces of the diagonal with Chern numbers."""
        traces: dict[int, Fraction] = {}
        for t in self.kunneth_diagonal():
            v = t.coeff * self.pairing(CohClass.basis(t.left.name), CohClass.basis(t.right.name))
            traces[t.left.p] = traces.get(t.left.p, 0) + v
        c1, c2 = self.c(1), self.c(2)
        rows = []
        if self.dim == 2:
            td2 = self.integrate(self.mul(c1, c1) + c2) / 12
            mid = self.integrate(c2 * 5 - self.mul(c1, c1)) / 6
            rows += [
                ("sum_{pL=0} gLgR = (c1^2+c2)/12", traces.get(0, Fraction(0)), td2),
                ("sum_{pL=2} gLgR = (c1^2+c2)/12", traces.get(2, Fraction(0)), td2),
                ("sum_{pL=1} gLgR = (5c2-c1^2)/6", traces.get(1, Fraction(0)), mid),
            ]
        elif self.dim == 3:
            rows.append(
                ("sum_{pL=0} gLgR = c1c2/24", traces.get(0, Fraction(0)), self.integrate(self.mul(c1, c2)) / 24)
            )
        rows.append(("sum_all gLgR = c_top", sum(traces.values(), Fraction(0)), self.integrate(self.c(self.dim))))
        return HRRReport(tuple((label, a, b, a == b) for label, a, b in rows))


def _validate(m: CohModel) -> None:
    top = 2 * m.dim
    for b in list(m.basis) + list(m.formal.values()):
        if b.p + b.q != b.degree or b.p < 0 or b.q < 0 or not 0 <= b.degree <= top:
            raise ValidationError("hodge", f"bad bidegree ({b.p},{b.q}) in degree {b.degree}", (b.name,))
    names = [b.name for b in m.basis]
    if len(set(names)) != len(names):
        raise ValidationError("basis", "duplicate basis names")
    for (a, b), v in m.table.items():
        ba, bb = m.by_name[a], m.by_name[b]
        for k in v.coords:
            c = m.by_name[k]
            if c.degree != ba.degree + bb.degree or c.p != ba.p + bb.p:
                raise ValidationError("grading", f"{a}*{b} has a component {k} of the wrong type", (a, b))
    for k in m.integrals:
        if m.by_name[k].degree != top:
            raise ValidationError("integral", f"integral of non-top class {k}", (k,))
    g = m.pairing_matrix()
    for i, a in enumerate(m.basis):
        for j, b in enumerate(m.basis):
            if g[i][j] != _koszul(a, b) * g[j][i]:
                raise ValidationError("duality", "pairing is not graded-symmetric", (a.name, b.name))
    _invert(g)
    for a, b in product(m.basis, repeat=2):
        if m._mul_basis(a.name, b.name) != m._mul_basis(b.name, a.name) * _koszul(a, b):
            raise ValidationError("supercommutativity", "", (a.name, b.name))
    for a, b, c in product(m.basis, repeat=3):
        x, y, z = (CohClass.basis(n.name) for n in (a, b, c))
        if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)):
            raise ValidationError("associativity", "", (a.name, b.name, c.name))
    for b in m.basis:
        bc = CohClass.basis(b.name)
        if m.mul(m.unit, bc) != bc:
            raise ValidationError("unit", "unit does not act as identity", (b.name,))
    for i, c in m.chern.items():
        for k in c.coords:
            info = m.by_name[k]
            if info.degree != 2 * i or info.p != i:
                raise ValidationError("chern", f"c{i} has a component {k} of the wrong type", (k,))
    if m.integrate(m.point) != 1:
        raise ValidationError("point", "point class must integrate to 1")


def build_model(spec: ModelSpec) -> CohModel:
    m = CohModel(spec)
    _validate(m)
    return m


def direct_sum(models: Iterable[tuple[str, CohModel]], name: str = "") -> CohModel:
    """Cohomology of a disjoint union; every basis name gets its part's prefix."""
    basis, products, integrals, point = [], {}, {}, {}
    chern: dict[int, dict] = {}
    unit: dict[str, Fraction] = {}
    symbols: dict[str, dict] = {}
    models = list(models)
    for pre, m in models:
        ren = lambda k, pre=pre: f"{pre}{k}"
        basis += [BasisClass(ren(b.name), b.degree, b.p, b.q) for b in m.basis]
        for (a, b), v in m.table.items():
            products[(ren(a), ren(b))] = {ren(k): c for k, c in v.items()}
        integrals.update({ren(k): v for k, v in m.integrals.items()})
        for i, c in m.chern.items():
            d = chern.setdefault(i, {})
            d.update({ren(k): v for k, v in c.items()})
        unit.update({ren(k): v for k, v in m.unit.items()})
        for s, c in m.symbols.items():
            symbols[ren(s)] = {ren(k): v for k, v in c.items()}
        for b in m.basis:
            symbols.setdefault(ren(b.name), {ren(b.name): 1})
    pre0, m0 = models[0]
    point = {f"{pre0}{k}": v for k, v in m0.point.items()}
    symbols["1"] = unit
    spec = ModelSpec(
        dim=m0.dim, basis=basis, products=products, integrals=integrals,
        chern=chern, point=point, unit=unit, symbols=symbols, name=name,
    )
    return build_model(spec)
