"""Exact arithmetic in one formal variable q.

Scalars are :class:`fractions.Fraction` throughout.  Dense polynomials are
tuples of Fractions, lowest degree first, with no trailing zeros.  On top of
those sit :class:`RatFn` (rational functions in lowest terms) and
:class:`QSeries` (truncated Laurent series).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RatFn",
    "QSeries",
    "NoSolution",
    "AmbiguousSolution",
    "rf_series",
    "functional_equation_residual",
    "reconstruct_rational",
    "solve_exact",
]


class NoSolution(ValueError):
    """The series is not rational within the requested degree bounds."""


class AmbiguousSolution(ValueError):
    """Degree bounds were not saturated; ``candidate`` holds the reduced fit."""

    def __init__(self, msg: str, candidate: "RatFn"):
        super().__init__(msg)
        self.candidate = candidate


# ---------- dense polynomials ----------

Poly = tuple


def _poly(coeffs: Iterable) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _poly(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly(out)


def _pscale(a: Poly, c) -> Poly:
    return _poly(x * c for x in a)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        quot[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return _poly(quot), _poly(rem[: len(b) - 1])


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    return _pscale(a, 1 / a[-1])


def _valuation(a: Poly) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("valuation of the zero polynomial")


def _preverse(a: Poly) -> Poly:
    return _poly(reversed(a))


def _fmt_poly(a: Poly, var: str = "q") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = f"{c} {mono}" if mono else str(c)
        parts.append(s)
    return " + ".join(parts).replace("+ -", "- ")


# ---------- rational functions ----------


class RatFn:
    """A rational function ``q**shift * num(q) / den(q)`` in canonical form.

    Canonical form: ``num(0) != 0``, ``den(0) != 0``, ``gcd(num, den) == 1``
    and ``den`` monic.  The power of q is carried separately, so a pole at
    q = 0 is just a negative ``shift``.  The zero function has ``num == ()``.
    """

    __slots__ = ("num", "den", "shift")

    def __init__(self, num: Sequence = (), den: Sequence = (1,), shift: int = 0):
        num, den = _poly(num), _poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den, self.shift = (), (Fraction(1),), 0
            return
        vn, vd = _valuation(num), _valuation(den)
        num, den = num[vn:], den[vd:]
        g = _pgcd(num, den)
        if len(g) > 1:
            num, den = _pdivmod(num, g)[0], _pdivmod(den, g)[0]
        lead = den[-1]
        self.num = _pscale(num, 1 / lead)
        self.den = _pscale(den, 1 / lead)
        self.shift = shift + vn - vd

    # -- constructors --
    @classmethod
    def const(cls, c) -> "RatFn":
        return cls((c,))

    @classmethod
    def monomial(cls, c, power: int) -> "RatFn":
        return cls((c,), (1,), power)

    @classmethod
    def from_laurent(cls, coeffs: dict[int, Fraction]) -> "RatFn":
        """Build a Laurent polynomial from ``{exponent: coefficient}``."""
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            return cls()
        lo = min(coeffs)
        return cls([coeffs.get(lo + i, 0) for i in range(max(coeffs) - lo + 1)], (1,), lo)

    # -- queries --
    def is_zero(self) -> bool:
        return not self.num

    @property
    def degrees(self) -> tuple[int, int]:
        """Degrees of the numerator and denominator of ``q^max(shift,0) num / q^max(-shift,0) den``."""
        if self.is_zero():
            return (0, 0)
        return (len(self.num) - 1 + max(self.shift, 0), len(self.den) - 1 + max(-self.shift, 0))

    def valuation(self) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self.shift

    def _pair(self) -> tuple[Poly, Poly]:
        """Numerator and denominator as plain polynomials (q-powers absorbed)."""
        if self.shift >= 0:
            return (0,) * self.shift + self.num, self.den
        return self.num, (0,) * (-self.shift) + self.den

    # -- arithmetic --
    def __add__(self, other) -> "RatFn":
        other = _as_ratfn(other)
        if other is NotImplemented:
            return other
        a, b = self._pair()
        c, d = other._pair()
        return RatFn(_padd(_pmul(a, d), _pmul(c, b)), _pmul(b, d))

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        return RatFn(_pneg(self.num), self.den, self.shift)

    def __sub__(self, other) -> "RatFn":
        other = _as_ratfn(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFn":
        return (-self) + other

    def __mul__(self, other) -> "RatFn":
        other = _as_ratfn(other)
        if other is NotImplemented:
            return other
        return RatFn(_pmul(self.num, other.num), _pmul(self.den, other.den), self.shift + other.shift)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        other = _as_ratfn(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(_pmul(self.num, other.den), _pmul(self.den, other.num), self.shift - other.shift)

    def __rtruediv__(self, other) -> "RatFn":
        return _as_ratfn(other) / self

    def __pow__(self, e: int) -> "RatFn":
        if e < 0:
            return RatFn.const(1) / (self ** (-e))
        out = RatFn.const(1)
        for _ in range(e):
            out = out * self
        return out

    def invert_q(self) -> "RatFn":
        """Return ``f(1/q)``."""
        if self.is_zero():
            return self
        dn, dd = len(self.num) - 1, len(self.den) - 1
        return RatFn(_preverse(self.num), _preverse(self.den), -self.shift - dn + dd)

    def __call__(self, x):
        a, b = self._pair()
        x = Fraction(x)
        return sum(c * x**i for i, c in enumerate(a)) / sum(c * x**i for i, c in enumerate(b))

    def __eq__(self, other) -> bool:
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num, self.den, self.shift) == (other.num, other.den, other.shift)

    def __hash__(self):
        return hash((self.num, self.den, self.shift))

    def __repr__(self) -> str:
        return f"RatFn({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        a, b = self._pair()
        if b == (1,):
            return _fmt_poly(a)
        return f"({_fmt_poly(a)})/({_fmt_poly(b)})"


def _as_ratfn(x):
    if isinstance(x, RatFn):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFn.const(x)
    return NotImplemented


# ---------- truncated Laurent series ----------


class QSeries:
    """A Laurent series in q known exactly through exponent ``order``.

    ``coeffs[i]`` is the coefficient of ``q**(start + i)``; every exponent
    below ``start`` is zero.  Coefficients may be Fractions or any ring
    element supporting ``+``, ``*`` and comparison with 0.
    """

    __slots__ = ("start", "coeffs", "order")

    def __init__(self, start: int, coeffs: Sequence, order: int):
        coeffs = list(coeffs)
        if start + len(coeffs) - 1 > order:
            coeffs = coeffs[: max(order - start + 1, 0)]
        coeffs += [Fraction(0)] * (order - start + 1 - len(coeffs))
        self.start, self.coeffs, self.order = start, coeffs, order

    @classmethod
    def from_dict(cls, terms: dict, order: int) -> "QSeries":
        lo = min(terms, default=order + 1)
        lo = min(lo, order + 1)
        return cls(lo, [terms.get(e, Fraction(0)) for e in range(lo, order + 1)], order)

    def __getitem__(self, e: int):
        if e > self.order:
            raise IndexError(f"coefficient of q^{e} unknown (series known through q^{self.order})")
        if e < self.start:
            return Fraction(0)
        return self.coeffs[e - self.start]

    def items(self):
        for i, c in enumerate(self.coeffs):
            yield self.start + i, c

    def valuation(self) -> int | None:
        for e, c in self.items():
            if c != 0:
                return e
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.start, self.coeffs, order)

    def _lo(self, other: "QSeries") -> int:
        return min(self.start, other.start)

    def __add__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self._lo(other), order + 1)
        return QSeries(lo, [self[e] + other[e] for e in range(lo, order + 1)], order)

    def __neg__(self) -> "QSeries":
        return QSeries(self.start, [-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "QSeries":
        return self + (-other)

    def scale(self, c) -> "QSeries":
        return QSeries(self.start, [c * x for x in self.coeffs], self.order)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        va = self.valuation()
        vb = other.valuation()
        va = self.order + 1 if va is None else va
        vb = other.order + 1 if vb is None else vb
        # never claim more than either factor; with negative valuations even less
        order = min(self.order + vb, other.order + va, self.order, other.order)
        lo = min(va + vb, order + 1)
        out = [Fraction(0)] * (order - lo + 1)
        for ea, ca in self.items():
            if ca == 0:
                continue
            for eb, cb in other.items():
                e = ea + eb
                if cb != 0 and lo <= e <= order:
                    out[e - lo] = out[e - lo] + ca * cb
        return QSeries(lo, out, order)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        lo = min(self.start, other.start)
        return all(self[e] == other[e] for e in range(lo, self.order + 1))

    def __repr__(self) -> str:
        terms = [f"({c})*q^{e}" for e, c in self.items() if c != 0]
        return f"QSeries({' + '.join(terms) or '0'} + O(q^{self.order + 1}))"


# ---------- operations ----------


def rf_series(f: RatFn, order: int) -> QSeries:
    """Laurent expansion of ``f`` at q = 0 through ``q**order``."""
    if f.is_zero():
        return QSeries(order + 1, [], order)
    if order < f.shift:
        raise ValueError(f"order {order} below the valuation {f.shift}")
    n = order - f.shift + 1
    num, den = f.num, f.den
    out: list[Fraction] = []
    inv0 = 1 / den[0]
    for i in range(n):
        acc = num[i] if i < len(num) else Fraction(0)
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc * inv0)
    return QSeries(f.shift, out, order)


def functional_equation_residual(f: RatFn, parity: int, d_beta: int) -> RatFn:
    """``f(1/q) - (-1)**parity * q**(-d_beta) * f(q)``; zero iff the symmetry holds."""
    sign = -1 if parity % 2 else 1
    return f.invert_q() - RatFn.monomial(sign, -d_beta) * f


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Fraction], int]:
    """Solve ``rows @ x = rhs`` exactly by Gauss-Jordan elimination.

    Returns one solution (free variables set to 0) and the nullity.  Raises
    :class:`NoSolution` if the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return x, ncols - len(pivots)


def reconstruct_rational(s: QSeries, num_deg: int, den_deg: int, strict: bool = False) -> RatFn:
    """Fit ``P/Q`` with ``deg P <= num_deg``, ``deg Q <= den_deg`` to every known coefficient.

    ``Q(0) = 1`` is imposed, which loses nothing because the canonical form of
    any solution has a denominator that does not vanish at 0.  A series with
    negative valuation ``v`` is fitted as ``q**-v * s`` and shifted back.

    With ``strict=True``, a fit that does not use the full degree bounds
    raises :class:`AmbiguousSolution` carrying the reduced candidate.
    """
    v = s.valuation()
    if v is None:
        return RatFn()
    shift = min(v, 0)
    coeffs = [s[e] for e in range(shift, s.order + 1)]
    n_known = len(coeffs)
    if n_known < num_deg + den_deg + 1:
        raise ValueError("not enough known coefficients for the requested bounds")
    # unknowns b_1..b_den; equations at exponents j > num_deg: sum_i b_i c_{j-i} = -c_j
    rows, rhs = [], []
    for j in range(num_deg + 1, n_known):
        rows.append([coeffs[j - i] if j - i >= 0 else 0 for i in range(1, den_deg + 1)])
        rhs.append(-coeffs[j])
    if den_deg and rows:
        b, nullity = solve_exact(rows, rhs)
    else:
        if any(r != 0 for r in rhs):
            raise NoSolution("series is not a polynomial of the requested degree")
        b, nullity = [Fraction(0)] * den_deg, den_deg if not rows else 0
    den = (Fraction(1), *b)
    num = [sum((den[i] * coeffs[j - i] for i in range(min(j, den_deg) + 1)), Fraction(0))
           for j in range(num_deg + 1)]
    out = RatFn(num, den, shift)
    check = rf_series(out, s.order) if not out.is_zero() else QSeries(s.order + 1, [], s.order)
    if check != s:
        raise NoSolution("reconstructed function does not reproduce the series")
    if strict:
        dn, dd = out.degrees
        if nullity or dd < den_deg or dn < num_deg:
            raise AmbiguousSolution(f"degree bounds ({num_deg},{den_deg}) not saturated", out)
    return out
