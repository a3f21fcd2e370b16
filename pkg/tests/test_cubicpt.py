from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ptvirasoro.cubicpt import (
    TABLE,
    LnClass,
    PairingPoly,
    bracket,
    build_cubic_models,
    check_row,
    cubic_menu,
    cubic_model,
    descendent_class,
    integrate_ln,
    virasoro_residual_cubic,
    virtual_class,
    virtual_class_closed,
)
from ptvirasoro.descalg import reduction_rewrite
from ptvirasoro.exact import rf_series
from ptvirasoro.insertions import parse_insertion

M = cubic_model()
P = PairingPoly.pair


def E(text):
    return parse_insertion(text, M)


def ln(n, **terms):
    """Shorthand: ``c1``, ``c2``, ``z`` exponents spelled as ``a{i}b{j}z{k}``."""
    out = {}
    for key, v in terms.items():
        a, rest = key[1:].split("b")
        b, z = rest.split("z")
        out[(int(a), int(b), int(z), ())] = v
    return LnClass(n, out)


def mod_r(x):
    # drop H^{>2}(F)[zeta]; the real degree is already at most 4 for these classes
    return LnClass(x.n, {k: v for k, v in x.terms.items() if 2 * k[0] + 4 * k[1] + len(k[3]) <= 2})


def test_models():
    X, Fm = build_cubic_models()
    assert X.integrate(X.mul(X.c(1), X.c(2))) == 24
    assert (Fm.c1sq, Fm.c2) == (45, 27)


# ---- descendents on P_1 ----

N0 = [
    (3, "1", ln(0)),
    (2, "H", ln(0, a0b0z0=1)),
    (4, "1", ln(0, a1b0z0=F(1, 6))),
    (3, "H", ln(0, a1b0z0=F(1, 2))),
    (2, "H2", ln(0, a1b0z0=-1)),
    (5, "1", ln(0, a2b0z0=F(1, 12))),
    (4, "H", ln(0, a2b0z0=F(-1, 12), a0b1z0=F(1, 3))),
    (3, "H2", ln(0, a2b0z0=F(-1, 2))),
    (2, "H3", ln(0, a2b0z0=1, a0b1z0=-1)),
]


@pytest.mark.parametrize("k,g,want", N0, ids=[f"ch{k}({g})" for k, g, _ in N0])
def test_descendents_n0(k, g, want):
    assert descendent_class(0, k, g) == want


def test_odd_descendents_n0():
    assert descendent_class(0, 2, "g1") == LnClass.phi(0, "g1")
    assert descendent_class(0, 3, "g1") == LnClass(0, {(1, 0, 0, ("g1",)): F(1, 2)})


def test_collapsed_low_descendents():
    assert descendent_class(2, 0, "p") == LnClass.const(2, -1)
    assert descendent_class(2, 0, "H").is_zero()
    assert descendent_class(2, 1, "H2").is_zero()


# ---- descendents modulo the ideal, n > 0 ----


def quad(n):
    return F(1, 6) + F(n, 2) + F(n * n, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_descendents_mod_r(n):
    d = lambda k, g: mod_r(descendent_class(n, k, g))
    assert d(3, "1") == ln(n, a0b0z0=n)
    assert d(2, "H") == ln(n, a0b0z0=1)
    assert d(4, "1") == ln(n, a1b0z0=quad(n), a0b0z1=n)
    assert d(3, "H") == ln(n, a1b0z0=F(1, 2), a0b0z1=1)
    assert d(2, "H2") == ln(n, a1b0z0=-1)
    assert d(4, "H") == ln(n, a1b0z1=F(1, 2), a0b0z2=F(1, 2))
    assert d(3, "H2") == ln(n, a1b0z1=-1)
    assert d(2, "H3").is_zero()
    assert d(2, "g3") == LnClass.phi(n, "g3")
    assert d(3, "g3") == LnClass(n, {(0, 0, 1, ("g3",)): 1})


@pytest.mark.parametrize("n", range(1, 6))
def test_ch5_mod_r(n):
    # the zeta^2 coefficient is n/2
    assert mod_r(descendent_class(n, 5, "1")) == ln(n, a1b0z1=quad(n), a0b0z2=F(n, 2))


# ---- virtual class and integrals ----


@pytest.mark.parametrize("n", range(0, 9))
def test_virtual_class_closed_form(n):
    assert virtual_class(n) == virtual_class_closed(n)


def test_virtual_class_small():
    assert virtual_class(1) == ln(1, a1b0z0=-1)
    assert virtual_class(2) == ln(2, a1b0z1=1, a2b0z0=2)


@pytest.mark.parametrize("n", range(1, 6))
def test_fano_integrals_on_ln(n):
    assert integrate_ln(ln(n, **{f"a2b0z{n}": 1})) == PairingPoly.const(45)
    assert integrate_ln(ln(n, **{f"a1b0z{n + 1}": 1})) == PairingPoly.const(-45 * F(n * (n + 1), 2))


# ---- brackets ----


def test_odd_brackets():
    assert bracket(2, E("ch2(g1)*ch3(g2)")) == P("g1", "g2") * -6
    # both factors odd: swapping them flips the sign
    assert bracket(2, E("ch3(g2)*ch2(g1)")) == P("g1", "g2") * 6
    assert bracket(2, E("ch2(g1)*ch3(g3)")).is_zero()


def test_four_point():
    four = P("g1", "g2") * P("g3", "g4") + P("g1", "g4") * P("g2", "g3")
    assert bracket(1, E("ch2(g1)*ch2(g2)*ch2(g3)*ch2(g4)")) == four
    assert bracket(3, E("ch2(g1)*ch2(g2)*ch2(g3)*ch2(g4)")).is_zero()


def test_pairing_symbols():
    assert P("g2", "g1") == -P("g1", "g2")
    assert P("g1", "g3").is_zero() and P("g2", "g4").is_zero()
    assert P("a1", "b1").scalar() == -P("b1", "a1").scalar()


def test_wrong_degree_brackets_vanish():
    assert bracket(3, E("ch4(1)")).is_zero()
    assert bracket(3, E("ch3(H)*ch3(H)*ch3(H)")).is_zero()


def test_bracket_index_must_be_positive():
    with pytest.raises(ValueError):
        bracket(0, E("ch4(H)"))


@pytest.mark.parametrize("row", TABLE, ids=lambda r: r.key)
def test_table_row(row):
    got = check_row(row, 10)
    assert got["series_ok"] and got["fit_ok"] and got["functional_equation_ok"]


def test_ch5_series_values():
    s = rf_series(next(r for r in TABLE if r.key == "ch5_1").closed_form, 6)
    assert [s[e] for e in range(1, 6)] == [F(15, 4), -30, F(195, 2), -210, F(735, 2)]
    for n in range(1, 5):
        assert bracket(n + 1, E("ch5(1)")).scalar() == (-1) ** n * F(15, 2) * (1 + 3 * n * n)


# ---- Virasoro ----


def zero_residual(k, D, n_max=6):
    return all(v.is_zero() for v in virasoro_residual_cubic(k, D, n_max).values())


@pytest.mark.parametrize(
    "k,text",
    [(2, "1"), (1, "ch2(H2)"), (1, "ch3(H)"), (1, "ch4(1)"), (1, "ch2(g1)*ch2(g2)"), (1, "ch2(g3)*ch2(g4)")],
)
def test_listed_cases(k, text):
    assert zero_residual(k, E(text))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_menu_residuals(k):
    for D in cubic_menu(4 - 2 * k)[:20]:
        assert zero_residual(k, D, 4), D


# ---- reductions ----

REDUCTIONS = [
    ("ch0(p)", "ch4(1)"),
    ("ch0(H)", "ch5(1)*ch3(H)"),
    ("ch1(p)", "1"),
    ("ch1(H2)", "ch4(1)"),
    ("ch2(1)", "ch5(1)"),
    ("ch2(H)", "ch3(H)"),
    ("ch2(H)", "ch2(g1)*ch2(g2)"),
    ("ch3(1)", "ch4(1)"),
    ("ch3(1)", "ch2(H2)"),
]


@pytest.mark.parametrize("x,d", REDUCTIONS)
def test_reduction_cases(x, d):
    D = E(d)
    assert zero_residual(1, D, 5)
    assert zero_residual(1, E(x) * D, 5)


@pytest.mark.parametrize("n1", range(1, 5))
def test_rewrites_match_realization(n1):
    beta = {"H": 1}
    for X in ("ch2(H)", "ch3(1)", "ch2(1)", "ch2(b2)"):
        for d in ("ch4(1)", "ch3(H)", "ch2(g1)*ch2(g2)"):
            e = E(X) * E(d)
            assert bracket(n1, reduction_rewrite(e, M, beta, n1, 2)) == bracket(n1, e)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(cubic_menu(2)), st.integers(1, 5))
def test_divisor_equation(D, n1):
    assert bracket(n1, E("ch2(H)") * D) == bracket(n1, D)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(cubic_menu(4)), st.integers(1, 5))
def test_dilaton_equation(D, n1):
    assert bracket(n1, E("ch3(1)") * D) == bracket(n1, D) * (n1 - 1)
