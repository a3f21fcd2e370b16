from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ptvirasoro.cherncalc import (
    DegreeOverflow,
    GradedRing,
    RootBundle,
    chern_from_roots,
    cubic_fano_ring,
    fano_integrals,
    grassmannian_g14_integrals,
    segre_from_chern,
    segre_pushforward,
    surface_chern_ring,
    sym_power_chern,
    symmetric_reduce,
    todd_from_chern,
    todd_quotient_cubic,
    todd_series,
)


def line_ring(cap=6):
    return GradedRing({"H": 1}, cap=cap)


def test_todd_of_line_bundle():
    r = line_ring()
    (H,) = r.gens()
    td = todd_series(RootBundle((H * 3,)), 6)
    # x/(1-e^-x) = 1 + x/2 + x^2/12 - x^4/720 + x^6/30240
    assert td.coeff(H=1) == F(3, 2)
    assert td.coeff(H=2) == F(3, 4)
    assert td.coeff(H=3) == 0
    assert td.coeff(H=4) == F(-81, 720)
    assert td.coeff(H=6) == F(729, 30240)


def test_todd_of_trivial_bundle():
    r = line_ring()
    assert todd_series(RootBundle(()), 4, r) == r.one()


def test_todd_order_above_cap():
    r = line_ring(3)
    with pytest.raises(DegreeOverflow):
        todd_series(RootBundle(r.gens()), 4)


def rank2_todd_reduced(order):
    roots = GradedRing({"a": 1, "b": 1}, cap=order)
    a, b = roots.gens()
    td = todd_series(RootBundle((a, b)), order)
    return symmetric_reduce(td, ["a", "b"], surface_chern_ring(order), ["c1", "c2"])


def test_rank2_todd_low_degrees():
    td = rank2_todd_reduced(2)
    r = surface_chern_ring(2)
    c1, c2 = r.gens()
    assert td == r.one() + c1 / 2 + (c1 * c1 + c2) / 12


def test_todd_routes_agree():
    # from roots and from Chern classes via power sums
    order = 4
    r = surface_chern_ring(order)
    c1, c2 = r.gens()
    assert rank2_todd_reduced(order) == todd_from_chern(2, [r.one(), c1, c2], order)


def test_inverse_todd_surface():
    r = surface_chern_ring(2)
    c1, c2 = r.gens()
    inv = todd_from_chern(2, [r.one(), c1, c2], 2).inverse()
    assert inv == r.one() - c1 / 2 + (c1 * c1 * 2 - c2) / 12


coef = st.integers(-3, 3)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coef, coef), min_size=1, max_size=2), st.lists(st.tuples(coef, coef), min_size=1, max_size=2))
def test_todd_multiplicative(e_roots, f_roots):
    r = GradedRing({"x": 1, "y": 1}, cap=4)
    x, y = r.gens()
    mk = lambda rs: tuple(x * i + y * j for i, j in rs)
    E, Fb = mk(e_roots), mk(f_roots)
    lhs = todd_series(RootBundle(E + Fb), 4, r)
    assert lhs == todd_series(RootBundle(E), 4, r) * todd_series(RootBundle(Fb), 4, r)


def test_chern_from_roots_rank2():
    r = GradedRing({"a": 1, "b": 1})
    a, b = r.gens()
    e = chern_from_roots(RootBundle((a, b)))
    assert e[1] == a + b and e[2] == a * b


def test_symmetric_reduce_rejects_asymmetric():
    r = GradedRing({"a": 1, "b": 1})
    a, _ = r.gens()
    with pytest.raises(ValueError):
        symmetric_reduce(a, ["a", "b"], surface_chern_ring(), ["c1", "c2"])


# ---- symmetric powers and Segre classes ----


def test_sym_powers():
    r = surface_chern_ring()
    c1, c2 = r.gens()
    assert sym_power_chern(1) == (c1, c2)
    assert sym_power_chern(2) == (c1 * 3, c1 * c1 * 2 + c2 * 4)
    assert sym_power_chern(3)[0] == c1 * 6


@pytest.mark.parametrize("n", range(1, 9))
def test_chern_times_segre(n):
    c1, c2 = sym_power_chern(n)
    r = c1.ring
    c = r.one() + c1 + c2
    s = sum((segre_pushforward(n, j) for j in range(3)), r.zero())
    assert c * s == r.one()
    assert c1 == r.gen("c1") * F(n * (n + 1), 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_projective_bundle_relation(n):
    # zeta^{n+1} = -c1 zeta^n - c2 zeta^{n-1}; push forward after multiplying by zeta^j
    c1, c2 = sym_power_chern(n)
    r = c1.ring
    s = lambda j: segre_pushforward(n, j) if j >= 0 else r.zero()
    for j in range(4):
        assert s(j + 1) == -c1 * s(j) - c2 * s(j - 1)


def test_segre_examples():
    r = surface_chern_ring()
    c1, c2 = r.gens()
    assert segre_pushforward(3, 0) == r.one()
    assert segre_pushforward(1, 2) == c1 * c1 - c2
    assert segre_pushforward(2, 5).is_zero()
    ints = fano_integrals()
    for n in range(1, 6):
        # int_F c1 pi_*(zeta^{n+1}) = -45 n(n+1)/2
        assert segre_pushforward(n, 1).coeff(c1=1) * ints["c1^2"] == -45 * F(n * (n + 1), 2)
    assert segre_from_chern(c1, c2, 2) == c1 * c1 - c2


# ---- the cubic ----


def test_grassmannian_integrals():
    assert grassmannian_g14_integrals() == {(0, 3): 1, (2, 2): 1, (4, 1): 2, (6, 0): 5}


def test_fano_integrals():
    assert fano_integrals() == {"c1^2": 45, "c2": 27}


def test_todd_quotient_anchors():
    inv = todd_quotient_cubic(5, inverse=True)
    assert inv.coeff(c1=1) == F(-1, 2)
    assert inv.coeff(H=1, c1=1) == F(1, 12)
    assert inv.coeff(H=2, c1=2) == F(31, 720)
    assert inv.coeff(H=3, c1=2) == F(-7, 720)
    fwd = todd_quotient_cubic(5)
    assert fwd.coeff(c1=1) == F(1, 2)
    one = fwd * inv
    assert truncated(one, 5) == cubic_fano_ring(5).one()


def truncated(x, order):
    return x.ring.from_dict({m: c for m, c in x.terms.items() if x.ring.degree(m) <= order})


def test_todd_quotient_cap():
    with pytest.raises(DegreeOverflow):
        todd_quotient_cubic(8)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 1), st.integers(-3, 3)), max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 1), st.integers(-3, 3)), max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 1), st.integers(-3, 3)), max_size=4))
def test_truncated_ring_is_associative(a, b, c):
    r = cubic_fano_ring(7)

    def elt(terms):
        out = r.zero()
        for h, x, y, v in terms:
            out = out + r.gen("H") ** h * r.gen("c1") ** x * r.gen("c2") ** y * v
        return out

    x, y, z = elt(a), elt(b), elt(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
