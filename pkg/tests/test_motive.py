from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from motzeta import polyq as P
from motzeta.errors import BaseMismatch, NotWeil
from motzeta.motive import (
    VirtualMotive,
    composed_product,
    coprime_basis,
    dual,
    euler_char,
    from_rational,
    pushforward_scalars,
    sharp_star,
    shift,
    tate_twist,
    tensor,
    verify_functional_equation,
    weight_profile,
)
from motzeta.series import RationalFunctionQ, series_log_derivative_counts


def R(num, den):
    return RationalFunctionQ.make(num, den)


def P1(q):
    return from_rational(R([1], P.mul(P.poly([1, -1]), P.poly([1, -q]))), q)


def power_sums(f, K):
    """Newton power sums of the inverse roots of f (f(0) = 1)."""
    return [-c for c in series_log_derivative_counts(RationalFunctionQ.make(f, [1]), K)]


def test_from_rational():
    assert from_rational(R([1], [1, -1]), 2).atoms[0].mult == 1
    assert len(from_rational(R([1], [1, -3, 2]), 2).atoms) == 2
    assert from_rational(R([1, -1], [1, -1]), 2).is_zero()


def test_add_shift_twist():
    pt = VirtualMotive.point(3)
    assert (pt + -pt).is_zero()
    assert shift(pt, 1).zeta() == R([1, -1], [1])
    assert shift(P1(3), 2) == P1(3)
    assert tate_twist(pt, -1).zeta() == R([1], [1, -3])
    M = P1(3)
    assert tate_twist(tate_twist(M, 1), -1) == M
    assert tate_twist(M, -1).counts(3) == [3 * 4, 9 * 10, 27 * 28]
    with pytest.raises(BaseMismatch):
        VirtualMotive.point(2) + VirtualMotive.point(3)


def test_tensor():
    a = from_rational(R([1], [1, -2]), 5)
    b = from_rational(R([1], [1, -3]), 5)
    assert tensor(a, b).zeta() == R([1], [1, -6])
    assert tensor(P1(4), VirtualMotive.point(4)) == P1(4)
    assert tensor(P1(2), P1(2)).counts(3) == [9, 25, 81]


polys = st.lists(st.integers(-4, 4), min_size=1, max_size=3).map(lambda c: P.poly([1] + c))


@settings(max_examples=50, deadline=None)
@given(polys, polys)
def test_composed_product_power_sums(f, g):
    h = composed_product(f, g)
    assert P.degree(h) == P.degree(f) * P.degree(g)
    K = 6
    sf, sg, sh = power_sums(f, K), power_sums(g, K), power_sums(h, K)
    assert sh == [a * b for a, b in zip(sf, sg)]


@settings(max_examples=40, deadline=None)
@given(polys, polys, st.integers(-2, 2), st.integers(-2, 2))
def test_counts_are_ring_maps(f, g, m, n):
    q = 3
    M = VirtualMotive.from_pairs(q, [(f, m)]) if m else VirtualMotive.zero(q)
    N = VirtualMotive.from_pairs(q, [(g, n)]) if n else VirtualMotive.zero(q)
    cM, cN = M.counts(4), N.counts(4)
    assert (M + N).counts(4) == [a + b for a, b in zip(cM, cN)]
    assert (M * N).counts(4) == [a * b for a, b in zip(cM, cN)]
    assert dual(dual(M)) == M


def test_dual():
    L = VirtualMotive.lefschetz(3)
    assert dual(L).zeta() == R([1], [1, Fraction(-1, 3)])
    assert dual(VirtualMotive.point(3)) == VirtualMotive.point(3)
    assert dual(P1(3)).zeta() == R([1], P.mul(P.poly([1, -1]), P.poly([1, Fraction(-1, 3)])))


def test_functional_equation_and_weights():
    rep = verify_functional_equation(P1(2))
    assert (rep.chi, rep.det, rep.holds) == (2, Fraction(1, 2), True)
    assert weight_profile(P1(2)) == {0: 1, 2: 1}
    E = from_rational(R([1, -2, 5], P.mul(P.poly([1, -1]), P.poly([1, -5]))), 5)
    assert verify_functional_equation(E).holds
    assert weight_profile(E) == {0: 1, 1: -2, 2: 1}
    assert euler_char(E) == 0
    with pytest.raises(NotWeil):
        weight_profile(from_rational(R([1], [1, -3]), 2))
    # a factor mixing weights that does not split over Q
    with pytest.raises(NotWeil):
        weight_profile(from_rational(R([1], [1, -1, -3]), 4))


@settings(max_examples=40, deadline=None)
@given(polys, polys, st.integers(1, 2), st.integers(-2, -1))
def test_functional_equation_is_an_identity(f, g, m, n):
    # dualizing inverts every inverse root, so the identity holds for any class
    M = VirtualMotive.from_pairs(5, [(f, m), (g, n)])
    assert verify_functional_equation(M).holds


def test_pushforward_and_sharp():
    pt4 = VirtualMotive.point(4)
    down = pushforward_scalars(pt4, 2)
    assert down.q == 2
    assert down.zeta() == R([1], [1, 0, -1])
    assert down.counts(4) == [0, 2, 0, 2]
    assert sharp_star(P1(5), 2) == 26
    with pytest.raises(BaseMismatch):
        pushforward_scalars(VirtualMotive.point(5), 2)


def test_coprime_basis_merges():
    atoms = coprime_basis([(P.mul(P.poly([1, -1]), P.poly([1, -2])), 1), (P.poly([1, -1]), -1)])
    assert [(a.poly, a.mult) for a in atoms] == [(P.poly([1, -2]), 1)]


def test_json():
    M = P1(7) - VirtualMotive.lefschetz(7)
    assert VirtualMotive.from_json(M.to_json()) == M
