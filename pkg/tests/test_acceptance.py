"""Acceptance criteria 1-10.  A per-criterion PASS/FAIL line is printed in the terminal summary."""

import math
import time
from fractions import Fraction

import pytest

from motzeta import polyq as P
from motzeta.dirichlet import (
    DirichletSeries,
    abscissa_bound,
    evaluate,
    from_euler_factor,
    solve_shift_equation,
)
from motzeta.errors import NotSolvable, NotWeil
from motzeta.field import make_field
from motzeta.lfun import (
    assemble_ff,
    elliptic_global_lnear,
    legendre,
    ltot_from_good_model,
    projective_line_places,
    solve_local_near,
    verify_ff_functional_equation,
)
from motzeta.motive import (
    VirtualMotive,
    _inverse_roots,
    det_frobenius,
    euler_char,
    from_rational,
    verify_functional_equation,
    weight_profile,
)
from motzeta.series import (
    RationalFunctionQ,
    rational_fit,
    series_log_derivative_counts,
    zeta_series_from_counts,
)
from motzeta.varieties import (
    VarietySpec,
    WeierstrassCurve,
    count_points,
    count_tower,
    elliptic_counts,
    fiber_partition,
    kummer_twist_check,
    weierstrass_count,
)


def projective_space(n: int) -> VarietySpec:
    return VarietySpec.build([f"x{i}" for i in range(n + 1)], [], kind="projective")


def fitted_class(counts, q, dnum, dden) -> VirtualMotive:
    return from_rational(rational_fit(zeta_series_from_counts(counts), dnum, dden), q)


CURVES = [WeierstrassCurve(0, 0, 0, 1, 0), WeierstrassCurve(0, 0, 0, 1, 1)]


def elliptic_class(E, q) -> VirtualMotive:
    return fitted_class(elliptic_counts(E, make_field(q), 6), q, 2, 2)


# -- 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_c1_projective_space_zetas():
    start = time.perf_counter()
    for q, n in [(2, 1), (2, 2), (3, 1), (5, 1)]:
        counts = count_tower(projective_space(n), make_field(q), 2 * n + 2)
        Z = rational_fit(zeta_series_from_counts(counts), 0, n + 1)
        den = P.ONE
        for i in range(n + 1):
            den = P.mul(den, P.poly([1, -(q**i)]))
        assert Z == RationalFunctionQ(P.ONE, den), (q, n)
    assert time.perf_counter() - start < 5


# -- 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_c2_functional_equation():
    start = time.perf_counter()
    classes = []
    for q in (5, 7):
        classes.append((VirtualMotive.point(q), 1, Fraction(1)))
    for q in (2, 3, 5):
        counts = count_tower(projective_space(1), make_field(q), 4)
        classes.append((fitted_class(counts, q, 0, 2), 2, Fraction(1, q)))
    for q in (2, 3):
        counts = count_tower(projective_space(2), make_field(q), 5)
        classes.append((fitted_class(counts, q, 0, 3), 3, Fraction(1, q**3)))
    for q in (5, 7):
        for E in CURVES:
            classes.append((elliptic_class(E, q), 0, Fraction(1)))
    for M, chi, det in classes:
        rep = verify_functional_equation(M)
        assert rep.holds, M
        assert rep.chi == euler_char(M)
        assert rep.det == det_frobenius(M)
        assert (rep.chi, rep.det) == (chi, det)
    assert time.perf_counter() - start < 5


@pytest.mark.criterion(2)
def test_c2_elliptic_classes_come_from_enumeration():
    # cross-check the character-sum counts against raw projective enumeration over F_5
    E = CURVES[0]
    proj = VarietySpec.build(["x", "y", "z"], ["y^2*z - x^3 - x*z^2"], kind="projective")
    assert count_tower(proj, make_field(5), 3) == elliptic_counts(E, make_field(5), 3)


# -- 3 ---------------------------------------------------------------------------

@pytest.mark.criterion(3)
def test_c3_weil_weights():
    for q in (5, 7):
        for E in CURVES:
            M = elliptic_class(E, q)
            assert weight_profile(M) == {0: 1, 1: -2, 2: 1}
            num = M.zeta().num
            assert P.degree(num) == 2
            for gamma in _inverse_roots(num):
                assert abs(abs(gamma) - math.sqrt(q)) < 1e-9
    bad = from_rational(RationalFunctionQ.make([1], [1, -3]), 2)
    with pytest.raises(NotWeil):
        weight_profile(bad)


# -- 4 ---------------------------------------------------------------------------

@pytest.mark.criterion(4)
def test_c4_trace_formula_fibers():
    specs = [VarietySpec.build(["x", "y"], ["x*y - 1"]), VarietySpec.build(["x", "y"], ["y^2 - x^3 - x"])]
    for V in specs:
        for p in (5, 7):
            for n in (1, 2, 3):
                F = make_field(p, n)
                fibers = fiber_partition(V, "x", F)
                assert len(fibers) == F.q
                assert sum(fibers.values()) == count_points(V, F)


# -- 5 ---------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_c5_kummer_twist_average():
    checked = 0
    for q in (5, 7, 13):
        F = make_field(q)
        for n in range(1, 7):
            if (q - 1) % n:
                continue
            for g in ("y", "y^2 + 1"):
                twisted, base, ok = kummer_twist_check(g, n, F)
                assert ok and sum(twisted) == n * base, (q, n, g)
                checked += 1
    assert checked == 2 * (3 + 4 + 5)


# -- 6 ---------------------------------------------------------------------------

C6_CUTOFF = 200


def c6_factors(p):
    """Local zeta expansions at p: point, P^1 and a good elliptic factor."""
    E = CURVES[0]
    factors = [RationalFunctionQ.make([1], [1, -1]), RationalFunctionQ.make([1], P.mul(P.poly([1, -1]), P.poly([1, -p])))]
    if p >= 5:
        ap = p + 1 - weierstrass_count(E, make_field(p))
        factors.append(RationalFunctionQ.make([1, -ap, p], P.mul(P.poly([1, -1]), P.poly([1, -p]))))
    return [from_euler_factor(R, p, C6_CUTOFF) for R in factors], factors


def power_sum_oracle(R: RationalFunctionQ, p: int, K: int) -> list[Fraction]:
    """u-coefficients of prod_{m >= 0} R(p^-m u) through u^K.

    With log R = sum c_k u^k the product has logarithm sum c_k u^k / (1 - p^-k).
    """
    logR = [Fraction(0)] + [c / k for k, c in enumerate(series_log_derivative_counts(R, K), 1)]
    L = [Fraction(0)] + [logR[k] / (1 - Fraction(1, p**k)) for k in range(1, K + 1)]
    # exponentiate: E' = L' E
    E = [Fraction(1)] + [Fraction(0)] * K
    for n in range(1, K + 1):
        E[n] = sum((k * L[k] * E[n - k] for k in range(1, n + 1)), Fraction(0)) / n
    return E


@pytest.mark.criterion(6)
def test_c6_solver_inverts_shift_and_matches_exact_product():
    for p in (2, 3, 5):
        series, rationals = c6_factors(p)
        for f, R in zip(series, rationals):
            g = solve_shift_equation(f)
            assert g / g.shift_argument(1) == f
            # telescoped identity: g(s) = prod_{m=0}^{8} f(s+m) * g(s+9)
            tele = g.shift_argument(9)
            for m in range(9):
                tele = tele * f.shift_argument(m)
            assert tele == g
            # the exact infinite product prod_{m >= 0} f(s+m)
            K = 0
            while p ** (K + 1) <= C6_CUTOFF:
                K += 1
            oracle = power_sum_oracle(R, p, K)
            for n in range(1, C6_CUTOFF + 1):
                k = round(math.log(n, p)) if n > 1 else 0
                expected = oracle[k] if p**k == n else Fraction(0)
                assert g[n] == expected, (p, n)


@pytest.mark.criterion(6)
@pytest.mark.xfail(strict=True, reason="a finite product of nine shifts is not the infinite product")
def test_c6_literal_truncated_product():
    for p in (2, 3, 5):
        for f in c6_factors(p)[0]:
            g = solve_shift_equation(f)
            prod = DirichletSeries.identity(C6_CUTOFF)
            for m in range(9):
                prod = prod * f.shift_argument(m)
            assert g == prod


# -- 7 ---------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_c7_nearby_solver():
    for q in (2, 5):
        R = RationalFunctionQ.make([1, Fraction(-1, q)], [1, -q])
        S = solve_local_near(R, q)
        assert S == RationalFunctionQ.make([1], P.mul(P.poly([1, -1]), P.poly([1, -q])))
    zetas = []
    for q in (5, 7):
        zetas.append((RationalFunctionQ.make([1], [1, -1]), q))
        zetas.append((RationalFunctionQ.make([1], P.mul(P.poly([1, -1]), P.poly([1, -q]))), q))
        for E in CURVES:
            zetas.append((elliptic_class(E, q).zeta(), q))
    for z, q in zetas:
        assert solve_local_near(ltot_from_good_model(z, q), q) == z
    with pytest.raises(NotSolvable):
        solve_local_near(RationalFunctionQ.make([1], [1, -1]), 5)


# -- 8 ---------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_c8_elliptic_global_lnear():
    start = time.perf_counter()
    E = WeierstrassCurve(0, -1, 1, 0, 0)  # discriminant -11
    B, cutoff = 50, 200
    res = elliptic_global_lnear(E, B, cutoff)
    bad = [pl for pl in res.places if pl.tag != "good"]
    assert [pl.norm for pl in bad] == [11]
    p0 = 11
    split = legendre(-E.c6, p0) == 1
    assert bad[0].tag == ("multiplicative_split" if split else "multiplicative_nonsplit")
    # node tangents: a split node has p singular-model points, a nonsplit one p + 2
    assert weierstrass_count(E, make_field(p0)) == (p0 if split else p0 + 2)
    sign = 1 if split else -1
    assert res.series[p0] == sign * (1 + p0)
    for pl in res.places:
        if pl.tag == "good":
            count = count_points(E.as_variety(), make_field(pl.norm)) + 1
            ap = pl.norm + 1 - count
            assert dict(pl.extra)["a_p"] == ap
            assert res.series[pl.norm] == ap
    assert res.skipped == (2, 3)
    assert time.perf_counter() - start < 30


# -- 9 ---------------------------------------------------------------------------

@pytest.mark.criterion(9)
def test_c9_function_field():
    L = assemble_ff(projective_line_places(2, 6), 6, (0, 2), 2)
    assert L == RationalFunctionQ.make([1], [1, -3, 2])
    assert verify_ff_functional_equation(L, L, 2) == (2, 2)


# -- 10 --------------------------------------------------------------------------

@pytest.mark.criterion(10)
def test_c10_abscissa_and_evaluation():
    for n in (0, 1, 2):
        assert abscissa_bound(2 * n, 0) == n + 1
        assert abscissa_bound(2 * n, 7) == n + 1
    ev = evaluate(DirichletSeries.riemann_zeta(10**4), 2.0)
    assert abs(ev.value - math.pi**2 / 6) < 1e-3
