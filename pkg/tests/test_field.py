import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from motzeta.errors import DivisionByZero, FieldMismatch, NotPrime, TooLarge
from motzeta.field import (
    extend,
    field_of_order,
    is_irreducible_mod_p,
    least_irreducible,
    make_field,
    prime_power,
)

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 4)]


def naive_mul(F, a, b):
    """Schoolbook product of coordinate vectors reduced by the modulus."""
    p, e, m = F.p, F.e, F.modulus
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * m[i]) % p
    return tuple(prod[:e])


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    with pytest.raises(NotPrime):
        prime_power(12)
    with pytest.raises(NotPrime):
        make_field(9)


def test_least_irreducible_moduli():
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)
    # nothing smaller in the ordering is irreducible
    for p, e in [(2, 3), (3, 2), (5, 2)]:
        m = least_irreducible(p, e)
        key = sum(c * p**i for i, c in enumerate(m[:-1]))
        for k in range(key):
            digits = [(k // p**i) % p for i in range(e)] + [1]
            assert not is_irreducible_mod_p(digits, p)


@pytest.mark.parametrize("p,e", SMALL)
def test_multiplication_matches_schoolbook(p, e):
    F = make_field(p, e)
    elems = list(F.elements())
    for a, b in itertools.product(elems[: min(len(elems), 30)], repeat=2):
        assert (a * b).coords == naive_mul(F, a.coords, b.coords)


@pytest.mark.parametrize("p,e", SMALL)
def test_tables_are_consistent(p, e):
    F = make_field(p, e)
    t = F.tables
    g = F.from_index(t.generator)
    assert sorted(t.exp.tolist()) == list(range(1, F.q))
    x = F.one
    for k in range(F.q - 1):
        assert t.exp[k] == x.index and t.log[x.index] == k
        x = x * g
    assert x == F.one
    for k in range(F.q - 1):
        one_plus = F.from_index(int(t.exp[k])) + F.one
        assert t.zech[k] == t.log[one_plus.index]


@pytest.mark.parametrize("p,e", SMALL)
def test_inverses_and_frobenius(p, e):
    F = make_field(p, e)
    for a in F.elements():
        if not a.is_zero():
            assert a * a.inv() == F.one
        assert a.frobenius(e) == a
        assert (a * a).frobenius() == a.frobenius() * a.frobenius()
    with pytest.raises(DivisionByZero):
        F.zero.inv()
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero


def test_examples():
    F4 = make_field(2, 2)
    x = F4.gen
    assert x * x == x + F4.one
    assert len(list(F4.elements())) == 4
    F9 = field_of_order(9)
    assert F9.modulus == (1, 0, 1)
    assert F9.gen ** 2 == F9.from_int(-1)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        make_field(5).one + make_field(7).one


def test_cap(monkeypatch):
    monkeypatch.setenv("MOTZETA_ENUM_CAP", "100")
    with pytest.raises(TooLarge):
        make_field(2, 7)
    assert make_field(2, 6).q == 64


@pytest.mark.parametrize("p,e,n", [(2, 1, 3), (2, 2, 2), (2, 2, 3), (3, 2, 2), (5, 1, 2)])
def test_extension_embedding_is_a_ring_map(p, e, n):
    F = make_field(p, e)
    big, emb = extend(F, n)
    assert big.q == F.q**n
    elems = list(F.elements())
    images = [emb(a) for a in elems]
    assert len({im.index for im in images}) == len(elems)
    for a, b in itertools.product(elems, repeat=2):
        assert emb(a + b) == emb(a) + emb(b)
        assert emb(a * b) == emb(a) * emb(b)
    # the image is the fixed field of Frobenius^e
    for im in images:
        assert im.frobenius(e) == im


def test_tables_large_field_is_fast():
    F = make_field(7, 6)
    t = F.tables
    assert t.exp.shape == (F.q - 1,)
    assert np.all(t.log[t.exp] == np.arange(F.q - 1))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_field_axioms(pe, i, j, k):
    F = make_field(*pe)
    a, b, c = (F.from_index(v % F.q) for v in (i, j, k))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == F.zero
    assert a ** (F.q) == a
