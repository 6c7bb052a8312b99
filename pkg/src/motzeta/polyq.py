"""Univariate polynomials over Q as tuples of Fractions, lowest degree first.

The zero polynomial is ``()``.  All functions return trimmed tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple  # tuple[Fraction, ...]

ONE: Poly = (Fraction(1),)


def poly(coeffs: Iterable) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, c) -> Poly:
    c = Fraction(c)
    return poly(x * c for x in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly(out)


def power(a: Poly, k: int) -> Poly:
    result = ONE
    while k:
        if k & 1:
            result = mul(result, a)
        a = mul(a, a)
        k >>= 1
    return result


def divmod_(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), tuple(rem)
    quo = [Fraction(0)] * (len(rem) - db)
    lead = b[-1]
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        quo[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return poly(quo), poly(rem[:db])


def exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("division is not exact")
    return q


def monic(a: Poly) -> Poly:
    return scale(a, 1 / a[-1]) if a else a


def normalize_constant(a: Poly) -> Poly:
    """Scale so the constant term is 1 (requires a(0) != 0)."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("constant term is zero")
    return scale(a, 1 / a[0])


def gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized to constant term 1 when possible, else monic."""
    a, b = poly(a), poly(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    if not a:
        return a
    return normalize_constant(a) if a[0] != 0 else monic(a)


def derivative(a: Poly) -> Poly:
    return poly(i * c for i, c in enumerate(a) if i)


def evaluate(a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def rescale(a: Poly, c) -> Poly:
    """a(c*t); multiplies every inverse root by c."""
    c = Fraction(c)
    return poly(x * c**i for i, x in enumerate(a))


def substitute_power(a: Poly, m: int) -> Poly:
    """a(t^m)."""
    out = [Fraction(0)] * ((len(a) - 1) * m + 1) if a else []
    for i, x in enumerate(a):
        out[i * m] = x
    return poly(out)


def reverse(a: Poly) -> Poly:
    """t^deg(a) * a(1/t)."""
    return poly(reversed(a))


def is_one(a: Poly) -> bool:
    return a == ONE


def resultant(a: Poly, b: Poly) -> Fraction:
    """Res(a, b) by the Euclidean algorithm over Q."""
    if not a or not b:
        return Fraction(0)
    da, db = degree(a), degree(b)
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    sign = 1
    res = Fraction(1)
    while True:
        da, db = degree(a), degree(b)
        if db == 0:
            return sign * res * b[0] ** da
        _, r = divmod_(a, b)
        if not r:
            return Fraction(0)
        dr = degree(r)
        # Res(a, b) = (-1)^(da*db) lc(b)^(da - dr) Res(b, r)
        if da * db % 2:
            sign = -sign
        res *= b[-1] ** (da - dr)
        a, b = b, r


def squarefree_decomposition(a: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: a = c * prod f_i^i with f_i squarefree, pairwise coprime.

    Factors are normalized to constant term 1 when a(0) != 0.
    """
    a = poly(a)
    if degree(a) < 1:
        return []
    out = []
    d = derivative(a)
    g = gcd(a, d)
    b = exact_div(a, g)
    c = exact_div(d, g)
    i = 1
    while degree(b) > 0:
        dd = sub(c, derivative(b))
        f = gcd(b, dd)
        if degree(f) > 0:
            out.append((f, i))
        b = exact_div(b, f)
        c = exact_div(dd, f)
        i += 1
    return out


def from_roots(roots: Sequence) -> Poly:
    """prod (1 - r t) for the given inverse roots."""
    result = ONE
    for r in roots:
        result = mul(result, poly([1, -Fraction(r)]))
    return result


# -- JSON helpers ---------------------------------------------------------

def fraction_to_json(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fraction_from_json(v) -> Fraction:
    if isinstance(v, float):
        raise ValueError("floating-point values are not accepted in exact fields")
    return Fraction(v)


def poly_to_json(a: Poly) -> list:
    return [fraction_to_json(c) for c in a] if a else [0]


def poly_from_json(v) -> Poly:
    return poly(fraction_from_json(c) for c in v)
