"""Finite fields F_{p^e} in a polynomial basis, with explicit tower embeddings.

Elements are coordinate tuples ``(c_0, ..., c_{e-1})`` meaning
``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` modulo the field's modulus.  The same
element is also addressed by its integer index ``sum c_i p^i``, which is what
the counting kernels and the log/Zech tables use.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotPrime, TooLarge

DEFAULT_ENUM_CAP = 1 << 22
CAP_ENV_VAR = "MOTZETA_ENUM_CAP"


def enumeration_cap() -> int:
    """Largest enumeration size allowed; overridable through ``MOTZETA_ENUM_CAP``."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw:
        return int(raw)
    return DEFAULT_ENUM_CAP


def check_cap(size: int, what: str = "enumeration") -> None:
    cap = enumeration_cap()
    if size > cap:
        raise TooLarge(f"{what} of size {size} exceeds the enumeration cap {cap}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p^e``; raises NotPrime when q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p, e = fs[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# -- polynomials over F_p as ascending coefficient lists ---------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, k, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while k:
        if k & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        k >>= 1
    return result


def is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (ascending coefficients)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for r in prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Least monic irreducible of degree e, ordering by the integer ``sum c_i p^i``."""
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        if low[0] == 0:
            continue
        f = low + [1]
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields -------------------------------------------------------------------

@dataclass(frozen=True)
class FieldTables:
    """Discrete-log tables for one field.

    ``log[i]`` is the discrete log of the element with index i (``-1`` for
    zero), ``exp[k]`` is the index of ``g^k``, ``zech[k]`` is ``log(1 + g^k)``
    (``-1`` when that sum vanishes) and ``digits`` holds the coordinates of
    every index.
    """

    generator: int
    exp: np.ndarray
    log: np.ndarray
    zech: np.ndarray
    digits: np.ndarray


@dataclass(frozen=True)
class FieldHandle:
    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self):
        return f"FieldHandle(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    # element construction
    def element(self, coords) -> "FieldElement":
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) > self.e:
            raise ValueError("too many coordinates")
        coords = coords + (0,) * (self.e - len(coords))
        return FieldElement(self, coords)

    def from_index(self, idx: int) -> "FieldElement":
        return FieldElement(self, self.decode(idx))

    def from_int(self, n: int) -> "FieldElement":
        """Image of an integer under Z -> F_p -> F."""
        return self.element((n % self.p,))

    @property
    def zero(self) -> "FieldElement":
        return self.from_int(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_int(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x, i.e. a root of the modulus."""
        if self.e == 1:
            return self.from_int(-self.modulus[0])
        return self.element((0, 1))

    def encode(self, coords) -> int:
        idx = 0
        for c in reversed(coords):
            idx = idx * self.p + c
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            idx, r = divmod(idx, self.p)
            out.append(r)
        return tuple(out)

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.q):
            yield self.from_index(i)

    # coordinate arithmetic shared by FieldElement
    def _mul_coords(self, a, b):
        prod = _pmul(list(a), list(b), self.p)
        red = _pmod(prod, list(self.modulus), self.p) if prod else []
        red = list(red[: self.e]) + [0] * (self.e - len(red))
        return tuple(red)

    @cached_property
    def tables(self) -> FieldTables:
        check_cap(self.q, "field table")
        return _build_tables(self)

    def multiplicative_generator(self) -> "FieldElement":
        return self.from_index(self.tables.generator)


def make_field(p: int, e: int = 1) -> FieldHandle:
    """F_{p^e} with the least irreducible modulus; raises NotPrime / TooLarge."""
    if p < 2 or e < 1:
        raise NotPrime(f"need p >= 2 and e >= 1, got p={p}, e={e}")
    if not is_prime(p):
        raise NotPrime(f"{p} is composite")
    check_cap(p**e, "field")
    return FieldHandle(p, e, least_irreducible(p, e))


def field_of_order(q: int) -> FieldHandle:
    p, e = prime_power(q)
    return make_field(p, e)


@dataclass(frozen=True)
class FieldElement:
    owner: FieldHandle
    coords: tuple[int, ...]

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.owner.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.owner != self.owner:
            raise FieldMismatch(f"{self.owner!r} vs {other.owner!r}")
        return other

    @property
    def index(self) -> int:
        return self.owner.encode(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.owner.p
        return FieldElement(self.owner, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.owner.p
        return FieldElement(self.owner, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.owner, self.owner._mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = self.owner.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # x^(q-2) = x^-1 on F*
        return self ** (self.owner.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def frobenius(self, k: int = 1):
        return self ** (self.owner.p**k)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else (f"{c}*x" if i == 1 else f"{c}*x^{i}"))
        return " + ".join(terms) if terms else "0"


def _element_order_is_full(F: FieldHandle, g: FieldElement, factors) -> bool:
    n = F.q - 1
    return all(g ** (n // r) != F.one for r in factors)


def _mult_matrix(F: FieldHandle, g: FieldElement) -> np.ndarray:
    """Matrix M with coords(g*y) = M @ coords(y) mod p."""
    cols = []
    for i in range(F.e):
        basis = F.element([0] * i + [1])
        cols.append((g * basis).coords)
    return np.array(cols, dtype=np.int64).T


def _build_tables(F: FieldHandle) -> FieldTables:
    p, e, q = F.p, F.e, F.q
    factors = prime_factors(q - 1) if q > 2 else []
    gen = None
    for idx in range(1, q):
        cand = F.from_index(idx)
        if _element_order_is_full(F, cand, factors):
            gen = cand
            break
    assert gen is not None
    n = q - 1
    powers = np.zeros((n, e), dtype=np.int64)
    powers[0, 0] = 1
    filled = 1
    step = _mult_matrix(F, gen)
    # doubling: powers[k:2k] = (multiplication by g^k) applied to powers[0:k]
    while filled < n:
        take = min(filled, n - filled)
        powers[filled : filled + take] = (powers[:take] @ step.T) % p
        filled += take
        step = (step @ step) % p
    weights = p ** np.arange(e, dtype=np.int64)
    exp = powers @ weights
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(n, dtype=np.int64)
    plus_one = powers.copy()
    plus_one[:, 0] = (plus_one[:, 0] + 1) % p
    zech = log[plus_one @ weights]
    digits = np.zeros((q, e), dtype=np.int64)
    rest = np.arange(q, dtype=np.int64)
    for i in range(e):
        digits[:, i] = rest % p
        rest //= p
    for arr in (exp, log, zech, digits):
        arr.setflags(write=False)
    return FieldTables(gen.index, exp, log, zech, digits)


@dataclass(frozen=True)
class Embedding:
    """Ring map F -> F_{q^n} determined by the image of x."""

    source: FieldHandle
    target: FieldHandle
    images: tuple[tuple[int, ...], ...]

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.owner != self.source:
            raise FieldMismatch("element does not belong to the embedding's source")
        acc = self.target.zero
        for c, img in zip(a.coords, self.images):
            if c:
                acc = acc + FieldElement(self.target, img) * c
        return acc


def _root_indices(target: FieldHandle, poly: tuple[int, ...]) -> np.ndarray:
    """Indices of all roots in ``target`` of a polynomial with F_p coefficients."""
    t = target.tables
    q = target.q
    logs = t.log[1:]
    value = np.zeros((q - 1, target.e), dtype=np.int64)
    for i, c in enumerate(poly):
        if c % target.p:
            idx = t.exp[(i * logs) % (q - 1)]
            value = (value + c * t.digits[idx]) % target.p
    roots = np.nonzero(~value.any(axis=1))[0] + 1
    if poly[0] % target.p == 0:
        roots = np.concatenate([[0], roots])
    return roots


def extend(F: FieldHandle, n: int) -> tuple[FieldHandle, Embedding]:
    """F_{q^n} (its own least modulus over F_p) and an embedding of F into it.

    The image of x is the root of F's modulus with the smallest index.
    """
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    check_cap(F.q**n, "field")
    big = make_field(F.p, F.e * n)
    if F.e == 1:
        images = (big.one.coords,)
    else:
        alpha = big.from_index(int(_root_indices(big, F.modulus).min()))
        images = tuple((alpha**i).coords for i in range(F.e))
    return big, Embedding(F, big, images)
