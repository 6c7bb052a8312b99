"""Truncated formal Dirichlet series with exact rational coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

from .errors import BadLeadingCoefficient, CutoffMismatch, NotInvertible
from .series import RationalFunctionQ


@dataclass(frozen=True)
class DirichletSeries:
    """sum_{n <= cutoff} a_n n^(-s); ``coeffs[n - 1]`` is a_n."""

    cutoff: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.cutoff:
            raise ValueError("need exactly cutoff coefficients")

    @classmethod
    def of(cls, coeffs: Sequence) -> "DirichletSeries":
        return cls(len(coeffs), tuple(Fraction(c) for c in coeffs))

    @classmethod
    def identity(cls, cutoff: int) -> "DirichletSeries":
        return cls(cutoff, (Fraction(1),) + (Fraction(0),) * (cutoff - 1))

    @classmethod
    def riemann_zeta(cls, cutoff: int) -> "DirichletSeries":
        return cls(cutoff, (Fraction(1),) * cutoff)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n - 1]

    def truncate(self, cutoff: int) -> "DirichletSeries":
        if cutoff > self.cutoff:
            raise CutoffMismatch("truncation cannot extend a series")
        return DirichletSeries(cutoff, self.coeffs[:cutoff])

    def _check(self, other):
        if self.cutoff != other.cutoff:
            raise CutoffMismatch(f"cutoffs {self.cutoff} and {other.cutoff} differ; truncate explicitly")

    def __mul__(self, other):
        return dirichlet_mul(self, other)

    def __truediv__(self, other):
        return dirichlet_mul(self, dirichlet_inv(other))

    def shift_argument(self, m: int) -> "DirichletSeries":
        """f(s + m): a_n becomes a_n / n^m."""
        return DirichletSeries(self.cutoff, tuple(a / Fraction(n) ** m for n, a in enumerate(self.coeffs, 1)))

    def to_json(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "a": {str(n): str(a) for n, a in enumerate(self.coeffs, 1) if a != 0},
        }

    @classmethod
    def from_json(cls, doc) -> "DirichletSeries":
        N = int(doc["cutoff"])
        coeffs = [Fraction(0)] * N
        for k, v in doc.get("a", {}).items():
            n = int(k)
            if 1 <= n <= N:
                coeffs[n - 1] = Fraction(v)
        return cls(N, tuple(coeffs))


def dirichlet_mul(f: DirichletSeries, g: DirichletSeries) -> DirichletSeries:
    f._check(g)
    N = f.cutoff
    if sum(1 for b in g.coeffs if b) > sum(1 for a in f.coeffs if a):
        f, g = g, f
    # loop over the sparser factor's support: cost sum_e N/e
    fa = f.coeffs
    b1 = g.coeffs[0] if N else 0
    c = [Fraction(0)] + ([a * b1 for a in fa] if b1 != 1 else list(fa))
    for e, b in enumerate(g.coeffs[1:], 2):
        if not b:
            continue
        for d in range(1, N // e + 1):
            a = fa[d - 1]
            if a:
                c[d * e] += a if b == 1 else a * b
    return DirichletSeries(N, tuple(c[1:]))


def dirichlet_inv(f: DirichletSeries) -> DirichletSeries:
    N = f.cutoff
    a1 = f.coeffs[0] if N else Fraction(1)
    if a1 == 0:
        raise NotInvertible("a_1 = 0")
    inv1 = 1 / a1
    acc = [Fraction(0)] * (N + 1)
    b = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        b[n] = inv1 if n == 1 else -inv1 * acc[n]
        if b[n]:
            for d in range(2, N // n + 1):
                ad = f.coeffs[d - 1]
                if ad:
                    acc[d * n] += ad * b[n]
    return DirichletSeries(N, tuple(b[1:]))


def from_euler_factor(R: RationalFunctionQ, norm: int, cutoff: int) -> DirichletSeries:
    """R(norm^(-s)) as a Dirichlet series: the u^k coefficient sits at index norm^k."""
    if norm < 2:
        raise ValueError("norm must be >= 2")
    kmax = 0
    while norm ** (kmax + 1) <= cutoff:
        kmax += 1
    S = R.series(kmax)
    coeffs = [Fraction(0)] * cutoff
    for k in range(kmax + 1):
        if norm**k <= cutoff:
            coeffs[norm**k - 1] = S[k]
    return DirichletSeries(cutoff, tuple(coeffs))


def euler_product(factors: Iterable[tuple[int, RationalFunctionQ]], cutoff: int) -> DirichletSeries:
    """Product of local factors; places of norm > cutoff cannot contribute and are skipped."""
    result = DirichletSeries.identity(cutoff)
    for norm, R in sorted(factors, key=lambda f: (f[0], f[1].num, f[1].den)):
        if norm > cutoff or R.is_one():
            continue
        result = dirichlet_mul(result, from_euler_factor(R, norm, cutoff))
    return result


def solve_shift_equation(f: DirichletSeries) -> DirichletSeries:
    """The unique g with g(1) = 1 and g(s)/g(s+1) = f(s) through the cutoff.

    From g(s) = f(s) g(s+1):  b_n (1 - 1/n) = sum_{d | n, d > 1} a_d b_{n/d} / (n/d).
    """
    N = f.cutoff
    if N == 0:
        return f
    if f.coeffs[0] != 1:
        raise BadLeadingCoefficient(f"a_1 must be 1, got {f.coeffs[0]}")
    acc = [Fraction(0)] * (N + 1)
    b = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        b[n] = Fraction(1) if n == 1 else acc[n] * n / (n - 1)
        if b[n]:
            w = b[n] / n
            for d in range(2, N // n + 1):
                ad = f.coeffs[d - 1]
                if ad:
                    acc[d * n] += ad * w
    return DirichletSeries(N, tuple(b[1:]))


def abscissa_bound(w: int, H: int) -> Fraction:
    """Upper bound w/2 + 1 for the abscissa of absolute convergence of an Euler product
    whose local inverse roots have modulus <= p^(w/2) and whose factor heights are <= H."""
    if H < 0:
        raise ValueError("height bound must be >= 0")
    return Fraction(w, 2) + 1


@dataclass(frozen=True)
class Evaluation:
    value: float
    tail_note: Optional[float]


def evaluate(f: DirichletSeries, s: float) -> Evaluation:
    """Partial sum in double precision; for s > 1 also max|a_n| * sum_{n > N} n^(-s)."""
    total = math.fsum(float(a) * n ** (-s) for n, a in enumerate(f.coeffs, 1) if a)
    tail = None
    if s > 1:
        amax = max((abs(float(a)) for a in f.coeffs), default=0.0)
        tail = amax * float(mpmath.zeta(s, f.cutoff + 1))
    return Evaluation(total, tail)
