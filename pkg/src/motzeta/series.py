"""Exact power series over Q, the counts <-> Z-function bridge, and rational fitting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polyq as P
from .errors import InsufficientTerms, NoFit, ZeroConstantTerm


@dataclass(frozen=True)
class PowerSeriesQ:
    """Coefficients of t^0..t^cutoff; everything beyond is unknown."""

    coeffs: tuple
    cutoff: int

    def __post_init__(self):
        if len(self.coeffs) != self.cutoff + 1:
            raise ValueError("need exactly cutoff + 1 coefficients")

    @classmethod
    def of(cls, coeffs: Sequence) -> "PowerSeriesQ":
        c = tuple(Fraction(x) for x in coeffs)
        return cls(c, len(c) - 1)

    @classmethod
    def from_poly(cls, a: P.Poly, cutoff: int) -> "PowerSeriesQ":
        c = list(a[: cutoff + 1]) + [Fraction(0)] * (cutoff + 1 - len(a))
        return cls(tuple(c), cutoff)

    def __getitem__(self, n):
        return self.coeffs[n]

    def truncate(self, cutoff: int) -> "PowerSeriesQ":
        if cutoff > self.cutoff:
            raise ValueError("cannot extend a series past its cutoff")
        return PowerSeriesQ(self.coeffs[: cutoff + 1], cutoff)

    def __add__(self, other):
        n = min(self.cutoff, other.cutoff)
        return PowerSeriesQ(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), n)

    def __mul__(self, other):
        n = min(self.cutoff, other.cutoff)
        a, b = self.coeffs, other.coeffs
        out = [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)]
        return PowerSeriesQ(tuple(out), n)

    def inverse(self) -> "PowerSeriesQ":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.cutoff + 1):
            s = sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out.append(-s * inv0)
        return PowerSeriesQ(tuple(out), self.cutoff)

    def __truediv__(self, other):
        n = min(self.cutoff, other.cutoff)
        return self.truncate(n) * other.truncate(n).inverse()

    def derivative(self) -> "PowerSeriesQ":
        """d/dt; the cutoff drops by one."""
        c = tuple(i * self.coeffs[i] for i in range(1, self.cutoff + 1))
        return PowerSeriesQ(c, self.cutoff - 1) if c else PowerSeriesQ((Fraction(0),), 0)


@dataclass(frozen=True)
class RationalFunctionQ:
    """num/den with num(0) = den(0) = 1 and gcd(num, den) = 1."""

    num: tuple
    den: tuple

    def __post_init__(self):
        if not self.num or not self.den or self.num[0] != 1 or self.den[0] != 1:
            raise ZeroConstantTerm("numerator and denominator need constant term 1")

    @classmethod
    def make(cls, num, den=P.ONE) -> "RationalFunctionQ":
        """Normalize and reduce an arbitrary quotient with nonzero constant terms."""
        num, den = P.poly(num), P.poly(den)
        if not num or not den or num[0] == 0 or den[0] == 0:
            raise ZeroConstantTerm("constant terms must be nonzero")
        g = P.gcd(num, den)
        if P.degree(g) > 0:
            num, den = P.exact_div(num, g), P.exact_div(den, g)
        return cls(P.normalize_constant(num), P.normalize_constant(den))

    @classmethod
    def one(cls) -> "RationalFunctionQ":
        return cls(P.ONE, P.ONE)

    def __mul__(self, other):
        return RationalFunctionQ.make(P.mul(self.num, other.num), P.mul(self.den, other.den))

    def __truediv__(self, other):
        return RationalFunctionQ.make(P.mul(self.num, other.den), P.mul(self.den, other.num))

    def inverse(self):
        return RationalFunctionQ(self.den, self.num)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunctionQ.make(P.power(self.num, k), P.power(self.den, k))

    def rescale(self, c) -> "RationalFunctionQ":
        """R(c*t)."""
        return RationalFunctionQ(P.rescale(self.num, c), P.rescale(self.den, c))

    def substitute_power(self, m: int) -> "RationalFunctionQ":
        """R(t^m)."""
        return RationalFunctionQ.make(P.substitute_power(self.num, m), P.substitute_power(self.den, m))

    @property
    def degree(self) -> int:
        """deg num - deg den."""
        return P.degree(self.num) - P.degree(self.den)

    def series(self, cutoff: int) -> PowerSeriesQ:
        return PowerSeriesQ.from_poly(self.num, cutoff) / PowerSeriesQ.from_poly(self.den, cutoff)

    def is_one(self) -> bool:
        return self.num == P.ONE and self.den == P.ONE

    def __call__(self, x):
        return P.evaluate(self.num, x) / P.evaluate(self.den, x)

    def to_json(self) -> dict:
        return {"num": P.poly_to_json(self.num), "den": P.poly_to_json(self.den)}

    @classmethod
    def from_json(cls, doc) -> "RationalFunctionQ":
        return cls.make(P.poly_from_json(doc.get("num", [1])), P.poly_from_json(doc.get("den", [1])))

    def __repr__(self):
        return f"RationalFunctionQ(num={P.poly_to_json(self.num)}, den={P.poly_to_json(self.den)})"


def zeta_series_from_counts(counts: Sequence[int]) -> PowerSeriesQ:
    """exp(sum N_n t^n / n) through t^len(counts)."""
    counts = [Fraction(c) for c in counts]
    z = [Fraction(1)]
    for n in range(1, len(counts) + 1):
        z.append(sum((counts[k - 1] * z[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return PowerSeriesQ(tuple(z), len(counts))


def series_log_derivative_counts(R: RationalFunctionQ, N: int) -> list[Fraction]:
    """The N_n with exp(sum N_n t^n/n) = R, read off t * R'/R."""
    S = R.series(N + 1)
    tlog = S.derivative() / S.truncate(N)
    # coefficient of t^n in t*R'/R is the t^(n-1) coefficient of R'/R
    return [tlog[n - 1] for n in range(1, N + 1)]


def solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]):
    """One exact solution of rows @ x = rhs (free variables set to 0), or None."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def rational_fit(S: PowerSeriesQ, dnum: int, dden: int) -> RationalFunctionQ:
    """P/Q with deg P <= dnum, deg Q <= dden matching S through its whole cutoff."""
    if S.cutoff < dnum + dden + 2:
        raise InsufficientTerms(
            f"cutoff {S.cutoff} < dnum + dden + 2 = {dnum + dden + 2}: need two surplus terms"
        )
    if S[0] != 1:
        raise NoFit("series must start with 1")
    s = S.coeffs
    # unknowns q_1..q_dden; coefficient k of S*Q vanishes for dnum < k <= cutoff
    rows, rhs = [], []
    for k in range(dnum + 1, S.cutoff + 1):
        rows.append([s[k - j] if k - j >= 0 else Fraction(0) for j in range(1, dden + 1)])
        rhs.append(-s[k])
    if dden:
        qs = solve_linear(rows, rhs)
        if qs is None:
            raise NoFit(f"no rational function of degrees ({dnum}, {dden}) matches the series")
    else:
        qs = []
        if any(r != 0 for r in rhs):
            raise NoFit(f"series is not a polynomial of degree <= {dnum}")
    Q = P.poly([1] + qs)
    num = (PowerSeriesQ.from_poly(Q, S.cutoff) * S).coeffs[: dnum + 1]
    R = RationalFunctionQ.make(num, Q)
    if R.series(S.cutoff).coeffs != S.coeffs:
        raise NoFit("re-expansion disagrees with the series")  # pragma: no cover
    return R


def rational_fit_auto(S: PowerSeriesQ, start: tuple[int, int] = (1, 1)) -> RationalFunctionQ:
    """Try rational_fit with doubling degree bounds until it succeeds or terms run out."""
    dnum, dden = start
    last = None
    while dnum + dden + 2 <= S.cutoff:
        try:
            return rational_fit(S, dnum, dden)
        except NoFit as exc:
            last = exc
        dnum, dden = max(1, 2 * dnum), max(1, 2 * dden)
    if last is None:
        raise InsufficientTerms(f"cutoff {S.cutoff} too small for degrees {start}")
    raise NoFit(f"no fit found up to the available cutoff {S.cutoff}") from last
