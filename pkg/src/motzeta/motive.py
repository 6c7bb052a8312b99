"""Virtual motives over F_q, modelled by their zeta functions in factored form.

A class is a finite set of *atoms* ``(f, m)`` with ``f(0) = 1``, f squarefree
and the f pairwise coprime; its zeta function is ``prod f(t)^(-m)``.  So a
positive multiplicity is a pole: the point is ``(1 - t, +1)`` and the
Lefschetz class is ``(1 - q t, +1)``.  The n-th count of ``(f, m)`` is
``m * sum(gamma^n)`` over the inverse roots gamma of f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath
import numpy as np

from . import polyq as P
from .errors import BaseMismatch, NotWeil, ZeroConstantTerm
from .field import prime_power
from .series import RationalFunctionQ, series_log_derivative_counts


@dataclass(frozen=True)
class Atom:
    poly: tuple
    mult: int


def _sort_key(atom: Atom):
    return (len(atom.poly), atom.poly, atom.mult)


def _rational_inverse_roots(f: P.Poly) -> list[Fraction]:
    """Rational inverse roots of f, located numerically and confirmed exactly."""
    if P.degree(f) < 1:
        return []
    monic_rev = [float(c) for c in reversed(P.reverse(f))]  # numpy wants highest degree first
    try:
        approx = np.roots(monic_rev)
    except (OverflowError, np.linalg.LinAlgError):  # pragma: no cover
        return []
    found = []
    for r in approx:
        if abs(r.imag) > 1e-6 * max(1.0, abs(r)):
            continue
        cands = {Fraction(round(r.real))}
        for bound in (10, 1000, 10**6):
            cands.add(Fraction(r.real).limit_denominator(bound))
        for c in cands:
            if c != 0 and c not in found and P.evaluate(f, 1 / c) == 0:
                found.append(c)
                break
    return found


def _split_rational_roots(f: P.Poly) -> list[P.Poly]:
    """Split off linear factors with rational inverse roots; the rest stays together."""
    roots = _rational_inverse_roots(f)
    out = []
    rest = f
    for r in roots:
        lin = P.poly([1, -r])
        rest = P.exact_div(rest, lin)
        out.append(lin)
    if P.degree(rest) > 0:
        out.append(P.normalize_constant(rest))
    return out


def coprime_basis(pairs: Iterable[tuple], keep_zero: bool = False) -> tuple[Atom, ...]:
    """Refine (poly, multiplicity) pairs to squarefree, pairwise coprime atoms.

    Multiplicities of shared factors are summed and zero multiplicities
    dropped unless ``keep_zero``.  Rational linear factors are always split
    off, which keeps weights apart for the usual point-count classes.
    """
    work: list[list] = []
    for f, m in pairs:
        f = P.poly(f)
        if not f or f[0] == 0:
            raise ZeroConstantTerm("atom polynomials need a nonzero constant term")
        if (m == 0 and not keep_zero) or P.degree(f) == 0:
            continue
        for g, k in P.squarefree_decomposition(P.normalize_constant(f)):
            for h in _split_rational_roots(g):
                work.append([h, m * k])
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                a, ma = work[i]
                b, mb = work[j]
                g = P.gcd(a, b)
                if P.degree(g) == 0:
                    continue
                pieces = [(P.exact_div(a, g), ma), (g, ma + mb), (P.exact_div(b, g), mb)]
                rest = [w for k, w in enumerate(work) if k not in (i, j)]
                work = rest + [[P.normalize_constant(h), m] for h, m in pieces if P.degree(h) > 0]
                changed = True
                break
            if changed:
                break
    atoms = [Atom(f, m) for f, m in work if m != 0 or keep_zero]
    return tuple(sorted(atoms, key=_sort_key))


class VirtualMotive:
    """A K0 class over F_q.  Equality means equal zeta functions."""

    __slots__ = ("q", "atoms")

    def __init__(self, q: int, atoms: Iterable[Atom] = ()):
        self.q = q
        self.atoms = tuple(sorted(atoms, key=_sort_key))

    @classmethod
    def from_pairs(cls, q: int, pairs) -> "VirtualMotive":
        return cls(q, coprime_basis(pairs))

    @classmethod
    def zero(cls, q: int) -> "VirtualMotive":
        return cls(q, ())

    @classmethod
    def point(cls, q: int) -> "VirtualMotive":
        return cls(q, (Atom(P.poly([1, -1]), 1),))

    @classmethod
    def lefschetz(cls, q: int) -> "VirtualMotive":
        return cls(q, (Atom(P.poly([1, -q]), 1),))

    def zeta(self) -> RationalFunctionQ:
        num, den = P.ONE, P.ONE
        for a in self.atoms:
            if a.mult > 0:
                den = P.mul(den, P.power(a.poly, a.mult))
            else:
                num = P.mul(num, P.power(a.poly, -a.mult))
        return RationalFunctionQ(num, den)

    def __eq__(self, other):
        if not isinstance(other, VirtualMotive):
            return NotImplemented
        return self.q == other.q and self.zeta() == other.zeta()

    def __hash__(self):
        return hash((self.q, self.zeta()))

    def __repr__(self):
        body = ", ".join(f"({P.poly_to_json(a.poly)}, {a.mult})" for a in self.atoms)
        return f"VirtualMotive(q={self.q}, atoms=[{body}])"

    def is_zero(self) -> bool:
        return not self.atoms

    def _same_base(self, other):
        if self.q != other.q:
            raise BaseMismatch(f"classes over F_{self.q} and F_{other.q}")

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return add(self, negate(other))

    def __mul__(self, other):
        return tensor(self, other)

    def counts(self, N: int) -> list[Fraction]:
        return series_log_derivative_counts(self.zeta(), N)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "atoms": [{"poly": P.poly_to_json(a.poly), "mult": a.mult} for a in self.atoms],
        }

    @classmethod
    def from_json(cls, doc) -> "VirtualMotive":
        pairs = [(P.poly_from_json(a["poly"]), int(a["mult"])) for a in doc.get("atoms", [])]
        return cls.from_pairs(int(doc["q"]), pairs)


def from_rational(R: RationalFunctionQ, q: int) -> VirtualMotive:
    """Class with zeta function R: denominator factors are poles (+), numerator factors zeros (-)."""
    num, den = P.poly(R.num), P.poly(R.den)
    if not num or not den or num[0] == 0 or den[0] == 0:
        raise ZeroConstantTerm("zeta functions need nonzero constant terms")
    return VirtualMotive.from_pairs(q, [(den, 1), (num, -1)])


def add(M: VirtualMotive, N: VirtualMotive) -> VirtualMotive:
    M._same_base(N)
    return VirtualMotive.from_pairs(M.q, [(a.poly, a.mult) for a in M.atoms + N.atoms])


def negate(M: VirtualMotive) -> VirtualMotive:
    return VirtualMotive(M.q, (Atom(a.poly, -a.mult) for a in M.atoms))


def shift(M: VirtualMotive, k: int) -> VirtualMotive:
    """M[k]: odd shifts invert the zeta function."""
    return negate(M) if k % 2 else M


def tate_twist(M: VirtualMotive, r: int) -> VirtualMotive:
    """M(r): inverse roots scale by q^(-r)."""
    c = Fraction(M.q) ** (-r)
    return VirtualMotive(M.q, (Atom(P.rescale(a.poly, c), a.mult) for a in M.atoms))


def _interpolate(xs, ys) -> P.Poly:
    """Lagrange interpolation through (xs, ys) over Q, via Newton divided differences."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = (coef[-1],)
    for i in range(n - 2, -1, -1):
        result = P.add(P.mul(result, P.poly([-xs[i], 1])), P.poly([coef[i]]))
    return result


def composed_product(f: P.Poly, g: P.Poly) -> P.Poly:
    """The polynomial prod (1 - gamma*delta*t) over inverse roots gamma of f, delta of g.

    With F(y) = prod (y - gamma) and B_x(y) = prod (x - delta*y), the resultant
    Res_y(F, B_x) is prod (x - gamma*delta); it is sampled at deg f * deg g + 1
    integer points and interpolated.
    """
    d, e = P.degree(f), P.degree(g)
    if d == 0 or e == 0:
        return P.ONE
    F = P.reverse(f)  # monic, roots gamma
    G = P.reverse(g)  # monic, roots delta
    xs = list(range(d * e + 1))
    ys = []
    for x in xs:
        # y^e G(x/y) = sum_k G_k x^k y^(e-k)
        B = P.poly(reversed([G[k] * Fraction(x) ** k for k in range(e + 1)]))
        ys.append(P.resultant(F, B))
    monic_prod = _interpolate([Fraction(x) for x in xs], ys)
    return P.reverse(monic_prod)


def tensor(M: VirtualMotive, N: VirtualMotive) -> VirtualMotive:
    M._same_base(N)
    pairs = []
    for a in M.atoms:
        for b in N.atoms:
            pairs.append((composed_product(a.poly, b.poly), a.mult * b.mult))
    return VirtualMotive.from_pairs(M.q, pairs)


def _reciprocal(f: P.Poly) -> P.Poly:
    return P.normalize_constant(P.reverse(f))


def dual(M: VirtualMotive) -> VirtualMotive:
    """Inverse roots gamma -> 1/gamma, multiplicities unchanged."""
    return VirtualMotive(M.q, (Atom(_reciprocal(a.poly), a.mult) for a in M.atoms))


def euler_char(M: VirtualMotive) -> int:
    """deg(denominator) - deg(numerator) of the zeta function."""
    return sum(a.mult * P.degree(a.poly) for a in M.atoms)


def _root_product(f: P.Poly) -> Fraction:
    # f = prod (1 - gamma t) has leading coefficient prod(-gamma)
    return (-1) ** P.degree(f) * f[-1]


def det_frobenius(M: VirtualMotive) -> Fraction:
    """prod(alpha)/prod(beta) for zeta = prod(1 - alpha t)/prod(1 - beta t)."""
    det = Fraction(1)
    for a in M.atoms:
        det *= _root_product(a.poly) ** (-a.mult)
    return det


@dataclass(frozen=True)
class FunctionalEquationReport:
    chi: int
    det: Fraction
    holds: bool


def verify_functional_equation(M: VirtualMotive) -> FunctionalEquationReport:
    """Check Z(M*, 1/t) = (-t)^chi det^(-1) Z(M, t) as an identity of rational functions.

    Writing Z(M*, t) = N*/D*, one has Z(M*, 1/t) = t^chi rev(N*)/rev(D*), so
    the identity is the polynomial equation
    det * rev(N*) * D = (-1)^chi * rev(D*) * N.
    """
    chi = euler_char(M)
    det = det_frobenius(M)
    Z = M.zeta()
    Zd = dual(M).zeta()
    chi_dual = P.degree(Zd.den) - P.degree(Zd.num)
    lhs = P.scale(P.mul(P.reverse(Zd.num), Z.den), det)
    rhs = P.scale(P.mul(P.reverse(Zd.den), Z.num), (-1) ** chi)
    holds = chi_dual == chi and lhs == rhs
    return FunctionalEquationReport(chi, det, holds)


def _inverse_roots(f: P.Poly, dps: int = 40) -> list:
    """Complex inverse roots: numpy companion eigenvalues, then one Newton step at high precision."""
    mon = P.reverse(f)
    approx = np.roots([float(c) for c in reversed(mon)])
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in mon]
        dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
        out = []
        for r in approx:
            z = mpmath.mpc(complex(r))
            fz = mpmath.polyval(coeffs[::-1], z)
            dz = mpmath.polyval(dcoeffs[::-1], z)
            if dz != 0:
                z = z - fz / dz
            out.append(z)
    return out


def weight_profile(M: VirtualMotive, tol: float = 1e-9) -> dict[int, int]:
    """Map weight w -> signed multiplicity of inverse roots with |gamma| = q^(w/2).

    Raises NotWeil if a root is not within relative ``tol`` of some q^(w/2),
    or if roots of one atom land in different weights without the atom
    splitting over Q accordingly.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    logq = mpmath.log(M.q)
    profile: dict[int, int] = {}
    for atom in M.atoms:
        roots = _inverse_roots(atom.poly)
        by_weight: dict[int, list] = {}
        for z in roots:
            absz = abs(z)
            w = int(mpmath.nint(2 * mpmath.log(absz) / logq))
            target = mpmath.power(M.q, mpmath.mpf(w) / 2)
            if abs(absz - target) / target > tol:
                raise NotWeil(f"inverse root of modulus {mpmath.nstr(absz, 12)} is not q^(w/2) for q={M.q}")
            by_weight.setdefault(w, []).append(z)
        if len(by_weight) > 1 and not _splits_by_weight(atom.poly, by_weight):
            raise NotWeil("conjugate inverse roots of one factor have different weights")
        for w, zs in by_weight.items():
            profile[w] = profile.get(w, 0) + atom.mult * len(zs)
    return {w: m for w, m in sorted(profile.items()) if m != 0}


def _splits_by_weight(f: P.Poly, by_weight) -> bool:
    """True if every weight group of roots spans a factor of f over Q."""
    for zs in by_weight.values():
        g = [mpmath.mpc(1)]
        for z in zs:
            g = [a - z * b for a, b in zip(g + [0], [0] + g)]
        try:
            cand = P.poly(Fraction(float(c.real)).limit_denominator(10**12) for c in g)
        except (OverflowError, ValueError):  # pragma: no cover
            return False
        if any(abs(c.imag) > 1e-6 * max(1, abs(c)) for c in g):
            return False
        _, r = P.divmod_(f, cand)
        if r:
            return False
    return True


def sharp_star(M: VirtualMotive, n: int) -> Fraction:
    """The n-th count of M (|X(F_{q^n})| for the Borel-Moore class of X)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return series_log_derivative_counts(M.zeta(), n)[n - 1]


def pushforward_scalars(M: VirtualMotive, m: int) -> VirtualMotive:
    """Restriction of scalars from F_{q^m} to F_q: Z(result, t) = Z(M, t^m)."""
    p, e = prime_power(M.q)
    if m < 1 or e % m:
        raise BaseMismatch(f"F_{M.q} is not a degree-{m} extension of a finite field")
    base_q = p ** (e // m)
    return VirtualMotive.from_pairs(base_q, [(P.substitute_power(a.poly, m), a.mult) for a in M.atoms])
