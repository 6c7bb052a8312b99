"""Local and global L-functions: total and nearby local factors, Euler products
over places, archimedean Gamma factors, and function-field assembly."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import polyq as P
from .dirichlet import DirichletSeries, abscissa_bound, euler_product, evaluate
from .errors import (
    AdditiveReduction,
    InputError,
    MissingPlaces,
    NotMonomialRatio,
    NotSolvable,
    OutOfRegion,
    PoleHit,
)
from .field import is_prime, make_field
from .motive import coprime_basis
from .series import RationalFunctionQ, rational_fit, PowerSeriesQ
from .varieties import VarietySpec, WeierstrassCurve, count_points, elliptic_counts

TAGS = ("good", "multiplicative_split", "multiplicative_nonsplit", "other")


@dataclass(frozen=True)
class PlaceLocalData:
    """A place of norm N(v) = (residue size)^degree with its factor in u = N(v)^(-s)."""

    norm: int
    degree: int
    local_factor: RationalFunctionQ
    tag: str = "good"
    provenance: str = "declared"
    extra: tuple = ()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InputError(f"unknown place tag {self.tag!r}")

    def to_json(self) -> dict:
        doc = {"norm": self.norm, "degree": self.degree, "tag": self.tag, "provenance": self.provenance}
        doc.update(self.local_factor.to_json())
        doc.update(dict(self.extra))
        return doc

    @classmethod
    def from_json(cls, doc) -> "PlaceLocalData":
        return cls(
            int(doc["norm"]),
            int(doc.get("degree", 1)),
            RationalFunctionQ.from_json(doc),
            doc.get("tag", "good"),
            doc.get("provenance", "declared"),
        )


# -- local factors ----------------------------------------------------------

def ltot_from_good_model(zeta_v: RationalFunctionQ, qv: int) -> RationalFunctionQ:
    """zeta_v(u) / zeta_v(u/qv): the total local factor at a place of good reduction."""
    return zeta_v / zeta_v.rescale(Fraction(1, qv))


def lnear_good_reduction(zeta_v: RationalFunctionQ, qv: int) -> RationalFunctionQ:
    """At good reduction the nearby factor is the local zeta function itself."""
    return zeta_v


def _root_modulus_bounds(f: P.Poly) -> tuple[Fraction, Fraction]:
    """Cauchy bounds lo <= |gamma| <= hi for the inverse roots of f (f(0) = 1)."""
    c = f
    hi = 1 + max(abs(x) for x in c[1:])
    lo = 1 / (1 + max(abs(x / c[-1]) for x in c[:-1]))
    return lo, hi


def _max_level_gap(polys, qv: int) -> int:
    lo = min(_root_modulus_bounds(f)[0] for f in polys)
    hi = max(_root_modulus_bounds(f)[1] for f in polys)
    ratio = hi / lo
    k = 0
    while Fraction(qv) ** (k + 1) <= ratio:
        k += 1
    return k


def _orbit_closed_basis(pairs, qv: int, K: int):
    """Coprime basis in which each q^k-rescaling of an atom (k <= K) either equals
    another atom or is coprime to all of them."""
    atoms = coprime_basis(pairs, keep_zero=True)
    while True:
        extra = []
        for b in atoms:
            for k in range(1, K + 1):
                moved = P.rescale(b.poly, Fraction(qv) ** k)
                for c in atoms:
                    g = P.gcd(moved, c.poly)
                    if P.degree(g) == 0 or (g == c.poly and g == moved):
                        continue
                    extra.append((g, 0))
                    extra.append((P.rescale(g, Fraction(qv) ** (-k)), 0))
            if extra:
                break
        if not extra:
            return atoms
        atoms = coprime_basis([(a.poly, a.mult) for a in atoms] + extra, keep_zero=True)


def solve_local_near(R: RationalFunctionQ, qv: int) -> RationalFunctionQ:
    """The unique rational S (constant term 1) with S(u) / S(u/qv) = R(u).

    In terms of inverse roots, if R has signed multiplicity n(d) at d then S
    has m(d) = sum_{k >= 0} n(qv^k d).  Inverse roots are grouped into
    qv-orbits on an orbit-closed coprime basis; S exists iff every orbit's
    multiplicities sum to zero.
    """
    if qv < 2:
        raise InputError("qv must be >= 2")
    if R.is_one():
        return R
    pairs = [(R.den, 1), (R.num, -1)]
    polys = [f for f, _ in pairs if P.degree(f) > 0]
    K = _max_level_gap(polys, qv)
    atoms = list(_orbit_closed_basis(pairs, qv, K))

    # orbit components with integer levels: rescale(base, qv^level) is the atom
    level: dict[int, tuple[int, int]] = {}
    for i, a in enumerate(atoms):
        if i in level:
            continue
        level[i] = (i, 0)
        stack = [i]
        while stack:
            j = stack.pop()
            _, lj = level[j]
            for k in range(-K, K + 1):
                if k == 0:
                    continue
                moved = P.rescale(atoms[j].poly, Fraction(qv) ** k)
                for t, c in enumerate(atoms):
                    if t not in level and c.poly == moved:
                        level[t] = (i, lj + k)
                        stack.append(t)
    components: dict[int, dict[int, int]] = {}
    for t, (root, lv) in level.items():
        components.setdefault(root, {})[lv] = atoms[t].mult

    out_pairs = []
    for root, mults in components.items():
        if sum(mults.values()) != 0:
            raise NotSolvable(
                "multiplicities along a q-orbit do not cancel; "
                "no rational solution of S(u)/S(u/q) = R(u) exists"
            )
        lo, hi = min(mults), max(mults)
        running = 0
        for lv in range(hi, lo - 1, -1):
            running += mults.get(lv, 0)
            if running:
                out_pairs.append((P.rescale(atoms[root].poly, Fraction(qv) ** lv), running))
    num, den = P.ONE, P.ONE
    for f, m in out_pairs:
        if m > 0:
            den = P.mul(den, P.power(f, m))
        else:
            num = P.mul(num, P.power(f, -m))
    S = RationalFunctionQ.make(num, den)
    if S / S.rescale(Fraction(1, qv)) != R:
        raise AssertionError("nearby solver failed its own verification")  # pragma: no cover
    return S


# -- elliptic curves over Q --------------------------------------------------

def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class EllipticLnear:
    series: DirichletSeries
    places: tuple
    skipped: tuple


def elliptic_local_place(E: WeierstrassCurve, p: int) -> PlaceLocalData:
    """Nearby local factor of h^1(E) at a prime p >= 5 of good or multiplicative reduction."""
    if E.discriminant % p:
        count = elliptic_counts(E, make_field(p), 1)[0]
        ap = p + 1 - count
        factor = RationalFunctionQ.make([1], [1, -ap, p])
        return PlaceLocalData(p, 1, factor, "good", "counted", (("a_p", ap), ("count", count)))
    if E.c4 % p == 0:
        raise AdditiveReduction(f"additive reduction at p={p}")
    if legendre(-E.c6, p) == 1:
        factor = RationalFunctionQ.make([1], P.mul(P.poly([1, -1]), P.poly([1, -p])))
        return PlaceLocalData(p, 1, factor, "multiplicative_split", "counted")
    factor = RationalFunctionQ.make([1], P.mul(P.poly([1, 1]), P.poly([1, p])))
    return PlaceLocalData(p, 1, factor, "multiplicative_nonsplit", "counted")


def elliptic_global_lnear(E: WeierstrassCurve, B: int, cutoff: int) -> EllipticLnear:
    """Euler product of nearby factors over primes 5 <= p <= B; 2 and 3 are skipped."""
    places, skipped = [], []
    for p in range(2, B + 1):
        if not is_prime(p):
            continue
        if p < 5:
            skipped.append(p)
            continue
        places.append(elliptic_local_place(E, p))
    series = euler_product([(pl.norm, pl.local_factor) for pl in places], cutoff)
    return EllipticLnear(series, tuple(places), tuple(skipped))


# -- archimedean factors -----------------------------------------------------

@dataclass(frozen=True)
class GammaTerm:
    """Gamma_R(s - shift)^exponent or Gamma_C(s - shift)^exponent."""

    kind: str
    shift: int
    exponent: int

    def __post_init__(self):
        if self.kind not in ("R", "C"):
            raise InputError("gamma kind must be 'R' or 'C'")
        if self.exponent <= 0:
            raise InputError("gamma exponents must be positive")


@dataclass(frozen=True)
class GammaDescriptor:
    terms: tuple = ()

    def __mul__(self, other):
        return GammaDescriptor(self.terms + other.terms)

    def to_json(self) -> list:
        return [{"kind": t.kind, "shift": t.shift, "exp": t.exponent} for t in self.terms]

    @classmethod
    def from_json(cls, doc) -> "GammaDescriptor":
        return cls(tuple(GammaTerm(d["kind"], int(d["shift"]), int(d["exp"])) for d in doc))


def gamma_factor(hodge: dict, signs: Optional[dict] = None) -> GammaDescriptor:
    """Gamma descriptor of a Hodge structure.

    Complex place (``signs is None``): prod Gamma_C(s - min(p,q))^h(p,q).
    Real place: prod_n Gamma_R(s-n)^h(n,+) Gamma_R(s-n+1)^h(n,-) times
    prod_{p<q} Gamma_C(s-p)^h(p,q); ``signs`` maps n to (h(n,+), h(n,-)).
    """
    terms = []
    if any(h < 0 for h in hodge.values()):
        raise InputError("Hodge numbers must be >= 0")
    if signs is None:
        for (p, q), h in sorted(hodge.items()):
            if h:
                terms.append(GammaTerm("C", min(p, q), h))
        return GammaDescriptor(tuple(terms))
    for n, (hplus, hminus) in sorted(signs.items()):
        if hplus < 0 or hminus < 0:
            raise InputError("Hodge numbers must be >= 0")
        if hplus:
            terms.append(GammaTerm("R", n, hplus))
        if hminus:
            terms.append(GammaTerm("R", n - 1, hminus))
    for (p, q), h in sorted(hodge.items()):
        if p < q and h:
            terms.append(GammaTerm("C", p, h))
    return GammaDescriptor(tuple(terms))


def _log_abs_gamma(x: float) -> tuple[float, int]:
    if x <= 0 and x == math.floor(x):
        raise PoleHit(f"Gamma has a pole at {x}")
    sign = 1 if x > 0 or math.floor(-x) % 2 == 1 else -1
    return math.lgamma(x), sign


def evaluate_gamma(d: GammaDescriptor, s: float) -> float:
    """Gamma_R(s) = pi^(-s/2) Gamma(s/2), Gamma_C(s) = 2 (2 pi)^(-s) Gamma(s)."""
    logv, sign = 0.0, 1
    for t in d.terms:
        x = s - t.shift
        if t.kind == "R":
            lg, sg = _log_abs_gamma(x / 2)
            term = -x / 2 * math.log(math.pi) + lg
        else:
            lg, sg = _log_abs_gamma(x)
            term = math.log(2) - x * math.log(2 * math.pi) + lg
        logv += t.exponent * term
        sign *= sg**t.exponent
    return sign * math.exp(logv)


# -- global models -----------------------------------------------------------

@dataclass(frozen=True)
class GlobalModel:
    base: str  # "Q" or "Fq_t"
    places: tuple
    gamma: GammaDescriptor = GammaDescriptor()
    chi: int = 0
    disc: int = 1
    q: Optional[int] = None

    @classmethod
    def from_json(cls, doc) -> "GlobalModel":
        if isinstance(doc, str):
            doc = json.loads(doc)
        base = doc.get("base", {"kind": "Q"})
        kind = base.get("kind", "Q")
        if kind not in ("Q", "Fq_t"):
            raise InputError(f"unknown base kind {kind!r}")
        places = tuple(PlaceLocalData.from_json(p) for p in doc.get("places", []))
        q = int(base["q"]) if kind == "Fq_t" else None
        for pl in places:
            if kind == "Fq_t" and pl.norm != q**pl.degree:
                raise InputError(f"place norm {pl.norm} is not {q}^{pl.degree}")
        return cls(kind, places, GammaDescriptor.from_json(doc.get("gamma", [])), int(doc.get("chi", 0)), int(doc.get("disc", 1)), q)

    def to_json(self) -> dict:
        base = {"kind": self.base} if self.base == "Q" else {"kind": "Fq_t", "q": self.q}
        return {
            "base": base,
            "places": [p.to_json() for p in self.places],
            "gamma": self.gamma.to_json(),
            "chi": self.chi,
            "disc": self.disc,
        }

    def dirichlet_series(self, cutoff: int) -> DirichletSeries:
        return euler_product([(p.norm, p.local_factor) for p in self.places], cutoff)


def completed_xi(model: GlobalModel, s: float, cutoff: int, weight: Optional[int] = None) -> float:
    """|d_K|^(s chi/2) * prod Gamma * partial sum of the Dirichlet series at s."""
    if model.base != "Q":
        raise InputError("completed_xi needs a number-field base")
    if weight is not None and s <= abscissa_bound(weight, 0):
        warnings.warn(OutOfRegion(f"s={s} is not beyond the abscissa bound {abscissa_bound(weight, 0)}"))
    disc_factor = abs(model.disc) ** (s * model.chi / 2)
    return disc_factor * evaluate_gamma(model.gamma, s) * evaluate(model.dirichlet_series(cutoff), s).value


# -- function fields ----------------------------------------------------------

def mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def monic_irreducible_count(q: int, d: int) -> int:
    """Number of monic irreducible polynomials of degree d over F_q."""
    return sum(mobius(d // e) * q**e for e in range(1, d + 1) if d % e == 0) // d


def projective_line_place_counts(q: int, D: int) -> dict[int, int]:
    """Closed points of P^1 over F_q by degree: monic irreducibles, plus infinity in degree 1."""
    return {d: monic_irreducible_count(q, d) + (1 if d == 1 else 0) for d in range(1, D + 1)}


def projective_line_places(q: int, D: int, factor: Optional[RationalFunctionQ] = None) -> list:
    """All places of F_q(t) of degree <= D, each with the same local factor (default 1/(1-u))."""
    factor = factor or RationalFunctionQ.make([1], [1, -1])
    out = []
    for d, n in projective_line_place_counts(q, D).items():
        out.extend(PlaceLocalData(q**d, d, factor) for _ in range(n))
    return out


def assemble_ff(
    places: Sequence[PlaceLocalData],
    D: int,
    degree_bounds: tuple[int, int],
    q: int,
    expected_counts: Optional[dict] = None,
) -> RationalFunctionQ:
    """Global rational function in u = q^(-s) from the places of degree <= D.

    ``expected_counts`` gives the number of places of each degree; it defaults
    to the closed points of P^1 over F_q.  A place of degree d contributes its
    factor evaluated at u^d.
    """
    expected = expected_counts if expected_counts is not None else projective_line_place_counts(q, D)
    have: dict[int, int] = {}
    for pl in places:
        if pl.norm != q**pl.degree:
            raise InputError(f"place of degree {pl.degree} has norm {pl.norm}, expected {q ** pl.degree}")
        have[pl.degree] = have.get(pl.degree, 0) + 1
    for d in range(1, D + 1):
        if have.get(d, 0) != expected.get(d, 0):
            raise MissingPlaces(f"degree {d}: {have.get(d, 0)} places supplied, {expected.get(d, 0)} expected")
    S = PowerSeriesQ.from_poly(P.ONE, D)
    for pl in sorted(places, key=lambda p: (p.degree, p.local_factor.num, p.local_factor.den)):
        if pl.degree <= D:
            S = S * pl.local_factor.substitute_power(pl.degree).series(D)
    dnum, dden = degree_bounds
    return rational_fit(S, dnum, dden)


def _evaluate_at_inverse_qu(f: P.Poly, q: int) -> P.Poly:
    """rev(f)(q u): then f(1/(q u)) = (q u)^(-deg f) * rev(f)(q u)."""
    return P.rescale(P.reverse(f), q)


def verify_ff_functional_equation(
    lnear: RationalFunctionQ, lnear_dual: RationalFunctionQ, q: int
) -> tuple[Fraction, int]:
    """(c, B) with lnear_dual(1/(q u)) / lnear(u) = c u^B, as rational functions of u."""
    shift = P.degree(lnear_dual.den) - P.degree(lnear_dual.num)
    top = P.mul(_evaluate_at_inverse_qu(lnear_dual.num, q), lnear.den)
    bottom = P.mul(_evaluate_at_inverse_qu(lnear_dual.den, q), lnear.num)
    g = P.gcd(top, bottom)
    top, bottom = P.exact_div(top, g), P.exact_div(bottom, g)
    # both must be monomials a u^i, b u^k
    def monomial(f):
        nz = [(i, c) for i, c in enumerate(f) if c != 0]
        if len(nz) != 1:
            raise NotMonomialRatio("the quotient is not a constant times a power of u")
        return nz[0]

    i, a = monomial(top)
    k, b = monomial(bottom)
    c = Fraction(q) ** shift * a / b
    return c, shift + i - k


# -- density scan -----------------------------------------------------------

@dataclass(frozen=True)
class DensityScan:
    fraction: Fraction
    bound: Fraction
    primes: tuple
    differing: tuple = field(default=())


def density_scan(V1: VarietySpec, V2: VarietySpec, B: int, betti: int) -> DensityScan:
    """Fraction of primes 5 <= p <= B with |V1(F_p)| != |V2(F_p)|, beside the lower bound 1/betti^2."""
    if B < 5:
        raise InputError("B must be >= 5")
    if betti < 1:
        raise InputError("the Betti datum must be positive")
    primes = [p for p in range(5, B + 1) if is_prime(p)]
    differing = []
    for p in primes:
        F = make_field(p)
        if count_points(V1, F) != count_points(V2, F):
            differing.append(p)
    return DensityScan(Fraction(len(differing), len(primes)), Fraction(1, betti**2), tuple(primes), tuple(differing))
