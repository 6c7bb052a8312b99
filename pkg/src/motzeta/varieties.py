"""Varieties given by explicit integer polynomial systems, and their point counts.

Counting is brute-force enumeration through the kernels in ``motzeta._kernels``.
Polynomials are dicts ``{exponent tuple: int coefficient}`` over the
variety's declared variables.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import _kernels
from .errors import (
    BadReduction,
    InhomogeneousProjective,
    InputError,
    NotTorsor,
    PolynomialSyntaxError,
    SmallCharacteristic,
    UnknownVariable,
)
from .field import FieldElement, FieldHandle, check_cap, make_field

IntPoly = dict  # {tuple[int, ...]: int}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def parse_poly(text: str, variables: Sequence[str]) -> IntPoly:
    """Parse an integer polynomial such as ``"x^2*y - 3"`` over ``variables``."""
    variables = list(variables)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            tok = ("int", int(num))
        elif name is not None:
            tok = ("name", name)
        else:
            tok = ("sym", sym)
        tokens.append((tok, m.start()))
        pos = m.end()
    tokens.append((("end", None), len(text)))
    i = 0

    def peek():
        return tokens[i][0]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def fail(msg):
        raise PolynomialSyntaxError(f"{msg} at offset {tokens[i][1]} in {text!r}")

    nv = len(variables)
    zero_exp = (0,) * nv

    def const(c):
        return {zero_exp: c} if c else {}

    def expr():
        acc = term()
        while peek() in (("sym", "+"), ("sym", "-")):
            op = take()[0][1]
            rhs = term()
            acc = poly_add(acc, rhs if op == "+" else poly_scale(rhs, -1))
        return acc

    def term():
        acc = unary()
        while peek() == ("sym", "*"):
            take()
            acc = poly_mul(acc, unary())
        return acc

    def unary():
        if peek() == ("sym", "-"):
            take()
            return poly_scale(unary(), -1)
        if peek() == ("sym", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("sym", "^"):
            take()
            kind, k = peek()
            if kind != "int":
                fail("expected integer exponent")
            take()
            result = const(1)
            for _ in range(k):
                result = poly_mul(result, base)
            return result
        return base

    def atom():
        kind, val = peek()
        if kind == "int":
            take()
            return const(val)
        if kind == "name":
            take()
            if val not in variables:
                raise UnknownVariable(f"{val!r} is not a declared variable")
            exp = [0] * nv
            exp[variables.index(val)] = 1
            return {tuple(exp): 1}
        if (kind, val) == ("sym", "("):
            take()
            inner = expr()
            if peek() != ("sym", ")"):
                fail("expected ')'")
            take()
            return inner
        fail("unexpected token")

    result = expr()
    if peek()[0] != "end":
        fail("trailing input")
    return result


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def poly_scale(a: IntPoly, c: int) -> IntPoly:
    return {k: v * c for k, v in a.items()} if c else {}


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    out: IntPoly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def format_poly(poly: IntPoly, variables: Sequence[str]) -> str:
    if not poly:
        return "0"
    parts = []
    for exp, c in sorted(poly.items(), reverse=True):
        mono = "*".join(
            (v if k == 1 else f"{v}^{k}") for v, k in zip(variables, exp) if k
        )
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]


def _frozen(poly: IntPoly):
    return tuple(sorted(poly.items()))


@dataclass(frozen=True)
class VarietySpec:
    """A polynomial system; equations must vanish, constraints must not."""

    variables: tuple[str, ...]
    equations: tuple
    kind: str = "affine"
    constraints: tuple = ()

    def __post_init__(self):
        if self.kind not in ("affine", "projective"):
            raise InputError(f"unknown variety kind {self.kind!r}")
        if len(set(self.variables)) != len(self.variables):
            raise InputError("duplicate variable names")
        nv = len(self.variables)
        for poly in self.equations + self.constraints:
            for exp, _ in poly:
                if len(exp) != nv:
                    raise InputError("monomial arity does not match the variables")
        if self.kind == "projective":
            for poly in self.equations + self.constraints:
                degrees = {sum(exp) for exp, _ in poly}
                if len(degrees) > 1:
                    raise InhomogeneousProjective("projective equations must be homogeneous")

    @classmethod
    def build(cls, variables, equations=(), kind="affine", constraints=()):
        """Accepts polynomials as strings or dicts."""
        variables = tuple(variables)

        def conv(p):
            return _frozen(parse_poly(p, variables) if isinstance(p, str) else p)

        return cls(variables, tuple(conv(p) for p in equations), kind, tuple(conv(p) for p in constraints))

    @classmethod
    def from_json(cls, doc) -> "VarietySpec":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls.build(doc["vars"], doc.get("eqs", []), doc.get("kind", "affine"), doc.get("nonzero", []))

    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "kind": self.kind,
            "eqs": [format_poly(dict(p), self.variables) for p in self.equations],
            "nonzero": [format_poly(dict(p), self.variables) for p in self.constraints],
        }

    def permuted(self, order: Sequence[str]) -> "VarietySpec":
        """Same variety with variables reordered to ``order``."""
        perm = [self.variables.index(v) for v in order]

        def move(poly):
            return tuple(sorted((tuple(exp[i] for i in perm), c) for exp, c in poly))

        return VarietySpec(tuple(order), tuple(map(move, self.equations)), self.kind, tuple(map(move, self.constraints)))


# -- compilation into the kernel format --------------------------------------

@dataclass(frozen=True)
class CompiledSystem:
    nvars: int
    coef_log: tuple[int, ...]
    exps: tuple[tuple[int, ...], ...]
    group_start: tuple[int, ...]
    group_kind: tuple[int, ...]


def _field_log(F: FieldHandle, element: FieldElement) -> int:
    return int(F.tables.log[element.index])


def compile_groups(F: FieldHandle, nvars: int, groups) -> CompiledSystem:
    """``groups`` is a list of (kind, [(FieldElement coefficient, exps)])."""
    coef_log, exps, starts, kinds = [], [], [0], []
    for kind, monos in groups:
        merged: dict = {}
        for c, exp in monos:
            merged[exp] = merged.get(exp, F.zero) + c
        for exp, c in sorted(merged.items()):
            if not c.is_zero():
                coef_log.append(_field_log(F, c))
                exps.append(tuple(exp))
        starts.append(len(coef_log))
        kinds.append(kind)
    return CompiledSystem(nvars, tuple(coef_log), tuple(exps), tuple(starts), tuple(kinds))


def compile_variety(V: VarietySpec, F: FieldHandle) -> CompiledSystem:
    groups = [(0, [(F.from_int(c), exp) for exp, c in eq]) for eq in V.equations]
    groups += [(1, [(F.from_int(c), exp) for exp, c in g]) for g in V.constraints]
    return compile_groups(F, len(V.variables), groups)


def _run(system: CompiledSystem, F: FieldHandle, fixed, backend=None) -> int:
    kern = backend or _kernels
    return int(
        kern.count_solutions(
            list(fixed),
            system.nvars,
            list(system.coef_log),
            [list(r) for r in system.exps],
            list(system.group_start),
            list(system.group_kind),
            F.tables.zech,
            F.q - 1,
        )
    )


def _run_job(args):
    system, F, fixed = args
    return _run(system, F, fixed)


def _count_prefixes(system: CompiledSystem, F: FieldHandle, prefixes, jobs: int) -> int:
    if jobs <= 1:
        return sum(_run(system, F, fx) for fx in prefixes)
    # deterministic: integer partial sums, order-independent
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_run_job, [(system, F, fx) for fx in prefixes]))


def enumeration_size(V: VarietySpec, q: int) -> int:
    n = len(V.variables)
    if V.kind == "affine":
        return q**n
    return (q**n - 1) // (q - 1) if n else 0


def count_points(V: VarietySpec, F: FieldHandle, jobs: int = 1) -> int:
    """|V(F)|; projective points are enumerated once each via normalized coordinates."""
    check_cap(enumeration_size(V, F.q), "point enumeration")
    system = compile_variety(V, F)
    n = len(V.variables)
    qm1 = F.q - 1
    if V.kind == "affine":
        if jobs > 1 and n > 0:
            prefixes = [[v] for v in range(-1, qm1)]
        else:
            prefixes = [[]]
        return _count_prefixes(system, F, prefixes, jobs)
    # first nonzero coordinate is 1 (log 0); earlier coordinates are 0 (log -1)
    prefixes = [[-1] * i + [0] for i in range(n)]
    return _count_prefixes(system, F, prefixes, jobs)


def count_tower(V: VarietySpec, F: FieldHandle, N: int, jobs: int = 1) -> list[int]:
    """Counts over F_{q^n} for n = 1..N."""
    for n in range(1, N + 1):
        check_cap(enumeration_size(V, F.q**n), "point enumeration")
    return [count_points(V, make_field(F.p, F.e * n), jobs) for n in range(1, N + 1)]


def fiber_partition(V: VarietySpec, coord: str, F: FieldHandle) -> dict[FieldElement, int]:
    """Fiber cardinalities of the projection of an affine V to one coordinate."""
    if coord not in V.variables:
        raise UnknownVariable(f"{coord!r} is not a variable of the variety")
    if V.kind != "affine":
        raise InputError("fiber_partition needs an affine variety")
    check_cap(enumeration_size(V, F.q), "point enumeration")
    order = [coord] + [v for v in V.variables if v != coord]
    system = compile_variety(V.permuted(order), F)
    log = F.tables.log
    out = {}
    for idx in range(F.q):
        out[F.from_index(idx)] = _run(system, F, [int(log[idx])])
    return out


# -- elliptic curves ----------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise InputError("singular Weierstrass equation (discriminant 0)")
        assert self.c4**3 - self.c6**2 == 1728 * self.discriminant

    @property
    def b2(self):
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    @property
    def c4(self):
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2**2 * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    def as_variety(self) -> VarietySpec:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        eq = f"y^2 + ({a1})*x*y + ({a3})*y - x^3 - ({a2})*x^2 - ({a4})*x - ({a6})"
        return VarietySpec.build(["x", "y"], [eq])


def weierstrass_count(E: WeierstrassCurve, F: FieldHandle) -> int:
    """Projective points of the reduction of E over F (odd characteristic, any reduction type).

    Completing the square turns the count into q + 1 + sum of the quadratic
    character of 4x^3 + b2 x^2 + 2 b4 x + b6.
    """
    if F.p == 2:
        raise SmallCharacteristic("character-sum count needs odd characteristic")
    check_cap(F.q, "point enumeration")
    cubic = [(E.b6, 0), (2 * E.b4, 1), (E.b2, 2), (4, 3)]
    coef_log, degs = [], []
    for c, d in cubic:
        if c % F.p:
            coef_log.append(int(F.tables.log[c % F.p]))
            degs.append(d)
    s = _kernels.quadratic_character_sum(coef_log, degs, F.tables.zech, F.q - 1)
    return F.q + 1 + int(s)


def elliptic_counts(E: WeierstrassCurve, F: FieldHandle, N: int) -> list[int]:
    """|E(F_{q^n})| for n = 1..N, at a prime of good reduction with p >= 5."""
    if F.p < 5:
        raise SmallCharacteristic(f"characteristic {F.p} < 5 is not supported")
    if E.discriminant % F.p == 0:
        raise BadReduction(f"p={F.p} divides the discriminant {E.discriminant}")
    for n in range(1, N + 1):
        check_cap(F.q**n, "point enumeration")
    return [weierstrass_count(E, make_field(F.p, F.e * n)) for n in range(1, N + 1)]


# -- Kummer twists ------------------------------------------------------------

def kummer_twist_check(g, n: int, F: FieldHandle) -> tuple[list[int], int, bool]:
    """Point counts of the twists U_j = {x^n = d^j g(y), g(y) != 0} of the x^n cover.

    ``g`` is an integer polynomial in ``y`` (string or IntPoly in one variable);
    ``d`` is the field's multiplicative generator.  Returns the twisted counts,
    the count of the base V = {g(y) != 0}, and whether their average equals it.
    """
    if n < 1 or (F.q - 1) % n:
        raise NotTorsor(f"n={n} does not divide q-1={F.q - 1}")
    gy = parse_poly(g, ["y"]) if isinstance(g, str) else dict(g)
    check_cap(F.q**2, "point enumeration")
    delta = F.multiplicative_generator()
    g_on_xy = [(F.from_int(c), (0, k[0])) for k, c in gy.items()]
    twisted = []
    for j in range(n):
        dj = delta**j
        eq = [(F.one, (n, 0))] + [(-(dj * c), exp) for c, exp in g_on_xy]
        system = compile_groups(F, 2, [(0, eq), (1, g_on_xy)])
        twisted.append(_run(system, F, []))
    base_system = compile_groups(F, 1, [(1, [(F.from_int(c), k) for k, c in gy.items()])])
    base = _run(base_system, F, [])
    return twisted, base, sum(twisted) == n * base
