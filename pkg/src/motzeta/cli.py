"""Command-line front end.  Every subcommand prints one sorted-key JSON document."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import polyq as P
from .dirichlet import DirichletSeries, dirichlet_inv, euler_product, evaluate, solve_shift_equation
from .errors import MotzetaError
from .expr import elaborate, parse_expr, print_class
from .field import field_of_order
from .lfun import (
    GlobalModel,
    PlaceLocalData,
    assemble_ff,
    density_scan,
    elliptic_global_lnear,
    evaluate_gamma,
    gamma_factor,
    solve_local_near,
    verify_ff_functional_equation,
)
from .motive import VirtualMotive, det_frobenius, euler_char, from_rational, verify_functional_equation, weight_profile
from .series import RationalFunctionQ, rational_fit, zeta_series_from_counts
from .varieties import VarietySpec, WeierstrassCurve, count_tower


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise MotzetaError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MotzetaError(f"{path} is not valid JSON: {exc}") from exc


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise MotzetaError(f"bad rational list {text!r}") from exc


def _q(x) -> object:
    return P.fraction_to_json(Fraction(x))


def fit_class(counts, q: int, dnum: int, dden: int) -> VirtualMotive:
    return from_rational(rational_fit(zeta_series_from_counts(counts), dnum, dden), q)


def class_report(M: VirtualMotive) -> dict:
    fe = verify_functional_equation(M)
    Z = M.zeta()
    return {
        "num": P.poly_to_json(Z.num),
        "den": P.poly_to_json(Z.den),
        "chi": euler_char(M),
        "det": _q(det_frobenius(M)),
        "weights": {str(w): m for w, m in weight_profile(M).items()},
        "fe_holds": fe.holds,
    }


# -- subcommands ----------------------------------------------------------------

def cmd_count(a) -> dict:
    V = VarietySpec.from_json(_load_json(a.spec))
    F = field_of_order(a.field)
    return {"q": F.q, "counts": count_tower(V, F, a.N, jobs=a.jobs)}


def cmd_zeta(a) -> dict:
    dnum, dden = a.bounds
    need = dnum + dden + 2
    if a.counts:
        counts = [int(c) for c in a.counts.split(",")]
        q = a.field
    else:
        if not a.spec:
            raise MotzetaError("give --counts or --spec")
        V = VarietySpec.from_json(_load_json(a.spec))
        F = field_of_order(a.field)
        counts = count_tower(V, F, a.N or need, jobs=a.jobs)
        q = F.q
    return class_report(fit_class(counts, q, dnum, dden))


def _variety_binding(path: str, bounds, jobs: int):
    V = VarietySpec.from_json(_load_json(path))
    dnum, dden = bounds

    def build(q: int) -> VirtualMotive:
        counts = count_tower(V, field_of_order(q), dnum + dden + 2, jobs=jobs)
        return fit_class(counts, q, dnum, dden)

    return build


def cmd_algebra(a) -> dict:
    env = {}
    for item in a.bind or []:
        name, _, path = item.partition("=")
        if not path:
            raise MotzetaError(f"--bind expects name=file, got {item!r}")
        if path.endswith(".motive.json"):
            env[name] = VirtualMotive.from_json(_load_json(path))
        else:
            env[name] = _variety_binding(path, a.bounds, a.jobs)
    M = elaborate(parse_expr(a.expr), a.q, env)
    Z = M.zeta()
    return {
        "class": M.to_json(),
        "expr": print_class(M),
        "chi": euler_char(M),
        "det": _q(det_frobenius(M)),
        "num": P.poly_to_json(Z.num),
        "den": P.poly_to_json(Z.den),
    }


def _places_from(doc) -> list[PlaceLocalData]:
    if isinstance(doc, dict) and "places" in doc:
        doc = doc["places"]
    if isinstance(doc, dict):
        doc = [doc]
    return [PlaceLocalData.from_json(d) for d in doc]


def cmd_dirichlet(a) -> dict:
    if a.op == "zeta":
        f = DirichletSeries.riemann_zeta(a.cutoff)
    else:
        places = [pl for path in a.factors for pl in _places_from(_load_json(path))]
        f = euler_product([(pl.norm, pl.local_factor) for pl in places], a.cutoff)
    if a.op in ("euler", "zeta"):
        g = f
    elif a.op == "inverse":
        g = dirichlet_inv(f)
    elif a.op == "solve":
        g = solve_shift_equation(f)
    else:  # pragma: no cover - argparse restricts choices
        raise MotzetaError(a.op)
    out = {"series": g.to_json()}
    if a.s is not None:
        ev = evaluate(g, a.s)
        out["value"] = ev.value
        out["tail_note"] = ev.tail_note
    return out


def cmd_near(a) -> dict:
    R = RationalFunctionQ.make(_rationals(a.num), _rationals(a.den))
    return solve_local_near(R, a.qv).to_json()


def cmd_ell(a) -> dict:
    inv = [int(x) for x in a.a.split(",")]
    if len(inv) != 5:
        raise MotzetaError("--a needs five integers a1,a2,a3,a4,a6")
    res = elliptic_global_lnear(WeierstrassCurve(*inv), a.B, a.cutoff)
    return {"places": [pl.to_json() for pl in res.places], "skipped": list(res.skipped), "series": res.series.to_json()}


def cmd_ff(a) -> dict:
    model = GlobalModel.from_json(_load_json(a.places))
    if model.base != "Fq_t":
        raise MotzetaError("ff needs a model over F_q(t)")
    L = assemble_ff(model.places, a.D, tuple(a.bounds), model.q)
    out = {"L": L.to_json()}
    if a.dual:
        dmodel = GlobalModel.from_json(_load_json(a.dual))
        Ld = assemble_ff(dmodel.places, a.D, tuple(a.bounds), dmodel.q) if a.dual != a.places else L
        c, B = verify_ff_functional_equation(L, Ld, model.q)
        out["c"], out["B"] = _q(c), B
    elif a.self_dual:
        c, B = verify_ff_functional_equation(L, L, model.q)
        out["c"], out["B"] = _q(c), B
    return out


def _hodge(text: str) -> dict:
    doc = json.loads(text)
    return {tuple(int(x) for x in k.split(",")): int(v) for k, v in doc.items()}


def cmd_gamma(a) -> dict:
    hodge = _hodge(a.hodge) if a.hodge else {}
    signs = None
    if a.signs:
        signs = {int(k): tuple(int(x) for x in v) for k, v in json.loads(a.signs).items()}
    d = gamma_factor(hodge, signs)
    out = {"terms": d.to_json()}
    if a.s is not None:
        out["value"] = evaluate_gamma(d, a.s)
    return out


def cmd_scan(a) -> dict:
    V1 = VarietySpec.from_json(_load_json(a.v1))
    V2 = VarietySpec.from_json(_load_json(a.v2))
    r = density_scan(V1, V2, a.B, a.betti)
    return {"fraction": _q(r.fraction), "bound": _q(r.bound), "primes": len(r.primes), "differing": list(r.differing)}


# -- plumbing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="motzeta", description="Zeta and L-functions of virtual motives over finite fields.")
    ap.add_argument("--pretty", action="store_true", help="human-readable output")
    ap.add_argument("--error-json", action="store_true", help="report errors as JSON on stdout")
    # the same flags are accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--error-json", action="store_true", default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="point counts over F_{q^n}, n = 1..N")
    p.add_argument("spec")
    p.add_argument("--field", type=int, required=True)
    p.add_argument("-N", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=cmd_count)

    p = sub.add_parser("zeta", parents=[common], help="rational zeta function from counts")
    p.add_argument("--spec")
    p.add_argument("--counts")
    p.add_argument("--field", type=int, required=True)
    p.add_argument("--bounds", type=int, nargs=2, default=(2, 2), metavar=("DNUM", "DDEN"))
    p.add_argument("-N", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=cmd_zeta)

    p = sub.add_parser("algebra", parents=[common], help="evaluate a motive expression")
    p.add_argument("expr")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--bind", action="append", metavar="NAME=FILE")
    p.add_argument("--bounds", type=int, nargs=2, default=(2, 2), metavar=("DNUM", "DDEN"))
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=cmd_algebra)

    p = sub.add_parser("dirichlet", parents=[common], help="Euler products and the shift-equation solver")
    p.add_argument("factors", nargs="*")
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--op", choices=("euler", "inverse", "solve", "zeta"), default="euler")
    p.add_argument("--s", type=float)
    p.set_defaults(run=cmd_dirichlet)

    p = sub.add_parser("near", parents=[common], help="nearby local factor from a total one")
    p.add_argument("--num", default="1")
    p.add_argument("--den", default="1")
    p.add_argument("--qv", type=int, required=True)
    p.set_defaults(run=cmd_near)

    p = sub.add_parser("ell", parents=[common], help="elliptic curve over Q: nearby Euler product")
    p.add_argument("--a", required=True, help="a1,a2,a3,a4,a6")
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--cutoff", type=int, required=True)
    p.set_defaults(run=cmd_ell)

    p = sub.add_parser("ff", parents=[common], help="assemble an L-function over F_q(t)")
    p.add_argument("places")
    p.add_argument("-D", type=int, required=True)
    p.add_argument("--bounds", type=int, nargs=2, required=True, metavar=("DNUM", "DDEN"))
    p.add_argument("--dual")
    p.add_argument("--self-dual", action="store_true")
    p.set_defaults(run=cmd_ff)

    p = sub.add_parser("gamma", parents=[common], help="archimedean Gamma factor")
    p.add_argument("--hodge", help='JSON such as {"0,1": 1, "1,0": 1}')
    p.add_argument("--signs", help='JSON such as {"0": [1, 0]}')
    p.add_argument("--s", type=float)
    p.set_defaults(run=cmd_gamma)

    p = sub.add_parser("scan", parents=[common], help="primes where two varieties have different counts")
    p.add_argument("v1")
    p.add_argument("v2")
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--betti", type=int, required=True)
    p.set_defaults(run=cmd_scan)
    return ap


def render(doc: dict, pretty: bool) -> str:
    if not pretty:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    width = max((len(k) for k in doc), default=0)
    return "\n".join(f"{k:<{width}}  {json.dumps(v, sort_keys=True)}" for k, v in sorted(doc.items()))


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            doc = args.run(args)
    except (MotzetaError, ValueError, ZeroDivisionError) as exc:
        code = getattr(exc, "exit_code", 2)
        if args.error_json:
            print(render({"error": type(exc).__name__, "message": str(exc), "exit_code": code}, False))
        else:
            print(f"motzeta: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    print(render(doc, args.pretty))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
