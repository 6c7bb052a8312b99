"""Compare the compiled counting kernel with the pure-Python fallback.

    python benchmarks/bench_count.py [--repeat 3]
"""

import argparse
import time

from motzeta import _kernels
from motzeta._kernels import _pycount
from motzeta.field import make_field
from motzeta.varieties import VarietySpec, WeierstrassCurve, _run, compile_variety

CASES = [
    ("affine conic over F_625", VarietySpec.build(["x", "y"], ["x^2 + y^2 - 1"]), (5, 4)),
    ("y^2 = x^3 + x over F_7^3", VarietySpec.build(["x", "y"], ["y^2 - x^3 - x"]), (7, 3)),
    ("3-fold xyz = 1 over F_61", VarietySpec.build(["x", "y", "z"], ["x*y*z - 1"]), (61, 1)),
    ("11a3 affine model over F_2^9", WeierstrassCurve(0, -1, 1, 0, 0).as_variety(), (2, 9)),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t0)
    return min(times), value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'case':32} {'points':>8} {'compiled s':>11} {'python s':>9} {'speedup':>8}")
    for name, V, pe in CASES:
        F = make_field(*pe)
        system = compile_variety(V, F)
        _ = F.tables
        t_c, n_c = best_of(lambda: _run(system, F, []), args.repeat)
        t_p, n_p = best_of(lambda: _run(system, F, [], backend=_pycount), args.repeat)
        assert n_c == n_p, name
        print(f"{name:32} {n_c:8d} {t_c:11.4f} {t_p:9.4f} {t_p / t_c:7.1f}x")


if __name__ == "__main__":
    main()
