"""Pure-Python counting kernels.

Field elements are passed in log form: ``-1`` is zero, ``k`` in
``0..q-2`` is ``g^k``.  A system is a list of monomial groups; each group is
one polynomial, and ``group_kind`` says whether it must vanish (0) or must
not vanish (1).
"""

from itertools import product


def _zadd(a, b, zech, qm1):
    if a < 0:
        return b
    if b < 0:
        return a
    z = zech[(b - a) % qm1]
    if z < 0:
        return -1
    return (a + z) % qm1


def _eval_group(point, lo, hi, coef_log, exps, nvars, zech, qm1):
    acc = -1
    for m in range(lo, hi):
        t = coef_log[m]
        row = exps[m]
        for v in range(nvars):
            k = row[v]
            if k:
                x = point[v]
                if x < 0:
                    t = -1
                    break
                t = (t + k * x) % qm1
        if t >= 0:
            acc = _zadd(acc, t, zech, qm1)
    return acc


def count_solutions(fixed, nvars, coef_log, exps, group_start, group_kind, zech, qm1):
    """Number of points with the given fixed prefix satisfying every group."""
    fixed = [int(v) for v in fixed]
    coef_log = [int(c) for c in coef_log]
    exps = [[int(k) for k in row] for row in exps]
    group_start = [int(g) for g in group_start]
    group_kind = [int(g) for g in group_kind]
    zech = [int(z) for z in zech]
    ngroups = len(group_kind)
    values = range(-1, qm1)
    count = 0
    for free in product(values, repeat=nvars - len(fixed)):
        point = fixed + list(free)
        ok = True
        for g in range(ngroups):
            val = _eval_group(point, group_start[g], group_start[g + 1], coef_log, exps, nvars, zech, qm1)
            if (val < 0) != (group_kind[g] == 0):
                ok = False
                break
        if ok:
            count += 1
    return count


def quadratic_character_sum(coef_log, degs, zech, qm1):
    """Sum over x in F_q of the quadratic character of f(x); q odd."""
    coef_log = [int(c) for c in coef_log]
    degs = [int(d) for d in degs]
    zech = [int(z) for z in zech]
    total = 0
    for x in range(-1, qm1):
        acc = -1
        for c, d in zip(coef_log, degs):
            if d and x < 0:
                continue
            acc = _zadd(acc, (c + d * x) % qm1 if d else c, zech, qm1)
        if acc >= 0:
            total += 1 if acc % 2 == 0 else -1
    return total
