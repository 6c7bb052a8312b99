# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels; same contract as ``_pycount``."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _zadd(i64 a, i64 b, const i64[::1] zech, i64 qm1) nogil:
    cdef i64 d, z
    if a < 0:
        return b
    if b < 0:
        return a
    d = (b - a) % qm1
    if d < 0:
        d += qm1
    z = zech[d]
    if z < 0:
        return -1
    return (a + z) % qm1


cdef inline i64 _eval_group(const i64* point, i64 lo, i64 hi, const i64[::1] coef_log,
                            const i64[:, ::1] exps, i64 nvars, const i64[::1] zech,
                            i64 qm1) nogil:
    cdef i64 acc = -1, t, k, x, m, v
    for m in range(lo, hi):
        t = coef_log[m]
        for v in range(nvars):
            k = exps[m, v]
            if k:
                x = point[v]
                if x < 0:
                    t = -1
                    break
                t = (t + k * x) % qm1
        if t >= 0:
            acc = _zadd(acc, t, zech, qm1)
    return acc


def count_solutions(fixed, i64 nvars, coef_log, exps, group_start, group_kind, zech, i64 qm1):
    cdef const i64[::1] cl = np.ascontiguousarray(coef_log, dtype=np.int64)
    cdef const i64[:, ::1] ex = np.ascontiguousarray(np.asarray(exps, dtype=np.int64).reshape(len(coef_log), nvars))
    cdef const i64[::1] gs = np.ascontiguousarray(group_start, dtype=np.int64)
    cdef const i64[::1] gk = np.ascontiguousarray(group_kind, dtype=np.int64)
    cdef const i64[::1] zt = np.ascontiguousarray(zech, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] pt = np.zeros(max(nvars, 1), dtype=np.int64)
    cdef i64* point = <i64*> pt.data
    cdef i64 nfixed = len(fixed)
    cdef i64 ngroups = gk.shape[0]
    cdef i64 count = 0, g, val, v
    cdef bint ok
    for v in range(nfixed):
        point[v] = fixed[v]
    for v in range(nfixed, nvars):
        point[v] = -1
    with nogil:
        while True:
            ok = True
            for g in range(ngroups):
                val = _eval_group(point, gs[g], gs[g + 1], cl, ex, nvars, zt, qm1)
                if (val < 0) != (gk[g] == 0):
                    ok = False
                    break
            if ok:
                count += 1
            # odometer over the free coordinates, last one fastest
            v = nvars - 1
            while v >= nfixed:
                point[v] += 1
                if point[v] < qm1:
                    break
                point[v] = -1
                v -= 1
            if v < nfixed:
                break
    return count


def quadratic_character_sum(coef_log, degs, zech, i64 qm1):
    cdef const i64[::1] cl = np.ascontiguousarray(coef_log, dtype=np.int64)
    cdef const i64[::1] dg = np.ascontiguousarray(degs, dtype=np.int64)
    cdef const i64[::1] zt = np.ascontiguousarray(zech, dtype=np.int64)
    cdef i64 total = 0, x, acc, m, n = cl.shape[0]
    with nogil:
        for x in range(-1, qm1):
            acc = -1
            for m in range(n):
                if dg[m] == 0:
                    acc = _zadd(acc, cl[m], zt, qm1)
                elif x >= 0:
                    acc = _zadd(acc, (cl[m] + dg[m] * x) % qm1, zt, qm1)
            if acc >= 0:
                if acc % 2 == 0:
                    total += 1
                else:
                    total -= 1
    return total
