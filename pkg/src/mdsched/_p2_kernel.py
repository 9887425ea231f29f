"""JIT kernel for the deque-accelerated fixed-k dynamic program.

Runs only when a precomputed magnitude guard shows every intermediate fits
int64 (see `p2_solvers`); otherwise the exact pure-Python twin is used.
Threshold fractions are compared by an exact Euclid-style descent instead of
cross-multiplication, which would need 128-bit products.
"""

import numpy as np
from numba import njit

INF = 1 << 62


@njit(cache=True)
def _cmp_frac(a, b, c, d):
    # exact comparison of a/b vs c/d for a, c >= 0 and b, d >= 1
    while True:
        qa = a // b
        qc = c // d
        if qa != qc:
            return -1 if qa < qc else 1
        a -= qa * b
        c -= qc * d
        if a == 0 and c == 0:
            return 0
        if a == 0:
            return -1
        if c == 0:
            return 1
        ta = a
        tb = b
        a = d
        b = c
        c = tb
        d = ta


@njit(cache=True)
def deque_dp_run(w, te, de, ws, wr, wl, k):
    """Fill both DP tables; arrays are 1-based with dummy index 0.

    Returns (dmin0, dmin1, par0, par1, row_ops) where row_ops[i] counts the
    deque pushes plus pops spent on row i.
    """
    n = w.size - 1
    dmin0 = np.full((k + 1, n + 1), INF, np.int64)
    dmin1 = np.full((k + 1, n + 1), INF, np.int64)
    par0 = np.full((k + 1, n + 1), -1, np.int32)
    par1 = np.full((k + 1, n + 1), -1, np.int32)
    dmin0[0, 0] = 0
    dmin1[0, 0] = 0
    row_ops = np.zeros(k + 1, np.int64)

    qv = np.empty(n + 1, np.int64)
    qj = np.empty(n + 1, np.int64)
    qn = np.empty(n + 1, np.int64)
    qd = np.empty(n + 1, np.int64)
    rv = np.empty(n + 1, np.int64)
    rj = np.empty(n + 1, np.int64)
    rn = np.empty(n + 1, np.int64)
    rd = np.empty(n + 1, np.int64)

    te1 = te[1]
    ten = te[n]
    for i in range(1, k + 1):
        h0 = 0
        t0 = 0
        h1 = 0
        t1 = 0
        ops = 0
        for j in range(i, n + 1):
            tej = te[j]
            wsj = ws[j]

            # candidates keyed by activity time: value of using employee j's
            # time for activity i with the group reaching back to e.j
            while t0 - h0 > 1 and _cmp_frac(qn[h0 + 1], qd[h0 + 1], tej, 1) < 0:
                h0 += 1
                ops += 1
            v_new = dmin1[i - 1, j - 1]
            if v_new < INF:
                tn = tej
                td = np.int64(1)
                while t0 - h0 >= 1:
                    e = t0 - 1
                    x = (
                        qv[e]
                        + wr[qj[e]]
                        - wr[j + 1]
                        - (wsj - ws[qj[e] - 1]) * (ten - tej)
                    )
                    dc = v_new - x
                    if dc <= 0:
                        t0 -= 1
                        ops += 1
                        continue
                    dp = ws[j - 1] - ws[qj[e] - 1]
                    sn = tej * dp + dc
                    if _cmp_frac(sn, dp, qn[e], qd[e]) <= 0:
                        t0 -= 1
                        ops += 1
                        continue
                    tn = sn
                    td = dp
                    break
                qv[t0] = v_new
                qj[t0] = j
                qn[t0] = tn
                qd[t0] = td
                t0 += 1
                ops += 1
            if t0 - h0 >= 1:
                fj = qj[h0]
                dmin0[i, j] = (
                    qv[h0]
                    + wr[fj]
                    - wr[j + 1]
                    - (wsj - ws[fj - 1]) * (ten - tej)
                    + de[j]
                )
                par0[i, j] = fj - 1

            # candidates keyed by weight prefix: activity already fixed at
            # e.j's time, employees e.j+1..j appended on its right
            while t1 - h1 > 1 and _cmp_frac(rn[h1 + 1], rd[h1 + 1], wsj, 1) < 0:
                h1 += 1
                ops += 1
            v0 = dmin0[i, j]
            if v0 < INF:
                tn = wsj
                td = np.int64(1)
                while t1 - h1 >= 1:
                    e = t1 - 1
                    x = (
                        rv[e]
                        + wl[j]
                        - wl[rj[e]]
                        - (wsj - ws[rj[e]]) * (te[rj[e]] - te1)
                    )
                    dc = v0 - x
                    if dc <= 0:
                        t1 -= 1
                        ops += 1
                        continue
                    dp = tej - te[rj[e]]
                    sn = wsj * dp + dc
                    if _cmp_frac(sn, dp, rn[e], rd[e]) <= 0:
                        t1 -= 1
                        ops += 1
                        continue
                    tn = sn
                    td = dp
                    break
                rv[t1] = v0
                rj[t1] = j
                rn[t1] = tn
                rd[t1] = td
                t1 += 1
                ops += 1
            if t1 - h1 >= 1:
                fj = rj[h1]
                dmin1[i, j] = (
                    rv[h1]
                    + wl[j]
                    - wl[fj]
                    - (wsj - ws[fj]) * (te[fj] - te1)
                )
                par1[i, j] = fj
        row_ops[i] = ops
    return dmin0, dmin1, par0, par1, row_ops
