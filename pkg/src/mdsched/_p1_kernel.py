"""JIT kernel for the segment-tree greedy solver.

Mirrors the pure-Python implementation in `p1_solvers` operation for
operation: same tree layout (top-down, exact-n, mid-split), same tie rules
(min/max combiners return the right operand on equal values), and the same
node-visit accounting, so the two implementations produce identical traces
and counters.  All quantities fit int64: assigned times stay <= max(te) and
running suffix sums are bounded by 3 * sum(w).

The sentinel NEG marks permanently ignored positions in the max tree;
additive deltas leave it fixed.
"""

import numpy as np
from numba import njit

NEG = -(1 << 62)

_MIN_POZ = 0
_MAX_POZ = 1


@njit(cache=True)
def _build(vals, poz, tv, tp, tlz, ctr):
    # place leaves and clear lazies; internal summaries are filled by
    # _rebuild_summaries (counted here once per node, like the pure twin)
    n = vals.size
    sn = np.empty(128, np.int64)
    sl = np.empty(128, np.int64)
    sh = np.empty(128, np.int64)
    sn[0] = 1
    sl[0] = 1
    sh[0] = n
    top = 1
    cnt = 0
    while top > 0:
        top -= 1
        x = sn[top]
        lo = sl[top]
        hi = sh[top]
        cnt += 1
        tlz[x] = 0
        if lo == hi:
            tv[x] = vals[lo - 1]
            tp[x] = poz[lo - 1]
            continue
        mid = (lo + hi) // 2
        sn[top] = 2 * x + 1
        sl[top] = mid + 1
        sh[top] = hi
        top += 1
        sn[top] = 2 * x
        sl[top] = lo
        sh[top] = mid
        top += 1
    ctr[0] += cnt


@njit(cache=True)
def _pull(tv, tp, x, mode):
    v1 = tv[2 * x]
    p1 = tp[2 * x]
    v2 = tv[2 * x + 1]
    p2 = tp[2 * x + 1]
    if mode == _MIN_POZ:
        if v1 < v2:
            tv[x] = v1
            tp[x] = p1
        else:
            tv[x] = v2
            tp[x] = p2
    else:
        if v1 > v2:
            tv[x] = v1
            tp[x] = p1
        else:
            tv[x] = v2
            tp[x] = p2


@njit(cache=True)
def _rebuild_summaries(tv, tp, n, mode):
    # recompute internal nodes bottom-up after _build filled the leaves
    sn = np.empty(128, np.int64)
    sl = np.empty(128, np.int64)
    sh = np.empty(128, np.int64)
    sp = np.empty(128, np.int64)
    sn[0] = 1
    sl[0] = 1
    sh[0] = n
    sp[0] = 0
    top = 1
    while top > 0:
        top -= 1
        x = sn[top]
        lo = sl[top]
        hi = sh[top]
        if sp[top] == 1:
            _pull(tv, tp, x, mode)
            continue
        if lo == hi:
            continue
        mid = (lo + hi) // 2
        sn[top] = x
        sl[top] = lo
        sh[top] = hi
        sp[top] = 1
        top += 1
        sn[top] = 2 * x + 1
        sl[top] = mid + 1
        sh[top] = hi
        sp[top] = 0
        top += 1
        sn[top] = 2 * x
        sl[top] = lo
        sh[top] = mid
        sp[top] = 0
        top += 1


@njit(cache=True)
def _apply(tv, tlz, x, d):
    if tv[x] != NEG:
        tv[x] += d
        tlz[x] += d


@njit(cache=True)
def _push(tv, tlz, x):
    d = tlz[x]
    if d != 0:
        _apply(tv, tlz, 2 * x, d)
        _apply(tv, tlz, 2 * x + 1, d)
        tlz[x] = 0


@njit(cache=True)
def _query(tv, tp, tlz, n, l, r, mode, ctr):
    sn = np.empty(128, np.int64)
    sl = np.empty(128, np.int64)
    sh = np.empty(128, np.int64)
    sn[0] = 1
    sl[0] = 1
    sh[0] = n
    top = 1
    res_v = np.int64(0)
    res_p = np.int64(0)
    have = False
    cnt = 0
    while top > 0:
        top -= 1
        x = sn[top]
        lo = sl[top]
        hi = sh[top]
        cnt += 1
        if l <= lo and hi <= r:
            if not have:
                res_v = tv[x]
                res_p = tp[x]
                have = True
            elif mode == _MIN_POZ:
                if not (res_v < tv[x]):
                    res_v = tv[x]
                    res_p = tp[x]
            else:
                if not (res_v > tv[x]):
                    res_v = tv[x]
                    res_p = tp[x]
            continue
        _push(tv, tlz, x)
        mid = (lo + hi) // 2
        if r > mid:
            sn[top] = 2 * x + 1
            sl[top] = mid + 1
            sh[top] = hi
            top += 1
        if l <= mid:
            sn[top] = 2 * x
            sl[top] = lo
            sh[top] = mid
            top += 1
    ctr[0] += cnt
    return res_v, res_p


@njit(cache=True)
def _update(tv, tp, tlz, n, l, r, d, mode, ctr):
    sn = np.empty(128, np.int64)
    sl = np.empty(128, np.int64)
    sh = np.empty(128, np.int64)
    sp = np.empty(128, np.int64)
    sn[0] = 1
    sl[0] = 1
    sh[0] = n
    sp[0] = 0
    top = 1
    cnt = 0
    while top > 0:
        top -= 1
        x = sn[top]
        lo = sl[top]
        hi = sh[top]
        if sp[top] == 1:
            _pull(tv, tp, x, mode)
            continue
        cnt += 1
        if l <= lo and hi <= r:
            _apply(tv, tlz, x, d)
            continue
        _push(tv, tlz, x)
        mid = (lo + hi) // 2
        sn[top] = x
        sl[top] = lo
        sh[top] = hi
        sp[top] = 1
        top += 1
        if r > mid:
            sn[top] = 2 * x + 1
            sl[top] = mid + 1
            sh[top] = hi
            sp[top] = 0
            top += 1
        if l <= mid:
            sn[top] = 2 * x
            sl[top] = lo
            sh[top] = mid
            sp[top] = 0
            top += 1
    ctr[0] += cnt


@njit(cache=True)
def _point_set_neg(tv, tp, tlz, n, i, mode, ctr):
    path = np.empty(64, np.int64)
    x = 1
    lo = 1
    hi = n
    depth = 0
    cnt = 0
    while lo != hi:
        path[depth] = x
        depth += 1
        cnt += 1
        _push(tv, tlz, x)
        mid = (lo + hi) // 2
        if i <= mid:
            x = 2 * x
            hi = mid
        else:
            x = 2 * x + 1
            lo = mid + 1
    cnt += 1
    tv[x] = NEG
    tp[x] = i
    tlz[x] = 0
    for d in range(depth - 1, -1, -1):
        _pull(tv, tp, path[d], mode)
    ctr[0] += cnt


@njit(cache=True)
def greedy_fast_run(w, te):
    """Run the suffix-shift greedy with two lazy trees and a shift array.

    Returns (tasgn, iterations, node_visits, trace_p, trace_shift,
    trace_pozshift); trace arrays are truncated to the iteration count.
    """
    n = w.size
    size = 4 * n
    ia_v = np.empty(size, np.int64)
    ia_p = np.empty(size, np.int64)
    ia_lz = np.empty(size, np.int64)
    ta_v = np.empty(size, np.int64)
    ta_p = np.empty(size, np.int64)
    ta_lz = np.empty(size, np.int64)
    ctr = np.zeros(1, np.int64)

    vals = np.empty(n, np.int64)
    poz = np.empty(n, np.int64)
    acc = np.int64(0)
    for i in range(n - 1, -1, -1):
        if te[i] <= 0:
            acc += w[i]
        else:
            acc -= w[i]
        vals[i] = acc
        poz[i] = i + 1
    _build(vals, poz, ia_v, ia_p, ia_lz, ctr)
    _rebuild_summaries(ia_v, ia_p, n, _MIN_POZ)

    for i in range(n):
        if te[i] <= 0:
            vals[i] = NEG
        else:
            vals[i] = -te[i]
        poz[i] = i + 1
    _build(vals, poz, ta_v, ta_p, ta_lz, ctr)
    _rebuild_summaries(ta_v, ta_p, n, _MAX_POZ)

    shift = np.zeros(n + 2, np.int64)
    trace_p = np.empty(n, np.int64)
    trace_shift = np.empty(n, np.int64)
    trace_poz = np.empty(n, np.int64)
    it = 0
    while True:
        vmin, pozmin = _query(ia_v, ia_p, ia_lz, n, 1, n, _MIN_POZ, ctr)
        if vmin >= 0:
            break
        tshift, pozshift = _query(
            ta_v, ta_p, ta_lz, n, pozmin, n, _MAX_POZ, ctr
        )
        _update(ta_v, ta_p, ta_lz, n, pozmin, n, -tshift, _MAX_POZ, ctr)
        shift[pozmin] += -tshift
        _point_set_neg(ta_v, ta_p, ta_lz, n, pozshift, _MAX_POZ, ctr)
        _update(
            ia_v, ia_p, ia_lz, n, 1, pozshift,
            2 * w[pozshift - 1], _MIN_POZ, ctr,
        )
        trace_p[it] = pozmin
        trace_shift[it] = tshift
        trace_poz[it] = pozshift
        it += 1

    tasgn = np.empty(n, np.int64)
    total = np.int64(0)
    for i in range(n):
        total += shift[i + 1]
        tasgn[i] = total
    return tasgn, it, ctr[0], trace_p[:it], trace_shift[:it], trace_poz[:it]
