"""Solvers for the fixed-activity-count problem with employer costs.

Exactly k activities run, each at a distinct employee-preferred time, and
each serves a contiguous employee group containing its own time index.  Two
dynamic programs (direct and deque-accelerated) share the same state:

  dmin0[i][j]  best cost with activity i at te_j, employees 1..j covered
  dmin1[i][j]  best cost with activity i at some time <= te_j, 1..j covered

plus a pair of exhaustive searches for tiny instances, one constrained to
the contiguous-group shape the DP explores and one free of it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .core import Cost, InstanceP2, ScheduleP2, cost_p2_unchecked
from .prefix import PrefixTables, build_prefix

BRUTE_MAX_N = 8

# magnitude cap on instances eligible for the int64 fast paths
_INT64_GUARD = 1 << 59


class Rational:
    """Exact fraction num/den with den > 0.

    Comparisons cross-multiply in unbounded integers, so ordering is exact
    even for thresholds whose products overflow machine words.  A distinct
    NEG_INF sentinel (class attribute) sorts below every fraction.
    """

    __slots__ = ("num", "den")

    NEG_INF: "_NegInf"

    def __init__(self, num: int, den: int = 1) -> None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    def _cmp(self, other) -> Optional[int]:
        if isinstance(other, Rational):
            lhs = self.num * other.den
            rhs = other.num * self.den
        elif isinstance(other, int):
            lhs = self.num
            rhs = other * self.den
        else:
            return None
        if lhs < rhs:
            return -1
        if lhs > rhs:
            return 1
        return 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __hash__(self):
        from math import gcd

        g = gcd(self.num, self.den)
        return hash((self.num // g, self.den // g))

    def __repr__(self):
        return f"{self.num}/{self.den}"


class _NegInf:
    """Sorts strictly below every Rational and every int."""

    __slots__ = ()

    def _valid(self, other) -> bool:
        return isinstance(other, (Rational, int))

    def __lt__(self, other):
        if other is self:
            return False
        return True if self._valid(other) else NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        return True if self._valid(other) else NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        return False if self._valid(other) else NotImplemented

    def __ge__(self, other):
        if other is self:
            return True
        return False if self._valid(other) else NotImplemented

    def __repr__(self):
        return "-inf"


Rational.NEG_INF = _NegInf()


class DequeEntry(NamedTuple):
    """A live candidate: base value, its index, and the key from which it
    could first become the cheapest choice."""

    v: int
    j: int
    threshold: Rational


@dataclass
class P2SolveStats:
    """Counters and optional table captures for the P2 solvers."""

    transitions: int = 0
    candidates: int = 0
    row_ops: list[int] = field(default_factory=list)
    impl: str = ""
    collect_tables: bool = False
    dmin0: object = None
    dmin1: object = None
    parent0: object = None
    parent1: object = None
    collect_trace: bool = False
    trace: list[str] = field(default_factory=list)


def _int64_safe(inst: InstanceP2, t: PrefixTables) -> bool:
    n = inst.n
    span = t.te[n] - t.te[1]
    cost_bound = t.wsum[n] * span + sum(inst.de)
    return max(cost_bound, t.te[n] * t.wsum[n]) <= _INT64_GUARD


def _traceback(par0, par1, n: int, k: int) -> ScheduleP2:
    time_idx = [0] * k
    bounds = [0] * (k + 1)
    bounds[k] = n
    j = n
    for i in range(k, 0, -1):
        ji = int(par1[i][j])
        time_idx[i - 1] = ji
        start = int(par0[i][ji])
        bounds[i - 1] = start
        j = start
    return ScheduleP2(tuple(time_idx), tuple(bounds))


def solve_p2_brute(
    inst: InstanceP2,
    mode: str = "restricted",
    *,
    stats: Optional[P2SolveStats] = None,
) -> tuple[Cost, ScheduleP2]:
    """Enumerate every k-activity schedule on a tiny instance.

    `restricted` keeps each activity's time index inside its own employee
    group (the shape the dynamic programs search); `unrestricted` combines
    any strictly increasing time indices with any group boundaries.  The two
    minima agree: moving an employee toward the group holding its activity's
    time never raises the cost.
    """
    if mode not in ("restricted", "unrestricted"):
        raise ValueError(f"unknown mode {mode!r}")
    n, k = inst.n, inst.k
    if n > BRUTE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_MAX_N}, got {n}")
    best: Optional[Cost] = None
    best_sched: Optional[ScheduleP2] = None
    count = 0
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        if mode == "restricted":
            pools = [
                range(bounds[i - 1] + 1, bounds[i] + 1)
                for i in range(1, k + 1)
            ]
            choices = itertools.product(*pools)
        else:
            choices = itertools.combinations(range(1, n + 1), k)
        for tidx in choices:
            count += 1
            c = cost_p2_unchecked(inst, tidx, bounds)
            if best is None or c < best:
                best = c
                best_sched = ScheduleP2(tidx, bounds)
    if stats is not None:
        stats.candidates = count
        stats.impl = "python"
    assert best is not None and best_sched is not None
    return best, best_sched


# -- direct DP ---------------------------------------------------------------


def _naive_python(inst: InstanceP2, t: PrefixTables, stats):
    from .prefix import group_cost_at_left, group_cost_at_right

    n, k = inst.n, inst.k
    de = (0,) + inst.de
    dmin0 = [[None] * (n + 1) for _ in range(k + 1)]
    dmin1 = [[None] * (n + 1) for _ in range(k + 1)]
    par0 = [[-1] * (n + 1) for _ in range(k + 1)]
    par1 = [[-1] * (n + 1) for _ in range(k + 1)]
    dmin0[0][0] = 0
    dmin1[0][0] = 0
    transitions = 0
    for i in range(1, k + 1):
        prev1 = dmin1[i - 1]
        for j in range(i, n + 1):
            best = None
            arg = -1
            for jp in range(i - 1, j):
                base = prev1[jp]
                if base is None:
                    continue
                transitions += 1
                c = base + group_cost_at_right(t, jp, j)
                if best is None or c < best:
                    best, arg = c, jp
            if best is not None:
                dmin0[i][j] = best + de[j]
                par0[i][j] = arg
            best = None
            arg = -1
            for jp in range(i, j + 1):
                base = dmin0[i][jp]
                if base is None:
                    continue
                transitions += 1
                c = base + group_cost_at_left(t, jp, j)
                if best is None or c < best:
                    best, arg = c, jp
            if best is not None:
                dmin1[i][j] = best
                par1[i][j] = arg
    if stats is not None:
        stats.transitions = transitions
        stats.impl = "python"
        if stats.collect_tables:
            stats.dmin0, stats.dmin1 = dmin0, dmin1
            stats.parent0, stats.parent1 = par0, par1
    return dmin0[k], dmin1, par0, par1


_SENT = np.int64(1 << 62)
_SENT_THRESH = np.int64(1 << 61)


def _naive_numpy(inst: InstanceP2, t: PrefixTables, stats):
    n, k = inst.n, inst.k
    ws = np.asarray(t.wsum, dtype=np.int64)
    wr = np.asarray(t.wright, dtype=np.int64)
    wl = np.asarray(t.wleft, dtype=np.int64)
    te = np.asarray(t.te, dtype=np.int64)
    de = np.asarray((0,) + inst.de, dtype=np.int64)
    u = te - te[1]
    u[0] = 0
    pre_left = ws * u - wl
    dmin0 = np.full((k + 1, n + 1), _SENT, dtype=np.int64)
    dmin1 = np.full((k + 1, n + 1), _SENT, dtype=np.int64)
    par0 = np.full((k + 1, n + 1), -1, dtype=np.int32)
    par1 = np.full((k + 1, n + 1), -1, dtype=np.int32)
    dmin0[0, 0] = 0
    dmin1[0, 0] = 0
    ten = int(te[n])
    transitions = 0
    for i in range(1, k + 1):
        prev1 = dmin1[i - 1]
        for j in range(i, n + 1):
            lo = i - 1
            x = ten - int(te[j])
            cand = prev1[lo:j] + wr[lo + 1 : j + 1] + ws[lo:j] * x
            a = int(np.argmin(cand))
            transitions += j - lo
            if cand[a] < _SENT_THRESH:
                dmin0[i, j] = int(cand[a]) - int(wr[j + 1]) - int(ws[j]) * x + int(de[j])
                par0[i, j] = lo + a
            cand2 = (
                dmin0[i, i : j + 1]
                + pre_left[i : j + 1]
                - int(ws[j]) * u[i : j + 1]
            )
            a2 = int(np.argmin(cand2))
            transitions += j - i + 1
            if cand2[a2] < _SENT_THRESH:
                dmin1[i, j] = int(cand2[a2]) + int(wl[j])
                par1[i, j] = i + a2
    if stats is not None:
        stats.transitions = transitions
        stats.impl = "numpy"
        if stats.collect_tables:
            stats.dmin0, stats.dmin1 = dmin0, dmin1
            stats.parent0, stats.parent1 = par0, par1
    return dmin0, dmin1, par0, par1


def solve_p2_dp_naive(
    inst: InstanceP2,
    *,
    stats: Optional[P2SolveStats] = None,
    impl: str = "auto",
) -> tuple[Cost, ScheduleP2]:
    """Evaluate both recurrences directly: every predecessor j' per cell.

    Predecessor ties resolve to the smallest j'.  Uses an int64 vectorized
    evaluation when a magnitude guard proves it exact, otherwise plain
    integers.
    """
    if impl not in ("auto", "python", "numpy"):
        raise ValueError(f"unknown impl {impl!r}")
    t = build_prefix(inst)
    n, k = inst.n, inst.k
    if impl == "auto":
        impl = "numpy" if _int64_safe(inst, t) else "python"
    elif impl == "numpy" and not _int64_safe(inst, t):
        raise ValueError("instance magnitudes unsafe for the int64 path")
    if impl == "numpy":
        dmin0, dmin1, par0, par1 = _naive_numpy(inst, t, stats)
        answer = int(dmin1[k, n])
        assert answer < _SENT_THRESH
    else:
        _, dmin1, par0, par1 = _naive_python(inst, t, stats)
        res = dmin1[k][n]
        assert res is not None
        answer = res
    return answer, _traceback(par0, par1, n, k)


# -- deque DP ----------------------------------------------------------------


def _deque_python(inst: InstanceP2, t: PrefixTables, stats):
    n, k = inst.n, inst.k
    te = t.te
    ws, wr, wl = t.wsum, t.wright, t.wleft
    de = (0,) + inst.de
    dmin0 = [[None] * (n + 1) for _ in range(k + 1)]
    dmin1 = [[None] * (n + 1) for _ in range(k + 1)]
    par0 = [[-1] * (n + 1) for _ in range(k + 1)]
    par1 = [[-1] * (n + 1) for _ in range(k + 1)]
    dmin0[0][0] = 0
    dmin1[0][0] = 0
    row_ops = [0] * (k + 1)
    te1, ten = te[1], te[n]
    tracing = stats is not None and stats.collect_trace
    for i in range(1, k + 1):
        prev1 = dmin1[i - 1]
        q0: list[DequeEntry] = []
        h0 = 0
        q1: list[DequeEntry] = []
        h1 = 0
        ops = 0
        for j in range(i, n + 1):
            tej = te[j]
            wsj = ws[j]

            while len(q0) - h0 > 1 and q0[h0 + 1].threshold < tej:
                h0 += 1
                ops += 1
                if tracing:
                    stats.trace.append(f"row {i} j={j} popfront dq0")
            v_new = prev1[j - 1]
            if v_new is not None:
                thr: Rational = Rational(tej)
                while len(q0) - h0 >= 1:
                    e = q0[-1]
                    x = (
                        e.v
                        + wr[e.j]
                        - wr[j + 1]
                        - (wsj - ws[e.j - 1]) * (ten - tej)
                    )
                    dc = v_new - x
                    if dc <= 0:
                        surpass = Rational.NEG_INF
                    else:
                        dp = ws[j - 1] - ws[e.j - 1]
                        surpass = Rational(tej * dp + dc, dp)
                    if surpass <= e.threshold:
                        q0.pop()
                        ops += 1
                        if tracing:
                            stats.trace.append(
                                f"row {i} j={j} popback dq0 (j={e.j})"
                            )
                        continue
                    thr = surpass
                    break
                q0.append(DequeEntry(v_new, j, thr))
                ops += 1
                if tracing:
                    stats.trace.append(
                        f"row {i} j={j} push dq0 threshold={thr}"
                    )
            if len(q0) - h0 >= 1:
                f = q0[h0]
                dmin0[i][j] = (
                    f.v
                    + wr[f.j]
                    - wr[j + 1]
                    - (wsj - ws[f.j - 1]) * (ten - tej)
                    + de[j]
                )
                par0[i][j] = f.j - 1

            while len(q1) - h1 > 1 and q1[h1 + 1].threshold < wsj:
                h1 += 1
                ops += 1
                if tracing:
                    stats.trace.append(f"row {i} j={j} popfront dq1")
            v0 = dmin0[i][j]
            if v0 is not None:
                thr = Rational(wsj)
                while len(q1) - h1 >= 1:
                    e = q1[-1]
                    x = (
                        e.v
                        + wl[j]
                        - wl[e.j]
                        - (wsj - ws[e.j]) * (te[e.j] - te1)
                    )
                    dc = v0 - x
                    if dc <= 0:
                        surpass = Rational.NEG_INF
                    else:
                        dp = tej - te[e.j]
                        surpass = Rational(wsj * dp + dc, dp)
                    if surpass <= e.threshold:
                        q1.pop()
                        ops += 1
                        if tracing:
                            stats.trace.append(
                                f"row {i} j={j} popback dq1 (j={e.j})"
                            )
                        continue
                    thr = surpass
                    break
                q1.append(DequeEntry(v0, j, thr))
                ops += 1
                if tracing:
                    stats.trace.append(
                        f"row {i} j={j} push dq1 threshold={thr}"
                    )
            if len(q1) - h1 >= 1:
                f = q1[h1]
                dmin1[i][j] = (
                    f.v
                    + wl[j]
                    - wl[f.j]
                    - (wsj - ws[f.j]) * (te[f.j] - te1)
                )
                par1[i][j] = f.j
        row_ops[i] = ops
    if stats is not None:
        stats.row_ops = row_ops
        stats.impl = "python"
        if stats.collect_tables:
            stats.dmin0, stats.dmin1 = dmin0, dmin1
            stats.parent0, stats.parent1 = par0, par1
    return dmin1[k][n], par0, par1


def solve_p2_dp_deque(
    inst: InstanceP2,
    *,
    stats: Optional[P2SolveStats] = None,
    impl: str = "auto",
) -> tuple[Cost, ScheduleP2]:
    """Same values as `solve_p2_dp_naive` in O(N) amortized work per row.

    Per row, two monotone deques hold the candidate predecessors: one keyed
    by activity time for dmin0, one keyed by weight prefix for dmin1.  Newer
    candidates grow strictly slower along the key axis, so each candidate is
    assigned the key from which it could first win (its threshold); a new
    candidate evicts back entries whose threshold it beats no later than
    their own start, and the front is dropped once the second entry's
    threshold falls below the current key.  Thresholds are exact rationals;
    a dominance with dc <= 0 evicts immediately.
    """
    if impl not in ("auto", "python", "numba"):
        raise ValueError(f"unknown impl {impl!r}")
    t = build_prefix(inst)
    n, k = inst.n, inst.k
    if impl == "auto":
        try:
            from . import _p2_kernel  # noqa: F401

            impl = "numba" if _int64_safe(inst, t) else "python"
        except ImportError:
            impl = "python"
    elif impl == "numba" and not _int64_safe(inst, t):
        raise ValueError("instance magnitudes unsafe for the int64 path")
    if impl == "numba":
        from . import _p2_kernel

        w_a = np.asarray((0,) + inst.w, dtype=np.int64)
        te_a = np.asarray(t.te, dtype=np.int64)
        de_a = np.asarray((0,) + inst.de, dtype=np.int64)
        ws_a = np.asarray(t.wsum, dtype=np.int64)
        wr_a = np.asarray(t.wright, dtype=np.int64)
        wl_a = np.asarray(t.wleft, dtype=np.int64)
        dmin0, dmin1, par0, par1, row_ops = _p2_kernel.deque_dp_run(
            w_a, te_a, de_a, ws_a, wr_a, wl_a, k
        )
        answer = int(dmin1[k, n])
        assert answer < _p2_kernel.INF
        if stats is not None:
            stats.row_ops = [int(v) for v in row_ops]
            stats.impl = "numba"
            if stats.collect_tables:
                stats.dmin0, stats.dmin1 = dmin0, dmin1
                stats.parent0, stats.parent1 = par0, par1
        return answer, _traceback(par0, par1, n, k)
    answer, par0, par1 = _deque_python(inst, t, stats)
    assert answer is not None
    return answer, _traceback(par0, par1, n, k)
