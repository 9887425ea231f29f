"""Solvers for the order-constrained problem.

Four routes to the same optimum:

  solve_p1_brute       exhaustive search over candidate time vectors (tiny N)
  solve_p1_dp_grid     table over (employee, time) when max(te) is small
  solve_p1_greedy      iterative suffix-shift improvement, O(N) per iteration
  solve_p1_greedy_fast the same greedy run on lazy segment trees

All return an exact optimal cost and a witness schedule.  The greedy starts
everyone at time 0 and repeatedly delays a suffix until the next preferred
time is reached; assigned times only ever move right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .core import Cost, InstanceP1, ScheduleP1
from .segtree import NEG_INF, SegTree, add_value_pos, max_poz, min_poz

GRID_CELL_LIMIT = 2**28
BRUTE_MAX_N = 10


class TraceStep(NamedTuple):
    """One greedy iteration: suffix start, raw (negative) shift, crossing."""

    p: int
    t_shift: int
    pozshift: int


class GreedyState(NamedTuple):
    """Snapshot of the greedy arrays at the top of one iteration."""

    tasgn: tuple[int, ...]
    dinc: tuple[int, ...]
    incsum: tuple[int, ...]


@dataclass
class P1SolveStats:
    """Counters filled in by whichever P1 solver receives this object."""

    iterations: int = 0
    node_visits: int = 0
    cells: int = 0
    candidates: int = 0
    impl: str = ""
    collect_trace: bool = False
    trace: list[TraceStep] = field(default_factory=list)
    collect_snapshots: bool = False
    snapshots: list[GreedyState] = field(default_factory=list)


def solve_p1_brute(
    inst: InstanceP1, *, stats: Optional[P1SolveStats] = None
) -> tuple[Cost, ScheduleP1]:
    """Try every nondecreasing time vector drawn from the distinct te values.

    Some optimum always uses only preferred times: each activity serves a
    contiguous employee group, and a weighted median of the group (one of its
    te values) minimizes the group's cost.
    """
    n = inst.n
    if n > BRUTE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_MAX_N}, got {n}")
    candidates = sorted(set(inst.te))
    best: Optional[Cost] = None
    best_vec: tuple[int, ...] = ()
    count = 0
    for vec in itertools.combinations_with_replacement(candidates, n):
        count += 1
        cost = 0
        for wj, tj, t in zip(inst.w, inst.te, vec):
            cost += wj * abs(t - tj)
        if best is None or cost < best:
            best = cost
            best_vec = vec
    if stats is not None:
        stats.candidates = count
        stats.impl = "python"
    assert best is not None
    return best, ScheduleP1(best_vec)


def solve_p1_dp_grid(
    inst: InstanceP1, *, stats: Optional[P1SolveStats] = None
) -> tuple[Cost, ScheduleP1]:
    """Minimize over the grid (employee i, time t in 0..max(te)).

    State: cheapest way to place employees i..N at times >= t.  Either no
    activity happens at t (move to t+1) or employee i works at t.  At
    t = max(te) only the work branch applies: pushing any activity past the
    largest preferred time can always be undone by clamping.  One decision
    bit per cell is kept for the traceback.
    """
    n = inst.n
    t_max = max(inst.te)
    cells = n * (t_max + 1)
    if cells > GRID_CELL_LIMIT:
        raise ValueError(
            f"grid too large: {n} x {t_max + 1} = {cells} cells "
            f"(limit {GRID_CELL_LIMIT})"
        )
    ts = np.arange(t_max + 1, dtype=np.int64)
    nxt = np.zeros(t_max + 1, dtype=np.int64)
    decisions: list[np.ndarray] = [np.empty(0, np.uint8)] * n
    for i in range(n - 1, -1, -1):
        here = inst.w[i] * np.abs(ts - inst.te[i]) + nxt
        row = np.minimum.accumulate(here[::-1])[::-1]
        take = np.empty(t_max + 1, dtype=bool)
        if t_max > 0:
            take[:-1] = here[:-1] <= row[1:]
        take[-1] = True
        decisions[i] = np.packbits(take)
        nxt = row
    cost = int(nxt[0])

    tasgn = []
    t = 0
    for i in range(n):
        bits = np.unpackbits(decisions[i], count=t_max + 1)
        while not bits[t]:
            t += 1
        tasgn.append(t)
    if stats is not None:
        stats.cells = cells
        stats.impl = "numpy"
    return cost, ScheduleP1(tuple(tasgn))


def _exact_cost(inst: InstanceP1, tasgn) -> Cost:
    return sum(
        wj * abs(int(t) - tj) for wj, tj, t in zip(inst.w, inst.te, tasgn)
    )


def solve_p1_greedy(
    inst: InstanceP1, *, stats: Optional[P1SolveStats] = None
) -> tuple[Cost, ScheduleP1]:
    """Suffix-shift greedy, recomputing the marginal arrays every iteration.

    dinc[j] is the cost change of employee j under a unit delay (+w once the
    preferred time is passed or met, -w before it); incsum[j] sums dinc over
    the suffix j..N.  While some suffix profits from delay (negative incsum),
    shift the best suffix right by the smallest amount that makes another
    employee reach their preferred time.  Ties: smallest suffix start,
    rightmost crossing employee.
    """
    n = inst.n
    te = np.asarray(inst.te, dtype=np.int64)
    w = np.asarray(inst.w, dtype=np.int64)
    tasgn = np.zeros(n, dtype=np.int64)
    iterations = 0
    while True:
        dinc = np.where(te <= tasgn, w, -w)
        incsum = np.cumsum(dinc[::-1])[::-1]
        if stats is not None and stats.collect_snapshots:
            stats.snapshots.append(
                GreedyState(
                    tuple(int(v) for v in tasgn),
                    tuple(int(v) for v in dinc),
                    tuple(int(v) for v in incsum),
                )
            )
        p = int(np.argmin(incsum))
        if int(incsum[p]) >= 0:
            break
        deficits = tasgn[p:] - te[p:]
        neg = deficits < 0
        t_shift = int(deficits[neg].max())
        pozshift = p + int(np.nonzero(neg & (deficits == t_shift))[0][-1]) + 1
        tasgn[p:] -= t_shift
        iterations += 1
        if iterations > n:
            raise AssertionError("greedy exceeded its iteration bound")
        if stats is not None and stats.collect_trace:
            stats.trace.append(TraceStep(p + 1, t_shift, pozshift))
    if stats is not None:
        stats.iterations = iterations
        stats.impl = "numpy"
    sched = ScheduleP1(tuple(int(t) for t in tasgn))
    return _exact_cost(inst, sched.tasgn), sched


def _greedy_fast_python(
    inst: InstanceP1, stats: Optional[P1SolveStats]
) -> tuple[Cost, ScheduleP1]:
    n = inst.n
    w, te = inst.w, inst.te
    incsum = [0] * n
    acc = 0
    for i in range(n - 1, -1, -1):
        acc += w[i] if te[i] <= 0 else -w[i]
        incsum[i] = acc
    iaux = SegTree(
        [(incsum[i], i + 1) for i in range(n)], min_poz, add_value_pos
    )
    taux = SegTree(
        [
            (NEG_INF, i + 1) if te[i] <= 0 else (-te[i], i + 1)
            for i in range(n)
        ],
        max_poz,
        add_value_pos,
    )
    shift = [0] * (n + 2)
    iterations = 0
    while True:
        vmin, pozmin = iaux.range_query(1, n)
        if vmin >= 0:
            break
        t_shift, pozshift = taux.range_query(pozmin, n)
        taux.range_update(pozmin, n, -t_shift)
        shift[pozmin] += -t_shift
        taux.point_set(pozshift, (NEG_INF, pozshift))
        iaux.range_update(1, pozshift, 2 * w[pozshift - 1])
        iterations += 1
        if stats is not None and stats.collect_trace:
            stats.trace.append(TraceStep(pozmin, t_shift, pozshift))
    tasgn = []
    total = 0
    for i in range(n):
        total += shift[i + 1]
        tasgn.append(total)
    if stats is not None:
        stats.iterations = iterations
        stats.node_visits = iaux.visits_total + taux.visits_total
        stats.impl = "python"
    sched = ScheduleP1(tuple(tasgn))
    return _exact_cost(inst, sched.tasgn), sched


def solve_p1_greedy_fast(
    inst: InstanceP1,
    *,
    stats: Optional[P1SolveStats] = None,
    impl: str = "auto",
) -> tuple[Cost, ScheduleP1]:
    """Same greedy as `solve_p1_greedy`, with the scans replaced by trees.

    One tree serves minimum-incsum queries, a second serves the
    largest-deficit queries on suffixes, and a plain difference array
    accumulates the suffix shifts (only point reads of assigned times are
    ever needed, so a third tree would be wasted on them).  Crossed
    employees are retired from the deficit tree with a sentinel write; their
    sign flip reaches incsum as a +2w range update.  Suffix-start ties
    resolve to the rightmost minimum (combiner rule), so iteration traces
    may differ from `solve_p1_greedy` while costs agree exactly.
    """
    if impl not in ("auto", "python", "numba"):
        raise ValueError(f"unknown impl {impl!r}")
    if impl != "python":
        try:
            from . import _p1_kernel
        except ImportError:
            if impl == "numba":
                raise
            _p1_kernel = None
        if _p1_kernel is not None:
            w = np.asarray(inst.w, dtype=np.int64)
            te = np.asarray(inst.te, dtype=np.int64)
            tasgn, iterations, visits, tr_p, tr_s, tr_z = (
                _p1_kernel.greedy_fast_run(w, te)
            )
            if stats is not None:
                stats.iterations = int(iterations)
                stats.node_visits = int(visits)
                stats.impl = "numba"
                if stats.collect_trace:
                    stats.trace = [
                        TraceStep(int(a), int(b), int(c))
                        for a, b, c in zip(tr_p, tr_s, tr_z)
                    ]
            sched = ScheduleP1(tuple(int(t) for t in tasgn))
            return _exact_cost(inst, sched.tasgn), sched
    return _greedy_fast_python(inst, stats)
