"""Text formats, deterministic instance generation, CLI, and bench harness.

Instance grammar (whitespace separated; lines starting with '#' and blank
lines are ignored):

    P1                          P2
    N                           N k
    w te   (N lines)            w te de   (N lines)

Schedule document:

    cost C
    activities m
    t_1 ... t_m                 (ascending activity times)
    assignment a_1 ... a_N      (activity ids, 1..m)

Subcommands: gen, solve, verify, bench.  `bench` re-verifies every cost it
reports and emits CSV rows `algo,n,k,seed,ops,elapsed_ns,cost`.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Optional, Union

from .core import (
    MAX_DE,
    MAX_N,
    MAX_TE,
    MAX_W,
    Cost,
    InstanceP1,
    InstanceP2,
    ScheduleP1,
    ScheduleP2,
    total_cost_p1,
    total_cost_p2,
    validate_p1,
    validate_p2,
)
from .p1_solvers import (
    P1SolveStats,
    solve_p1_brute,
    solve_p1_dp_grid,
    solve_p1_greedy,
    solve_p1_greedy_fast,
)
from .p2_solvers import (
    P2SolveStats,
    solve_p2_brute,
    solve_p2_dp_deque,
    solve_p2_dp_naive,
)

Instance = Union[InstanceP1, InstanceP2]
Schedule = Union[ScheduleP1, ScheduleP2]

DEFAULT_MAX_W = 1000
DEFAULT_MAX_TE = 10**9
DEFAULT_MAX_DE = 10**6


class ParseError(ValueError):
    """Malformed instance or schedule text; message names line and field."""


# -- deterministic generator -------------------------------------------------


class SplitMix64:
    """64-bit PRNG: golden-ratio counter fed through an xor-multiply mix.

    Chosen for being trivially portable, so identical parameters produce
    byte-identical corpora everywhere.  Range mapping is plain modulo.
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self.state = seed & self._MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


@dataclass(frozen=True)
class GenParams:
    """Inputs of the deterministic instance generator."""

    problem: str  # "ordered" | "fixedk"
    n: int
    seed: int
    k: Optional[int] = None
    max_w: int = DEFAULT_MAX_W
    max_te: int = DEFAULT_MAX_TE
    max_de: int = DEFAULT_MAX_DE

    def __post_init__(self) -> None:
        if self.problem not in ("ordered", "fixedk"):
            raise ValueError(f"unknown problem {self.problem!r}")
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n out of range: {self.n}")
        if not 1 <= self.max_w <= MAX_W:
            raise ValueError(f"max_w out of range: {self.max_w}")
        if not 0 <= self.max_te <= MAX_TE:
            raise ValueError(f"max_te out of range: {self.max_te}")
        if not 0 <= self.max_de <= MAX_DE:
            raise ValueError(f"max_de out of range: {self.max_de}")
        if self.problem == "fixedk":
            if self.k is None or not 1 <= self.k <= self.n:
                raise ValueError(f"k out of range: {self.k}")
            if self.max_te + 1 < self.n:
                raise ValueError(
                    f"cannot draw {self.n} distinct te values from "
                    f"[0, {self.max_te}]"
                )


def gen_instance(p: GenParams) -> str:
    """Render a deterministic instance document for `p`."""
    rng = SplitMix64(p.seed)
    lines = []
    if p.problem == "ordered":
        lines.append(f"# ordered n={p.n} seed={p.seed}")
        lines.append("P1")
        lines.append(str(p.n))
        for _ in range(p.n):
            w = 1 + rng.below(p.max_w)
            te = rng.below(p.max_te + 1)
            lines.append(f"{w} {te}")
    else:
        lines.append(f"# fixedk n={p.n} k={p.k} seed={p.seed}")
        lines.append("P2")
        lines.append(f"{p.n} {p.k}")
        seen: set[int] = set()
        te_vals: list[int] = []
        while len(te_vals) < p.n:
            v = rng.below(p.max_te + 1)
            if v not in seen:
                seen.add(v)
                te_vals.append(v)
        te_vals.sort()
        for te in te_vals:
            w = 1 + rng.below(p.max_w)
            de = rng.below(p.max_de + 1)
            lines.append(f"{w} {te} {de}")
    return "\n".join(lines) + "\n"


# -- instance serialization ---------------------------------------------------


def _significant_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((no, line.split()))
    return out


def _take(lines: list[tuple[int, list[str]]], pos: int, what: str):
    if pos >= len(lines):
        raise ParseError(f"unexpected end of input: expected {what}")
    return lines[pos]


def _ints(no: int, fields: list[str], count: int, what: str) -> list[int]:
    if len(fields) != count:
        raise ParseError(
            f"line {no}: expected {count} field(s) for {what}, "
            f"got {len(fields)}"
        )
    vals = []
    for f in fields:
        try:
            vals.append(int(f))
        except ValueError:
            raise ParseError(f"line {no}: not an integer: {f!r}") from None
    return vals


def parse_instance(text: str) -> Instance:
    """Parse an instance document, enforcing every documented bound."""
    lines = _significant_lines(text)
    no, fields = _take(lines, 0, "problem tag")
    tag = fields[0]
    if len(fields) != 1 or tag not in ("P1", "P2"):
        raise ParseError(f"line {no}: expected problem tag P1 or P2")
    if tag == "P1":
        no, fields = _take(lines, 1, "employee count")
        (n,) = _ints(no, fields, 1, "employee count")
        if not 1 <= n <= MAX_N:
            raise ParseError(f"line {no}: n out of range: {n}")
        if len(lines) != 2 + n:
            raise ParseError(
                f"expected {n} employee lines, got {len(lines) - 2}"
            )
        w, te = [], []
        for row in range(n):
            no, fields = lines[2 + row]
            wj, tj = _ints(no, fields, 2, "employee (w te)")
            if not 1 <= wj <= MAX_W:
                raise ParseError(f"line {no}: weight out of bounds: {wj}")
            if not 0 <= tj <= MAX_TE:
                raise ParseError(f"line {no}: te out of bounds: {tj}")
            w.append(wj)
            te.append(tj)
        return InstanceP1(tuple(w), tuple(te))
    no, fields = _take(lines, 1, "employee count and k")
    n, k = _ints(no, fields, 2, "header (N k)")
    if not 1 <= n <= MAX_N:
        raise ParseError(f"line {no}: n out of range: {n}")
    if k > n:
        raise ParseError(f"line {no}: k > N ({k} > {n})")
    if k < 1:
        raise ParseError(f"line {no}: k out of range: {k}")
    if len(lines) != 2 + n:
        raise ParseError(f"expected {n} employee lines, got {len(lines) - 2}")
    w, te, de = [], [], []
    prev_te: Optional[int] = None
    for row in range(n):
        no, fields = lines[2 + row]
        wj, tj, dj = _ints(no, fields, 3, "employee (w te de)")
        if not 1 <= wj <= MAX_W:
            raise ParseError(f"line {no}: weight out of bounds: {wj}")
        if not 0 <= tj <= MAX_TE:
            raise ParseError(f"line {no}: te out of bounds: {tj}")
        if not 0 <= dj <= MAX_DE:
            raise ParseError(f"line {no}: de out of bounds: {dj}")
        if prev_te is not None and tj <= prev_te:
            raise ParseError(f"line {no}: te not strictly increasing")
        prev_te = tj
        w.append(wj)
        te.append(tj)
        de.append(dj)
    return InstanceP2(tuple(w), tuple(te), tuple(de), k)


def write_instance(inst: Instance) -> str:
    """Render an instance; parse_instance(write_instance(x)) == x."""
    if isinstance(inst, InstanceP1):
        lines = ["P1", str(inst.n)]
        lines += [f"{w} {t}" for w, t in zip(inst.w, inst.te)]
    else:
        lines = ["P2", f"{inst.n} {inst.k}"]
        lines += [
            f"{w} {t} {d}" for w, t, d in zip(inst.w, inst.te, inst.de)
        ]
    return "\n".join(lines) + "\n"


# -- schedule serialization ----------------------------------------------------


def write_schedule(inst: Instance, cost: Cost, schedule: Schedule) -> str:
    """Render a schedule document (cost, activity times, assignment)."""
    if isinstance(inst, InstanceP1):
        assert isinstance(schedule, ScheduleP1)
        times = sorted(set(schedule.tasgn))
        ids = {t: i + 1 for i, t in enumerate(times)}
        assignment = [ids[t] for t in schedule.tasgn]
    else:
        assert isinstance(schedule, ScheduleP2)
        times = [inst.te[j - 1] for j in schedule.time_idx]
        assignment = []
        for i in range(1, inst.k + 1):
            size = schedule.boundaries[i] - schedule.boundaries[i - 1]
            assignment += [i] * size
    lines = [
        f"cost {cost}",
        f"activities {len(times)}",
        " ".join(str(t) for t in times),
        "assignment " + " ".join(str(a) for a in assignment),
    ]
    return "\n".join(lines) + "\n"


def read_schedule(inst: Instance, text: str) -> tuple[Cost, Schedule]:
    """Parse a schedule document back into (cost, schedule) for `inst`."""
    lines = _significant_lines(text)
    no, fields = _take(lines, 0, "cost line")
    if len(fields) != 2 or fields[0] != "cost":
        raise ParseError(f"line {no}: expected 'cost C'")
    cost = _ints(no, fields[1:], 1, "cost")[0]
    no, fields = _take(lines, 1, "activities line")
    if len(fields) != 2 or fields[0] != "activities":
        raise ParseError(f"line {no}: expected 'activities m'")
    m = _ints(no, fields[1:], 1, "activity count")[0]
    if m < 1:
        raise ParseError(f"line {no}: activity count out of range: {m}")
    no, fields = _take(lines, 2, "activity times")
    times = _ints(no, fields, m, "activity times")
    for a, b in zip(times, times[1:]):
        if a >= b:
            raise ParseError(f"line {no}: activity times not increasing")
    no, fields = _take(lines, 3, "assignment line")
    if not fields or fields[0] != "assignment":
        raise ParseError(f"line {no}: expected 'assignment a_1 ... a_N'")
    ids = _ints(no, fields[1:], inst.n, "assignment")
    if len(lines) != 4:
        raise ParseError("trailing content after assignment line")
    prev = 1
    for a in ids:
        if not 1 <= a <= m:
            raise ParseError(f"line {no}: activity id out of range: {a}")
        if a < prev:
            raise ParseError(f"line {no}: assignment not nondecreasing")
        prev = a
    if isinstance(inst, InstanceP1):
        return cost, ScheduleP1(tuple(times[a - 1] for a in ids))
    if m != inst.k:
        raise ParseError(f"activity count {m} does not match k={inst.k}")
    te_index = {t: j + 1 for j, t in enumerate(inst.te)}
    time_idx = []
    for t in times:
        if t not in te_index:
            raise ParseError(f"activity time {t} is not an employee te")
        time_idx.append(te_index[t])
    bounds = [0] * (m + 1)
    for a in ids:
        bounds[a] += 1
    for i in range(1, m + 1):
        bounds[i] += bounds[i - 1]
    return cost, ScheduleP2(tuple(time_idx), tuple(bounds))


# -- solver dispatch -----------------------------------------------------------

P1_ALGOS = ("dp-grid", "greedy", "greedy-fast", "brute")
P2_ALGOS = ("dp-naive", "dp-deque", "brute")


def _solve(inst: Instance, algo: str, trace: bool):
    """Run one solver; returns (cost, schedule, ops, trace_lines)."""
    if isinstance(inst, InstanceP1):
        st = P1SolveStats(collect_trace=trace)
        if algo == "dp-grid":
            cost, sched = solve_p1_dp_grid(inst, stats=st)
            ops = st.cells
        elif algo == "greedy":
            cost, sched = solve_p1_greedy(inst, stats=st)
            ops = st.iterations
        elif algo == "greedy-fast":
            cost, sched = solve_p1_greedy_fast(inst, stats=st)
            ops = st.node_visits
        elif algo == "brute":
            cost, sched = solve_p1_brute(inst, stats=st)
            ops = st.candidates
        else:
            raise ValueError(f"algo {algo!r} not valid for the ordered problem")
        lines = [
            f"iter={i} p={s.p} T_shift={s.t_shift} pozshift={s.pozshift}"
            for i, s in enumerate(st.trace, start=1)
        ]
        return cost, sched, ops, lines
    st2 = P2SolveStats(collect_trace=trace)
    if algo == "dp-naive":
        cost, sched = solve_p2_dp_naive(inst, stats=st2)
        ops = st2.transitions
    elif algo == "dp-deque":
        impl = "python" if trace else "auto"
        cost, sched = solve_p2_dp_deque(inst, stats=st2, impl=impl)
        ops = sum(st2.row_ops)
    elif algo == "brute":
        cost, sched = solve_p2_brute(inst, stats=st2)
        ops = st2.candidates
    else:
        raise ValueError(f"algo {algo!r} not valid for the fixedk problem")
    return cost, sched, ops, list(st2.trace)


def verify_schedule_text(inst: Instance, schedule_text: str) -> Optional[str]:
    """Return None if the document holds a valid schedule whose cost matches."""
    try:
        cost, sched = read_schedule(inst, schedule_text)
    except ParseError as e:
        return str(e)
    if isinstance(inst, InstanceP1):
        assert isinstance(sched, ScheduleP1)
        report = validate_p1(inst, sched)
        if report is not None:
            return report
        actual = total_cost_p1(inst, sched)
    else:
        assert isinstance(sched, ScheduleP2)
        report = validate_p2(inst, sched)
        if report is not None:
            return report
        actual = total_cost_p2(inst, sched)
    if actual != cost:
        return f"cost mismatch: document says {cost}, schedule costs {actual}"
    return None


# -- bench ---------------------------------------------------------------------


@dataclass(frozen=True)
class BenchRecord:
    """One timed, re-verified solver run."""

    algo: str
    n: int
    k: int
    seed: int
    ops: int
    elapsed_ns: int
    cost: Cost

    def csv_row(self) -> str:
        return (
            f"{self.algo},{self.n},{self.k},{self.seed},"
            f"{self.ops},{self.elapsed_ns},{self.cost}"
        )


BENCH_HEADER = "algo,n,k,seed,ops,elapsed_ns,cost"


def run_bench(
    problem: str,
    algos: list[str],
    n: int,
    k: Optional[int],
    seed: int,
    repeats: int,
    max_w: int = DEFAULT_MAX_W,
    max_te: int = DEFAULT_MAX_TE,
    max_de: int = DEFAULT_MAX_DE,
) -> list[BenchRecord]:
    params = GenParams(
        problem=problem, n=n, seed=seed, k=k,
        max_w=max_w, max_te=max_te, max_de=max_de,
    )
    inst = parse_instance(gen_instance(params))
    valid = P1_ALGOS if problem == "ordered" else P2_ALGOS
    for algo in algos:
        if algo not in valid:
            raise ValueError(f"algo {algo!r} not valid for problem {problem!r}")
    records = []
    for algo in algos:
        _solve(inst, algo, trace=False)  # untimed warmup: JIT load, caches
        for _ in range(repeats):
            t0 = time.perf_counter_ns()
            cost, sched, ops, _ = _solve(inst, algo, trace=False)
            elapsed = time.perf_counter_ns() - t0
            doc = write_schedule(inst, cost, sched)
            report = verify_schedule_text(inst, doc)
            if report is not None:
                raise AssertionError(
                    f"bench refused to report unverified result for "
                    f"{algo}: {report}"
                )
            records.append(
                BenchRecord(algo, n, k if k is not None else 0, seed, ops,
                            elapsed, cost)
            )
    return records


# -- CLI -----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mdsched",
        description="Minimum-dissatisfaction personnel scheduling toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a deterministic instance")
    g.add_argument("--problem", required=True, choices=("ordered", "fixedk"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=None)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--max-w", type=int, default=DEFAULT_MAX_W)
    g.add_argument("--max-te", type=int, default=DEFAULT_MAX_TE)
    g.add_argument("--max-de", type=int, default=DEFAULT_MAX_DE)
    g.add_argument("--out", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("--problem", required=True, choices=("ordered", "fixedk"))
    s.add_argument(
        "--algo", required=True,
        choices=("dp-grid", "greedy", "greedy-fast", "brute",
                 "dp-naive", "dp-deque"),
    )
    s.add_argument("--input", required=True)
    s.add_argument("--out", default=None)
    s.add_argument("--trace", action="store_true")

    v = sub.add_parser("verify", help="check a schedule document")
    v.add_argument("--input", required=True)
    v.add_argument("--schedule", required=True)

    b = sub.add_parser("bench", help="time solvers on a generated instance")
    b.add_argument("--problem", required=True, choices=("ordered", "fixedk"))
    b.add_argument("--algos", required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, default=None)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--max-w", type=int, default=DEFAULT_MAX_W)
    b.add_argument("--max-te", type=int, default=DEFAULT_MAX_TE)
    b.add_argument("--max-de", type=int, default=DEFAULT_MAX_DE)
    b.add_argument("--out", default=None)
    return ap


def run_cli(argv: list[str]) -> int:
    """Entry point; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        if args.command == "gen":
            params = GenParams(
                problem=args.problem, n=args.n, seed=args.seed, k=args.k,
                max_w=args.max_w, max_te=args.max_te, max_de=args.max_de,
            )
            text = gen_instance(params)
            with open(args.out, "w") as fh:
                fh.write(text)
            return 0

        if args.command == "solve":
            with open(args.input) as fh:
                inst = parse_instance(fh.read())
            expected = InstanceP1 if args.problem == "ordered" else InstanceP2
            if not isinstance(inst, expected):
                print(
                    f"error: instance file is not a {args.problem} instance",
                    file=sys.stderr,
                )
                return 2
            cost, sched, _, trace_lines = _solve(inst, args.algo, args.trace)
            if args.trace:
                for line in trace_lines:
                    print(line, file=sys.stderr)
            doc = write_schedule(inst, cost, sched)
            sys.stdout.write(doc)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(doc)
            return 0

        if args.command == "verify":
            with open(args.input) as fh:
                inst = parse_instance(fh.read())
            with open(args.schedule) as fh:
                sched_text = fh.read()
            report = verify_schedule_text(inst, sched_text)
            if report is None:
                print("OK")
                return 0
            print(f"INVALID: {report}", file=sys.stderr)
            return 1

        if args.command == "bench":
            algos = [a.strip() for a in args.algos.split(",") if a.strip()]
            records = run_bench(
                args.problem, algos, args.n, args.k, args.seed,
                args.repeats, args.max_w, args.max_te, args.max_de,
            )
            out_lines = [BENCH_HEADER] + [r.csv_row() for r in records]
            text = "\n".join(out_lines) + "\n"
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command}")


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
