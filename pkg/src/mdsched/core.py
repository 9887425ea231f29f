"""Domain model: employees, problem instances, schedules, exact cost evaluation.

All times, weights and costs are plain Python integers.  Cost arithmetic is
exact by construction (no floating point anywhere), so cross-solver equality
checks can demand bit-for-bit identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

# Exact integer cost.  Under the documented input bounds the largest possible
# total is about N * w_max * te_max = 1e21 < 2**70, well within Python's ints.
Cost = int

MAX_N = 10**6
MAX_W = 10**6
MAX_TE = 10**9
MAX_DE = 10**12


@dataclass(frozen=True)
class Employee:
    """One employee: weight `w` and preferred working time `te`."""

    w: int
    te: int


def _check_employee_arrays(w: tuple[int, ...], te: tuple[int, ...]) -> None:
    n = len(w)
    if n == 0:
        raise ValueError("instance must have at least one employee")
    if n > MAX_N:
        raise ValueError(f"too many employees: {n} > {MAX_N}")
    if len(te) != n:
        raise ValueError(f"w and te length mismatch: {n} vs {len(te)}")
    for j, wj in enumerate(w, start=1):
        if not 1 <= wj <= MAX_W:
            raise ValueError(f"weight out of bounds at employee {j}: {wj}")
    for j, tj in enumerate(te, start=1):
        if not 0 <= tj <= MAX_TE:
            raise ValueError(f"te out of bounds at employee {j}: {tj}")


@dataclass(frozen=True)
class InstanceP1:
    """Order-constrained instance: employee j must not work after employee j+1.

    `te` may be in any order and may contain duplicates.
    """

    w: tuple[int, ...]
    te: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(self.w))
        object.__setattr__(self, "te", tuple(self.te))
        _check_employee_arrays(self.w, self.te)

    @property
    def n(self) -> int:
        return len(self.w)

    def employees(self) -> Iterator[Employee]:
        for wj, tj in zip(self.w, self.te):
            yield Employee(wj, tj)


@dataclass(frozen=True)
class InstanceP2:
    """Fixed activity count instance with employer costs.

    Exactly `k` activities must run, each at a distinct employee-preferred
    time; running one at te_j costs the employer de_j on top of the employee
    dissatisfaction.  `te` must be strictly increasing.
    """

    w: tuple[int, ...]
    te: tuple[int, ...]
    de: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(self.w))
        object.__setattr__(self, "te", tuple(self.te))
        object.__setattr__(self, "de", tuple(self.de))
        _check_employee_arrays(self.w, self.te)
        n = len(self.w)
        if len(self.de) != n:
            raise ValueError(f"de length mismatch: {len(self.de)} vs {n}")
        for j, dj in enumerate(self.de, start=1):
            if not 0 <= dj <= MAX_DE:
                raise ValueError(f"de out of bounds at employee {j}: {dj}")
        for j in range(1, n):
            if self.te[j - 1] >= self.te[j]:
                raise ValueError(
                    f"te not strictly increasing at employee {j + 1}"
                )
        if not 1 <= self.k <= n:
            raise ValueError(f"k out of range: k={self.k}, n={n}")

    @property
    def n(self) -> int:
        return len(self.w)

    def employees(self) -> Iterator[Employee]:
        for wj, tj in zip(self.w, self.te):
            yield Employee(wj, tj)


@dataclass(frozen=True)
class ScheduleP1:
    """Assigned working times, one per employee; must be nondecreasing.

    The distinct values of `tasgn`, in ascending order, are the activity
    times; equal consecutive values mean a shared activity.
    """

    tasgn: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tasgn", tuple(self.tasgn))


@dataclass(frozen=True)
class ScheduleP2:
    """Activity time indices plus contiguous employee groups.

    Activity i runs at te[time_idx[i-1]] (1-based employee index) and serves
    employees boundaries[i-1]+1 .. boundaries[i].  A structurally valid
    schedule keeps each activity's time index inside its own group; use
    `validate_p2` to check.
    """

    time_idx: tuple[int, ...]
    boundaries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "time_idx", tuple(self.time_idx))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))


def dissatisfaction(w: int, te: int, t: int) -> Cost:
    """Cost of an employee with weight `w`, preference `te`, working at `t`."""
    return w * abs(t - te)


def total_cost_p1(inst: InstanceP1, s: ScheduleP1) -> Cost:
    """Sum of employee dissatisfactions under schedule `s`."""
    if len(s.tasgn) != inst.n:
        raise ValueError(
            f"schedule length mismatch: {len(s.tasgn)} vs {inst.n}"
        )
    prev = 0
    for j, t in enumerate(s.tasgn, start=1):
        if t < prev:
            raise ValueError(f"tasgn not nondecreasing at employee {j}")
        prev = t
    return sum(
        wj * abs(t - tj) for wj, tj, t in zip(inst.w, inst.te, s.tasgn)
    )


def cost_p2_unchecked(
    inst: InstanceP2,
    time_idx: tuple[int, ...],
    boundaries: tuple[int, ...],
) -> Cost:
    """Evaluate a P2 schedule without the time-index-in-own-group invariant.

    Groups must still partition 1..N and time indices must be valid employee
    indices; used by the unconstrained search to price schedules whose
    activity time lies outside the group it serves.
    """
    total = 0
    for i, ji in enumerate(time_idx, start=1):
        t_act = inst.te[ji - 1]
        total += inst.de[ji - 1]
        for p in range(boundaries[i - 1] + 1, boundaries[i] + 1):
            total += inst.w[p - 1] * abs(inst.te[p - 1] - t_act)
    return total


def total_cost_p2(inst: InstanceP2, s: ScheduleP2) -> Cost:
    """Employer cost plus employee dissatisfaction for a valid P2 schedule."""
    report = validate_p2(inst, s)
    if report is not None:
        raise ValueError(report)
    return cost_p2_unchecked(inst, s.time_idx, s.boundaries)


def validate_p1(inst: InstanceP1, s: ScheduleP1) -> Optional[str]:
    """Return None if `s` is valid for `inst`, else the first violation."""
    if len(s.tasgn) != inst.n:
        return f"schedule length mismatch: {len(s.tasgn)} vs {inst.n}"
    prev = 0
    for j, t in enumerate(s.tasgn, start=1):
        if not isinstance(t, int):
            return f"tasgn not an integer at employee {j}"
        if t < 0:
            return f"tasgn negative at employee {j}"
        if t < prev:
            return f"tasgn not nondecreasing at employee {j}"
        prev = t
    return None


def validate_p2(inst: InstanceP2, s: ScheduleP2) -> Optional[str]:
    """Return None if `s` is valid for `inst`, else the first violation."""
    n, k = inst.n, inst.k
    if len(s.time_idx) != k:
        return f"k mismatch: {len(s.time_idx)} activities vs k={k}"
    if len(s.boundaries) != k + 1:
        return (
            f"invalid boundaries: expected {k + 1} entries, "
            f"got {len(s.boundaries)}"
        )
    b = s.boundaries
    if b[0] != 0:
        return f"invalid boundaries: first entry {b[0]} != 0"
    if b[-1] != n:
        return f"invalid boundaries: last entry {b[-1]} != {n}"
    for i in range(1, k + 1):
        if b[i - 1] >= b[i]:
            return f"invalid boundaries: group {i} empty or reversed"
    prev_j = 0
    for i, ji in enumerate(s.time_idx, start=1):
        if not 1 <= ji <= n:
            return f"time index out of range for activity {i}: {ji}"
        if ji <= prev_j:
            return f"time indices not strictly increasing at activity {i}"
        if not b[i - 1] < ji <= b[i]:
            return f"time index outside group for activity {i}"
        prev_j = ji
    return None
