"""Prefix tables turning contiguous group costs into O(1) expressions.

All arrays are 1-based (index 0 is a real boundary value where defined, a
placeholder otherwise) to keep the closed forms readable:

  wsum[i]   = w_1 + ... + w_i                       (wsum[0] = 0)
  wright[i] = sum_{p=i..N} w_p * (te_N - te_p)      (wright[N+1] = 0)
  wleft[i]  = sum_{p=1..i} w_p * (te_p - te_1)      (wleft[0] = 0)
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Cost, InstanceP2


@dataclass(frozen=True)
class PrefixTables:
    """Immutable prefix sums for one instance; shared by the P2 solvers."""

    wsum: tuple[int, ...]    # indices 0..N
    wright: tuple[int, ...]  # indices 0..N+1 (index 0 unused)
    wleft: tuple[int, ...]   # indices 0..N
    te: tuple[int, ...]      # indices 0..N (index 0 unused)

    @property
    def n(self) -> int:
        return len(self.wsum) - 1


def build_prefix(inst: InstanceP2) -> PrefixTables:
    """Build the three prefix arrays for a strictly-increasing-te instance."""
    n = inst.n
    w = (0,) + inst.w
    te = (0,) + inst.te
    wsum = [0] * (n + 1)
    for i in range(1, n + 1):
        wsum[i] = wsum[i - 1] + w[i]
    wright = [0] * (n + 2)
    for i in range(n, 0, -1):
        wright[i] = wright[i + 1] + w[i] * (te[n] - te[i])
    wleft = [0] * (n + 1)
    for i in range(1, n + 1):
        wleft[i] = wleft[i - 1] + w[i] * (te[i] - te[1])
    return PrefixTables(tuple(wsum), tuple(wright), tuple(wleft), te)


def group_cost_at_right(t: PrefixTables, j_prime: int, j: int) -> Cost:
    """Cost of employees j'+1..j all working at te_j (the group's right end)."""
    if not 0 <= j_prime <= j <= t.n:
        raise IndexError(f"bad range: j'={j_prime}, j={j}, n={t.n}")
    if j_prime == j:
        return 0
    return (t.wright[j_prime + 1] - t.wright[j + 1]) - (
        t.wsum[j] - t.wsum[j_prime]
    ) * (t.te[t.n] - t.te[j])


def group_cost_at_left(t: PrefixTables, j_prime: int, j: int) -> Cost:
    """Cost of employees j'+1..j all working at te_j' (left of the group)."""
    if not 1 <= j_prime <= j <= t.n:
        raise IndexError(f"bad range: j'={j_prime}, j={j}, n={t.n}")
    if j_prime == j:
        return 0
    return (t.wleft[j] - t.wleft[j_prime]) - (
        t.wsum[j] - t.wsum[j_prime]
    ) * (t.te[j_prime] - t.te[1])
