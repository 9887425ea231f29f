"""Lazy segment tree parameterized by a query combiner and an update applier.

Values are opaque to the tree; the caller supplies
  - combine(a, b):      associative fold of two subtree summaries,
  - apply_delta(v, d):  effect of one pending delta on a summary, which must
                        be consistent with applying it to every leaf below,
  - compose(d1, d2):    merge of an older pending delta with a newer one
                        (defaults to addition).

Three configurations are used by the fast greedy solver and are the ones the
test suite pins down: (value, position) pairs under `min_poz` or `max_poz`
with additive deltas, and plain ints under `min` with additive deltas.

Positions are 1-based and all ranges are inclusive.  NEG_INF is an
order-level sentinel: `add_value_pos` leaves it fixed, so a position written
to (NEG_INF, i) is permanently ignored by max queries.
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

V = TypeVar("V")
U = TypeVar("U")

NEG_INF = float("-inf")

# (value, position) pair; value may be NEG_INF.
ValuePos = tuple

def plus_poz(x: ValuePos, y: ValuePos) -> ValuePos:
    return (x[0] + y[0], x[1] if x[1] > y[1] else y[1])


def min_poz(x: ValuePos, y: ValuePos) -> ValuePos:
    return x if x[0] < y[0] else y


def max_poz(x: ValuePos, y: ValuePos) -> ValuePos:
    return x if x[0] > y[0] else y


def add_value(v, d):
    return v + d


def add_value_pos(x: ValuePos, d) -> ValuePos:
    if x[0] == NEG_INF:
        return x
    return (x[0] + d, x[1])


def _add(d1, d2):
    return d1 + d2


class SegTree:
    """Range update / range query tree over n >= 1 values.

    `visits_last_op` counts nodes entered by the most recent operation
    (build included in `visits_total` only); a single query or update enters
    at most 4*ceil(log2 n) + 4 nodes.
    """

    def __init__(
        self,
        values: Sequence[V],
        combine: Callable[[V, V], V],
        apply_delta: Callable[[V, U], V],
        compose: Callable[[U, U], U] = _add,
    ) -> None:
        n = len(values)
        if n == 0:
            raise ValueError("cannot build a segment tree over no values")
        self.n = n
        self.combine = combine
        self.apply_delta = apply_delta
        self.compose = compose
        self.visits_total = 0
        self.visits_last_op = 0
        self._val: list = [None] * (4 * n)
        self._lazy: list = [None] * (4 * n)
        self._build(1, 1, n, values)

    # -- internals ---------------------------------------------------------

    def _build(self, x: int, lo: int, hi: int, values: Sequence[V]) -> None:
        self.visits_total += 1
        if lo == hi:
            self._val[x] = values[lo - 1]
            return
        mid = (lo + hi) // 2
        self._build(2 * x, lo, mid, values)
        self._build(2 * x + 1, mid + 1, hi, values)
        self._val[x] = self.combine(self._val[2 * x], self._val[2 * x + 1])

    def _apply(self, x: int, delta: U) -> None:
        self._val[x] = self.apply_delta(self._val[x], delta)
        if self._lazy[x] is None:
            self._lazy[x] = delta
        else:
            self._lazy[x] = self.compose(self._lazy[x], delta)

    def _push(self, x: int) -> None:
        d = self._lazy[x]
        if d is not None:
            self._apply(2 * x, d)
            self._apply(2 * x + 1, d)
            self._lazy[x] = None

    def _update(self, x: int, lo: int, hi: int, l: int, r: int, d: U) -> None:
        self.visits_last_op += 1
        if l <= lo and hi <= r:
            self._apply(x, d)
            return
        self._push(x)
        mid = (lo + hi) // 2
        if l <= mid:
            self._update(2 * x, lo, mid, l, r, d)
        if r > mid:
            self._update(2 * x + 1, mid + 1, hi, l, r, d)
        self._val[x] = self.combine(self._val[2 * x], self._val[2 * x + 1])

    def _query(self, x: int, lo: int, hi: int, l: int, r: int):
        self.visits_last_op += 1
        if l <= lo and hi <= r:
            return self._val[x]
        self._push(x)
        mid = (lo + hi) // 2
        if r <= mid:
            return self._query(2 * x, lo, mid, l, r)
        if l > mid:
            return self._query(2 * x + 1, mid + 1, hi, l, r)
        left = self._query(2 * x, lo, mid, l, r)
        right = self._query(2 * x + 1, mid + 1, hi, l, r)
        return self.combine(left, right)

    def _point_set(self, x: int, lo: int, hi: int, i: int, value: V) -> None:
        self.visits_last_op += 1
        if lo == hi:
            self._val[x] = value
            self._lazy[x] = None
            return
        self._push(x)
        mid = (lo + hi) // 2
        if i <= mid:
            self._point_set(2 * x, lo, mid, i, value)
        else:
            self._point_set(2 * x + 1, mid + 1, hi, i, value)
        self._val[x] = self.combine(self._val[2 * x], self._val[2 * x + 1])

    def _check_range(self, l: int, r: int) -> None:
        if not 1 <= l <= r <= self.n:
            raise IndexError(f"bad range [{l}, {r}] for n={self.n}")

    # -- public ops --------------------------------------------------------

    def range_update(self, l: int, r: int, delta: U) -> None:
        """Apply `delta` to every position in [l, r]."""
        self._check_range(l, r)
        self.visits_last_op = 0
        self._update(1, 1, self.n, l, r, delta)
        self.visits_total += self.visits_last_op

    def range_query(self, l: int, r: int) -> V:
        """Left-to-right fold of the values in [l, r] under the combiner."""
        self._check_range(l, r)
        self.visits_last_op = 0
        result = self._query(1, 1, self.n, l, r)
        self.visits_total += self.visits_last_op
        return result

    def point_set(self, i: int, value: V) -> None:
        """Overwrite position i, discarding any pending delta on that leaf."""
        self._check_range(i, i)
        self.visits_last_op = 0
        self._point_set(1, 1, self.n, i, value)
        self.visits_total += self.visits_last_op
