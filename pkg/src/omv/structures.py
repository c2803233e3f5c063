"""Indexed multiset and range-minimum structures for candidate listing.

IndexedMultiset keeps (key, payload) pairs over a bounded integer key
domain, supporting insert/remove, minimum key, count of keys <= x, and
enumeration of payloads with key <= x.  It is a Fenwick tree of key counts
plus per-key payload buckets: every operation costs O(log K) with K the
key-domain size, and enumeration additionally pays O(log K) per distinct
key visited plus the output size.  The key domains in this package are the
rounded min-plus sums, bounded by 2 * floor(c*n / delta), so the structure
is small and flat.

RangeMinIndex is a sparse table: O(n log n) build, O(1) range-minimum
queries returning the leftmost minimizing position.
"""

from __future__ import annotations


class IndexedMultiset:
    """Multiset of (key, payload) pairs with order statistics on keys.

    Keys are ints in [0, max_key]; payloads must be unique within a key
    (the callers use column indices, which are).
    """

    def __init__(self, max_key: int):
        if max_key < 0:
            raise ValueError("max_key must be >= 0")
        self._size = max_key + 1
        self._tree = [0] * (self._size + 1)
        self._buckets: list[set] = [set() for _ in range(self._size)]
        self._total = 0

    def __len__(self) -> int:
        return self._total

    def insert(self, key: int, payload) -> None:
        self._buckets[key].add(payload)
        i = key + 1
        while i <= self._size:
            self._tree[i] += 1
            i += i & (-i)
        self._total += 1

    def remove(self, key: int, payload) -> None:
        self._buckets[key].remove(payload)
        i = key + 1
        while i <= self._size:
            self._tree[i] -= 1
            i += i & (-i)
        self._total -= 1

    def count_le(self, key: int) -> int:
        """Number of stored pairs with key <= the given key."""
        if key < 0:
            return 0
        i = min(key, self._size - 1) + 1
        total = 0
        while i > 0:
            total += self._tree[i]
            i -= i & (-i)
        return total

    def _select(self, rank: int) -> int:
        # Smallest key whose prefix count exceeds ``rank`` (0-based).
        pos = 0
        remaining = rank + 1
        half = 1 << (self._size.bit_length())
        while half > 0:
            nxt = pos + half
            if nxt <= self._size and self._tree[nxt] < remaining:
                remaining -= self._tree[nxt]
                pos = nxt
            half >>= 1
        return pos  # 0-based key

    def min(self) -> int | None:
        """Smallest stored key, or None when empty."""
        if self._total == 0:
            return None
        return self._select(0)

    def enumerate_le(self, key: int, cap: int) -> list | None:
        """Payloads with key <= the given key, or None if more than cap.

        Visits only the distinct keys actually present, so the cost is
        O(log K) per such key plus the number of payloads returned; at most
        cap + 1 payloads are ever touched.
        """
        out: list = []
        limit = self.count_le(key)
        rank = 0
        while rank < limit:
            k = self._select(rank)
            bucket = self._buckets[k]
            if len(out) + len(bucket) > cap:
                return None
            out.extend(bucket)
            rank += len(bucket)
        return out


class RangeMinIndex:
    """Sparse table answering range-minimum queries in O(1) after building.

    Queries are over half-open ranges [lo, hi) and return (value, position)
    with the leftmost minimizing position on ties.
    """

    def __init__(self, values: list):
        n = len(values)
        if n == 0:
            raise ValueError("cannot index an empty array")
        # table[d][i] = (value, pos) minimizing over [i, i + 2^d)
        table = [[(v, i) for i, v in enumerate(values)]]
        for d in range(1, n.bit_length()):
            span = 1 << d
            prev = table[d - 1]
            row = []
            for i in range(n - span + 1):
                left = prev[i]
                right = prev[i + (span >> 1)]
                row.append(left if left[0] <= right[0] else right)
            table.append(row)
        self._table = table
        self._n = n

    def range_min(self, lo: int, hi: int) -> tuple:
        """(value, position) of the minimum over [lo, hi)."""
        if not (0 <= lo < hi <= self._n):
            raise ValueError(f"bad range [{lo}, {hi}) for length {self._n}")
        d = (hi - lo).bit_length() - 1
        left = self._table[d][lo]
        right = self._table[d][hi - (1 << d)]
        # On value ties the left block's position is never to the right of
        # the right block's, so <= keeps the leftmost minimizer.
        return left if left[0] <= right[0] else right
