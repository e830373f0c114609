"""Small-universe dynamic predecessor/successor set and the monotone
"narrow range max" staircase built on it.

Keys live in [0, h).  The key set is one python integer used as a bitmask,
so h may exceed the machine word without a separate code path; predecessor
and successor are constant-time bit arithmetic at the intended h = O(word).
"""

from __future__ import annotations

from .errors import ContractError, ParameterError


class SmallPredSet:
    """Set of (key, value) pairs with O(1) insert/delete/pred/succ.

    Boundary sentinels: predecessor misses return (-1, 0), successor
    misses return (h, 0).
    """

    def __init__(self, h: int):
        if h < 1:
            raise ParameterError("universe size must be positive")
        self.h = int(h)
        self._mask = 0
        self._vals = [0] * self.h

    def _check_key(self, key: int) -> None:
        if not 0 <= key < self.h:
            raise ParameterError(f"key {key} out of [0..{self.h})")

    def __contains__(self, key: int) -> bool:
        return bool((self._mask >> key) & 1)

    def insert(self, key: int, value: int) -> None:
        self._check_key(key)
        if (self._mask >> key) & 1:
            raise ContractError(f"key {key} already present")
        self._mask |= 1 << key
        self._vals[key] = value

    def delete(self, key: int) -> None:
        self._check_key(key)
        if not (self._mask >> key) & 1:
            raise ContractError(f"key {key} not present")
        self._mask &= ~(1 << key)

    def predecessor(self, q: int):
        """Largest (key, value) with key <= q, else (-1, 0)."""
        self._check_key(q)
        below = self._mask & ((1 << (q + 1)) - 1)
        if below == 0:
            return (-1, 0)
        k = below.bit_length() - 1
        return (k, self._vals[k])

    def successor(self, q: int):
        """Smallest (key, value) with key >= q, else (h, 0)."""
        self._check_key(q)
        above = self._mask >> q
        if above == 0:
            return (self.h, 0)
        k = q + ((above & -above).bit_length() - 1)
        return (k, self._vals[k])


class NarrowRangeMax:
    """Answers max{y : (x, y) inserted so far, x >= q} (with sentinel 0).

    Internally keeps only the non-redundant Pareto staircase: insertions
    prune every stored pair dominated by the new one, so a query is a
    single successor lookup.  Total pruning work is bounded by the number
    of insertions (instrumented via ``inserted``/``pruned``).
    """

    def __init__(self, h: int):
        self._set = SmallPredSet(h)
        self.h = self._set.h
        self.inserted = 0
        self.pruned = 0

    def insert(self, x: int, y: int) -> None:
        if y <= 0:
            raise ParameterError("values must be positive")
        self.inserted += 1
        s = self._set
        kx, ky = s.successor(x)
        if y <= ky:
            return  # dominated: would be redundant
        while True:
            px, py = s.predecessor(x)
            if px < 0 or py > y:
                break
            s.delete(px)
            self.pruned += 1
        s.insert(x, y)

    def query(self, q: int) -> int:
        _, y = self._set.successor(q)
        return y
