"""Random-access LPF and LPnF built on the leftmost-occurrence index.

Block sampling: the array value at every b-th position is precomputed;
blocks whose sampled values jump by at least b' - b are marked and stored
verbatim.  A query inside an unmarked block bounds the answer by the
neighboring samples (the per-step drop of these arrays is at most one)
and finishes with a galloping + binary search over window feasibility,
which is downward-closed in the length.
"""

from __future__ import annotations

import math

import numpy as np

from .bitvec import Bitvector
from .errors import ParameterError
from .minocc.index import MinOccIndex

VARIANTS = ("overlap", "nonoverlap")


class LpfIndex:
    def __init__(self, minocc: MinOccIndex, variant: str = "overlap"):
        if variant not in VARIANTS:
            raise ParameterError(f"variant must be one of {VARIANTS}")
        self.minocc = minocc
        self.variant = variant
        self.n = minocc.text.n
        self._last_occ = None
        n = self.n
        log2n = max(1.0, math.log2(max(n, 2)))
        self.b = max(4, min(int(math.ceil(log2n**3)), n))
        self.bprime = max(4 * self.b, int(math.ceil(log2n**6)))
        self.m = n // self.b
        self.a = np.zeros(self.m + 1, dtype=np.int64)
        for i in range(1, self.m + 1):
            self.a[i] = self._search(i * self.b, 0, n - i * self.b + 1)
        marked = np.zeros(self.m + 1, dtype=np.uint8)
        for i in range(1, self.m + 1):
            if self.a[i] - self.a[i - 1] >= self.bprime - self.b:
                marked[i] = 1
        self.marked = Bitvector.from_bits(marked[1:]) if self.m else None
        self.heavy: list[np.ndarray] = []
        for i in range(1, self.m + 1):
            if marked[i]:
                vals = np.zeros(self.b, dtype=np.int64)
                for d in range(1, self.b + 1):
                    j = (i - 1) * self.b + d
                    vals[d - 1] = self._search(j, 0, n - j + 1)
                self.heavy.append(vals)

    # -- feasibility ------------------------------------------------------------

    def _feasible(self, j: int, length: int) -> bool:
        if length == 0:
            self._last_occ = None
            return True
        if length > self.n - j + 1:
            return False
        occ = self.minocc.window(j, length)
        ok = occ < j if self.variant == "overlap" else occ + length <= j
        if ok:
            self._last_occ = (j, length, occ)
        return ok

    def _search(self, j: int, lo: int, hi: int) -> int:
        """Largest feasible length in [lo..hi] (lo is known feasible)."""
        if hi > self.n - j + 1:
            hi = self.n - j + 1
        # gallop from lo, then binary search
        step = 1
        low = lo
        while low + step <= hi and self._feasible(j, low + step):
            low += step
            step *= 2
        high = min(hi, low + step)
        while low < high:
            mid = (low + high + 1) // 2
            if self._feasible(j, mid):
                low = mid
            else:
                high = mid - 1
        return low

    # -- queries ------------------------------------------------------------------

    def length_at(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise ParameterError(f"position {j} out of [1..{self.n}]")
        if j == 1:
            return 0
        i = (j + self.b - 1) // self.b
        if i <= self.m:
            if self.marked.get(i):
                r = self.marked.rank1(i)
                d = j - (i - 1) * self.b
                return int(self.heavy[r - 1][d - 1])
            lmin = max(0, int(self.a[i - 1]) - self.b)
            lmax = min(self.n - j + 1, lmin + self.bprime + self.b)
        else:
            lmin = max(0, int(self.a[self.m]) - self.b) if self.m else 0
            lmax = self.n - j + 1
        return self._search(j, lmin, lmax)

    def at(self, j: int):
        """(length, source): the longest previous-factor length and its
        leftmost occurrence; a zero length reports the letter itself."""
        self._last_occ = None
        ln = self.length_at(j)
        if ln == 0:
            return 0, self.minocc.text.symbol(j)
        cached = self._last_occ
        if cached is not None and cached[0] == j and cached[1] == ln:
            return ln, cached[2]
        return ln, self.minocc.window(j, ln)

    def marked_block_count(self) -> int:
        return len(self.heavy)


def build_lpf(minocc: MinOccIndex, variant: str = "overlap") -> LpfIndex:
    return LpfIndex(minocc, variant)


def lpf_at(index: LpfIndex, j: int):
    return index.at(j)
