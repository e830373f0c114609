"""Range-minimum structures: a classic block/sparse-table index over
integer arrays, and a systematic packed-array variant whose query compares
at most three elements of the underlying array.

Query semantics follow the half-open-below convention: ``query(b, e)``
returns the leftmost 1-based argmin over positions in (b..e].
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError, QueryError

_TABLE_BUDGET = 1 << 20  # entries; beyond this, in-block tables stay lazy


class RmqIndex:
    """argmin over (b..e] with leftmost tie-breaking, O(1)-ish queries.

    Blocks of 32 values carry their minimum and leftmost argmin; a sparse
    table over block minima (indices, ties to the left) answers the
    aligned middle part, partial blocks are scanned directly.
    """

    BLOCK = 32

    def __init__(self, values):
        self.values = np.ascontiguousarray(values, dtype=np.int64)
        self.m = len(self.values)
        w = self.BLOCK
        nb = (self.m + w - 1) // w
        self._nb = nb
        if nb == 0:
            return
        pad = nb * w - self.m
        v = self.values
        if pad:
            v = np.concatenate([v, np.full(pad, np.iinfo(np.int64).max)])
        grid = v.reshape(nb, w)
        self._bmin = grid.min(axis=1)
        self._barg = grid.argmin(axis=1) + np.arange(nb) * w
        # sparse table of argmin indices over block minima
        levels = max(1, nb.bit_length())
        sp = [np.arange(nb, dtype=np.int64)]
        span = 1
        while 2 * span <= nb:
            prev = sp[-1]
            left = prev[: nb - 2 * span + 1]
            right = prev[span : nb - span + 1]
            take_left = self._bmin[left] <= self._bmin[right]
            sp.append(np.where(take_left, left, right))
            span *= 2
        self._sparse = sp

    def _range_scan(self, lo: int, hi: int) -> int:
        """Leftmost argmin over 0-based [lo..hi)."""
        seg = self.values[lo:hi]
        return lo + int(np.argmin(seg))

    def _block_range(self, b0: int, b1: int) -> int:
        """Leftmost argmin over whole blocks [b0..b1] (inclusive)."""
        k = (b1 - b0 + 1).bit_length() - 1
        left = self._sparse[k][b0]
        right = self._sparse[k][b1 - (1 << k) + 1]
        li, ri = self._barg[left], self._barg[right]
        if self._bmin[right] < self._bmin[left]:
            return int(ri)
        if self._bmin[left] < self._bmin[right]:
            return int(li)
        return int(min(li, ri))

    def query(self, b: int, e: int) -> int:
        """Leftmost argmin position in (b..e], 1-based."""
        if not 0 <= b <= e <= self.m:
            raise ParameterError(f"range ({b}..{e}] out of [0..{self.m}]")
        if b >= e:
            raise QueryError("empty range")
        lo, hi = b, e  # 0-based [lo..hi)
        w = self.BLOCK
        fb = (lo + w - 1) // w  # first full block
        lb = hi // w - 1  # last full block
        if fb > lb:
            return self._range_scan(lo, hi) + 1
        best = None
        if lo < fb * w:
            best = self._range_scan(lo, fb * w)
        mid = self._block_range(fb, lb)
        if best is None or self.values[mid] < self.values[best]:
            best = mid
        if (lb + 1) * w < hi:
            right = self._range_scan((lb + 1) * w, hi)
            if self.values[right] < self.values[best]:
                best = right
        return best + 1


def build_rmq(values) -> RmqIndex:
    return RmqIndex(values)


def rmq_query(index: RmqIndex, b: int, e: int) -> int:
    return index.query(b, e)


class PackedRmqIndex:
    """Systematic RMQ over a small-alphabet array.

    The array is cut into blocks of ``tau_blk`` symbols; every block gets a
    content-keyed subrange-argmin record (shared across equal blocks), and a
    plain RMQ runs over the block-minimum array.  A query touches at most
    three elements of the source array (instrumented via ``reads``).
    """

    def __init__(self, values, sigma: int, tau_blk: int | None = None):
        self.values = np.ascontiguousarray(values, dtype=np.int64)
        self.m = len(self.values)
        self.sigma = int(sigma)
        if self.m and (self.values.min() < 0 or self.values.max() >= sigma):
            raise ParameterError("values out of [0, sigma)")
        self.reads = 0
        if self.m == 0:
            self.tau_blk = 1
            return
        if tau_blk is None:
            bits = max(1, int(sigma - 1).bit_length())
            tau_blk = max(1, int(np.log2(max(self.m, 2))) // (2 * bits))
            while sigma**tau_blk > _TABLE_BUDGET and tau_blk > 1:
                tau_blk -= 1
        self.tau_blk = int(tau_blk)
        w = self.tau_blk
        nb = (self.m + w - 1) // w
        pad = nb * w - self.m
        v = self.values
        if pad:
            v = np.concatenate([v, np.full(pad, sigma - 1)])
        grid = v.reshape(nb, w)
        # content key per block; equal blocks share one argmin record
        key = np.zeros(nb, dtype=np.int64)
        for c in range(w):
            key = key * sigma + grid[:, c]
        self._keys = key
        self._tables = {}
        for bid in np.unique(key, return_index=True)[1]:
            self._tables[int(key[bid])] = self._subrange_table(grid[bid])
        self._aprime = RmqIndex(grid.min(axis=1))
        self._nb = nb

    @staticmethod
    def _subrange_table(block: np.ndarray) -> np.ndarray:
        w = len(block)
        tab = np.zeros((w, w), dtype=np.int16)
        for lo in range(w):
            best = lo
            tab[lo, lo] = lo
            for hi in range(lo + 1, w):
                if block[hi] < block[best]:
                    best = hi
                tab[lo, hi] = best
        return tab

    def _read(self, idx: int) -> int:
        self.reads += 1
        return int(self.values[idx])

    def _in_block(self, blk: int, lo: int, hi: int) -> int:
        """Leftmost argmin over 0-based [lo..hi) inside block blk, without
        reading the source array."""
        w = self.tau_blk
        tab = self._tables[int(self._keys[blk])]
        return blk * w + int(tab[lo - blk * w, hi - 1 - blk * w])

    def query(self, b: int, e: int) -> int:
        if not 0 <= b <= e <= self.m:
            raise ParameterError(f"range ({b}..{e}] out of [0..{self.m}]")
        if b >= e:
            raise QueryError("empty range")
        lo, hi = b, e
        w = self.tau_blk
        blk_lo, blk_hi = lo // w, (hi - 1) // w
        if blk_lo == blk_hi:
            return self._in_block(blk_lo, lo, hi) + 1
        cands = [self._in_block(blk_lo, lo, (blk_lo + 1) * w)]
        if blk_lo + 1 <= blk_hi - 1:
            mid_blk = self._aprime.query(blk_lo + 1, blk_hi) - 1
            cands.append(self._in_block(mid_blk, mid_blk * w, (mid_blk + 1) * w))
        cands.append(self._in_block(blk_hi, blk_hi * w, hi))
        best = cands[0]
        best_v = self._read(best)
        for c in cands[1:]:
            v = self._read(c)
            if v < best_v or (v == best_v and c < best):
                best, best_v = c, v
        return best + 1


def build_packed_rmq(values, sigma: int, tau_blk: int | None = None) -> PackedRmqIndex:
    return PackedRmqIndex(values, sigma, tau_blk)
