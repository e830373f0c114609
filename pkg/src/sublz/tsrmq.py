"""Static three-sided RMQ: leftmost argmin of A[i] over i in (b..e] subject
to B[i] >= v, under a bounded-sum promise on B.

Levels hold the positions with B >= k*y; inside a level, micro-blocks of x
elements answer short subranges and per-threshold superblock minima (with a
plain RMQ on top) answer the aligned middle.  Micro-queries go through a
base-y encoded lookup keyed per the classic construction when the table
budget allows, and fall back to an x-element scan otherwise (at the pinned
parameters the scan path is always taken).
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import ParameterError
from .rmq import RmqIndex

_TABLE_BUDGET = 1 << 20


def enc_micro(values, y: int, x: int) -> int:
    """Base-y integer of a digit sequence padded with zeros to 3x digits."""
    out = 0
    for v in values:
        out = out * y + int(v)
    return out * y ** (3 * x - len(values))


class ThreeSidedRmqIndex:
    def __init__(self, a, b, m_param: int | None = None,
                 table_budget: int = _TABLE_BUDGET, force_xy=None):
        self.a = np.ascontiguousarray(a, dtype=np.int64)
        self.b = np.ascontiguousarray(b, dtype=np.int64)
        if len(self.a) != len(self.b):
            raise ParameterError("A and B must have equal length")
        self.m = len(self.a)
        scale = max(int(m_param) if m_param is not None else self.m, self.m)
        if self.m:
            logm = max(1.0, math.log2(max(scale, 2)))
            if self.a.max() > 64 * scale * logm or self.b.sum() > 64 * scale * logm:
                warnings.warn("three-sided RMQ built outside its bounded-sum promise")
        if self.m and (self.a.min() < 0 or self.b.min() < 0):
            raise ParameterError("A and B must be nonnegative")
        if force_xy is not None:
            self.x, self.y = int(force_xy[0]), int(force_xy[1])
            self.flat = not (4 <= self.x < self.y)
        else:
            y = max(4, int(math.log2(scale))) if scale >= 2 else 4
            x = max(4, int(y / math.log2(y))) if y > 1 else 4
            self.x, self.y = x, y
            self.flat = not (4 <= x < y)
        self._use_table = not self.flat and self.y ** (3 * self.x) <= table_budget
        self._lrmq: dict[int, int] = {}
        self.level_sizes: list[int] = []
        if self.flat or self.m == 0:
            return
        self._build_levels()

    # -- construction ----------------------------------------------------------

    def _build_levels(self) -> None:
        y = self.y
        kmax = int(self.b.max()) // y if self.m else -1
        self.levels = []  # P_k, 1-based positions
        self.lvl_a = []
        self.lvl_b = []
        self.sup_val = []  # per level: list over delta of value arrays
        self.sup_pos = []
        self.sup_rmq = []
        p = np.arange(1, self.m + 1, dtype=np.int64)
        for k in range(kmax + 1):
            if k > 0:
                p = p[self.b[p - 1] >= k * y]
            if p.size == 0:
                break
            ak = self.a[p - 1]
            bk = self.b[p - 1]
            self.levels.append(p)
            self.lvl_a.append(ak)
            self.lvl_b.append(bk)
            self.level_sizes.append(p.size)
            nsb = p.size // y
            if nsb == 0:
                self.sup_val.append(None)
                self.sup_pos.append(None)
                self.sup_rmq.append(None)
                continue
            a2 = ak[: nsb * y].reshape(nsb, y)
            b2 = bk[: nsb * y].reshape(nsb, y)
            a_inf = int(self.a.max()) + 1
            vals, poss, rmqs = [], [], []
            for delta in range(y):
                mask = b2 >= k * y + delta
                masked = np.where(mask, a2, a_inf)
                mval = masked.min(axis=1)
                mpos = masked.argmin(axis=1) + np.arange(nsb) * y
                vals.append(mval)
                poss.append(mpos)
                rmqs.append(RmqIndex(mval))
            self.sup_val.append(vals)
            self.sup_pos.append(poss)
            self.sup_rmq.append(rmqs)
            self._a_inf = a_inf

    # -- queries ---------------------------------------------------------------

    def _micro(self, k: int, lo: int, hi: int, thr: int):
        """Leftmost qualifying argmin over level-k slots [lo..hi), scanning
        or via the encoded micro table; None when empty."""
        if hi <= lo:
            return None
        if self._use_table:
            return self._micro_table(k, lo, hi, thr)
        bseg = self.lvl_b[k][lo:hi]
        ok = bseg >= thr
        if not ok.any():
            return None
        aseg = np.where(ok, self.lvl_a[k][lo:hi], np.iinfo(np.int64).max)
        return lo + int(np.argmin(aseg))

    def _micro_table(self, k: int, lo: int, hi: int, thr: int):
        x, y = self.x, self.y
        blk = lo // x
        out = None
        start = lo
        while start < hi:
            blk = start // x
            bend = min((blk + 1) * x, hi, len(self.lvl_a[k]))
            cand = self._micro_block_lookup(k, blk, start, bend, thr)
            if cand is not None and (
                out is None or self.lvl_a[k][cand] < self.lvl_a[k][out]
            ):
                out = cand
            start = bend
        return out

    def _micro_block_lookup(self, k: int, blk: int, lo: int, hi: int, thr: int):
        x, y = self.x, self.y
        base = blk * x
        stop = min((blk + 1) * x, len(self.lvl_a[k]))
        aseg = self.lvl_a[k][base:stop]
        bseg = self.lvl_b[k][base:stop]
        # rank space mirrors the encoded construction
        order = np.argsort(aseg, kind="stable")
        ranks = np.empty(len(aseg), dtype=np.int64)
        ranks[order] = np.arange(len(aseg))
        bcl = np.minimum(y - 1, bseg - k * y)
        delta = min(y - 1, max(0, thr - k * y))
        seq = [lo - base, hi - base, delta, len(aseg), *ranks, *bcl]
        key = enc_micro(seq, y, self.x)
        if key not in self._lrmq:
            best = 0
            for i in range(lo - base, hi - base):
                if bcl[i] >= delta and (
                    best == 0 or ranks[i] < ranks[best - 1]
                ):
                    best = i + 1
            self._lrmq[key] = best
        v = self._lrmq[key]
        return None if v == 0 else base + v - 1

    def _level_query(self, k: int, lo: int, hi: int, thr: int):
        """Leftmost qualifying argmin over level-k slots [lo..hi)."""
        y = self.y
        if hi - lo < y or self.sup_rmq[k] is None:
            return self._micro(k, lo, hi, thr)
        i = (lo + y - 1) // y
        j = hi // y
        cands = []
        left = self._micro(k, lo, min(i * y, hi), thr)
        if left is not None:
            cands.append(left)
        if i < j:
            delta = thr - k * y
            if delta < 0:
                delta = 0
            if delta < y:
                r = self.sup_rmq[k][delta].query(i, j)
                mv = self.sup_val[k][delta][r - 1]
                if mv != self._a_inf:
                    cands.append(int(self.sup_pos[k][delta][r - 1]))
            else:  # threshold beyond this level's superblock granularity
                mid = self._micro(k, i * y, j * y, thr)
                if mid is not None:
                    cands.append(mid)
        right = self._micro(k, max(j * y, lo), hi, thr)
        if right is not None:
            cands.append(right)
        if not cands:
            return None
        best = cands[0]
        for c in cands[1:]:
            if self.lvl_a[k][c] < self.lvl_a[k][best] or (
                self.lvl_a[k][c] == self.lvl_a[k][best] and c < best
            ):
                best = c
        return best

    def query(self, b: int, e: int, v: int):
        """Leftmost argmin of A over (b..e] with B >= v; None if no such i."""
        if not 0 <= b <= e <= self.m:
            raise ParameterError(f"range ({b}..{e}] out of [0..{self.m}]")
        if b >= e or self.m == 0:
            return None
        v = max(0, int(v))
        if self.flat:
            ok = self.b[b:e] >= v
            if not ok.any():
                return None
            masked = np.where(ok, self.a[b:e], np.iinfo(np.int64).max)
            return b + int(np.argmin(masked)) + 1
        y = self.y
        k = v // y
        if k >= len(self.levels):
            return None
        p = self.levels[k]
        lo = int(np.searchsorted(p, b, side="right"))
        hi = int(np.searchsorted(p, e, side="right"))
        ans = self._level_query(k, lo, hi, v)
        return None if ans is None else int(p[ans])


def build_tsrmq(a, b, **kw) -> ThreeSidedRmqIndex:
    return ThreeSidedRmqIndex(a, b, **kw)


def tsrmq_query(index: ThreeSidedRmqIndex, b: int, e: int, v: int):
    return index.query(b, e, v)
