"""Offline two-sided and three-sided range counting over nonnegative
arrays with a small total sum, plus the padded-integer string encoding.

The batch engine follows the level-array pipeline: per-level position
arrays P_k (entries with value >= k*y), marker bitvectors C', and packed
level bitvectors B'_k assembled via bounded successor scans and bitvector
repetition.  The level granularity is fixed at y = 64 (one machine word).
"""

from __future__ import annotations

import numpy as np

from .bitvec import Bitvector
from .errors import ParameterError

Y = 64


def encode_padded(x, m: int, sigma: int) -> int:
    """Base-sigma value of X . 0^(2m-2|X|) . c^|X| with c = sigma-1.

    Strictly monotone for the lexicographic order that places a proper
    prefix before its extensions.
    """
    xs = list(x)
    t = len(xs)
    if t > m:
        raise ParameterError(f"string of length {t} exceeds m={m}")
    val = 0
    for s in xs:
        if not 0 <= s < sigma:
            raise ParameterError("symbol out of range")
        val = val * sigma + int(s)
    return val * sigma ** (2 * m - t) + (sigma**t - 1)


class OfflineCountEngine:
    """Level decomposition of one array, reusable for many sorted batches."""

    def __init__(self, values, u: int | None = None):
        self.values = np.ascontiguousarray(values, dtype=np.int64)
        if self.values.size and self.values.min() < 0:
            raise ParameterError("values must be nonnegative")
        self.m = len(self.values)
        self.u = int(u) if u is not None else max(1, self.m)
        self.levels: list[np.ndarray] = []  # P_k position arrays (1-based)
        self.level_bv: list[Bitvector] = []  # B'_k packs
        self._build()

    def _build(self) -> None:
        a = self.values
        if self.m == 0:
            return
        kmax = int(a.max()) // Y
        p = np.arange(1, self.m + 1, dtype=np.int64)
        for k in range(0, kmax + 1):
            if k > 0:
                p = p[a[p - 1] >= k * Y]
            if p.size == 0:
                break
            self.levels.append(p)
            self.level_bv.append(self._assemble_level(k, p))

    def _assemble_level(self, k: int, p: np.ndarray) -> Bitvector:
        """B'_k = B_{ky} B_{ky+1} ... B_{ky+Y-1} via successor+repeat."""
        mk = p.size
        vals = self.values[p - 1]
        # marker pack C' : C_t flags entries with value exactly ky+t-1
        delta = vals - k * Y
        inside = delta + 1 < Y
        cbits = np.zeros((Y - 1) * mk, dtype=np.uint8)
        idx = delta[inside] * mk + np.nonzero(inside)[0]
        cbits[idx.astype(np.int64)] = 1
        cprime = Bitvector.from_bits(cbits)
        # sweep delta classes, duplicating unchanged B_cur by repetition
        cur = Bitvector.from_bits(np.ones(mk, dtype=np.uint8))
        cur_words = cur.words.copy()
        out = None
        d = 0
        while d < Y:
            e = cprime.succ_one(d * mk, (Y - 1) * mk)
            d_next = (e + mk - 1) // mk if e <= (Y - 1) * mk else Y
            d_next = max(d_next, d + 1)
            piece = Bitvector(mk, cur_words.copy()).repeat(d_next - d)
            out = piece if out is None else out.concat(piece)
            if d_next >= Y:
                break
            # clear the bits whose values equal ky + d_next - 1
            lo = (d_next - 1) * mk
            t = e
            while t <= d_next * mk:
                j = t - lo  # 1-based entry index within the level
                cur_words[(j - 1) >> 6] &= ~np.uint64(1 << ((j - 1) & 63))
                t = cprime.succ_one(t, d_next * mk)
                if t > d_next * mk:
                    break
            d = d_next
        return out

    def count_sorted(self, q_pos: np.ndarray, q_val: np.ndarray) -> np.ndarray:
        """Batch counts for position-sorted queries."""
        q_pos = np.asarray(q_pos, dtype=np.int64)
        q_val = np.asarray(q_val, dtype=np.int64)
        if q_pos.size and (q_pos.min() < 0 or q_pos.max() > self.m):
            raise ParameterError("query position out of [0..m]")
        out = np.zeros(q_pos.size, dtype=np.int64)
        if self.m == 0 or q_pos.size == 0:
            return out
        kq = q_val // Y
        nonneg = q_val >= 0
        for k in range(len(self.levels)):
            sel = np.nonzero((kq == k) & nonneg)[0]
            if sel.size == 0:
                continue
            p = self.levels[k]
            bv = self.level_bv[k]
            mk = p.size
            c = np.searchsorted(p, q_pos[sel], side="right")
            delta = (q_val[sel] - k * Y).astype(np.int64)
            hi = bv.rank1_many(delta * mk + c)
            lo = bv.rank1_many(delta * mk)
            out[sel] = hi - lo
        # queries with v < 0 count the whole prefix
        neg = np.nonzero(~nonneg)[0]
        if neg.size:
            out[neg] = q_pos[neg]
        # queries above the top level stay 0
        return out


def count_two_sided(values, queries, u: int | None = None) -> np.ndarray:
    """counts[i] = |{j in (0..pos_i] : A[j] >= val_i}| for (pos, val) pairs.

    Unsorted batches are permuted by position (stable) and the answers
    inverted back.
    """
    qp = np.asarray([q[0] for q in queries], dtype=np.int64)
    qv = np.asarray([q[1] for q in queries], dtype=np.int64)
    engine = OfflineCountEngine(values, u=u)
    perm = np.argsort(qp, kind="stable")
    ans_sorted = engine.count_sorted(qp[perm], qv[perm])
    out = np.empty_like(ans_sorted)
    out[perm] = ans_sorted
    return out


def count_three_sided(values, queries, u: int | None = None) -> np.ndarray:
    """counts[i] = |{j in (beg_i..end_i] : A[j] >= val_i}| (0 when beg>=end)."""
    qb = np.asarray([q[0] for q in queries], dtype=np.int64)
    qe = np.asarray([q[1] for q in queries], dtype=np.int64)
    qv = np.asarray([q[2] for q in queries], dtype=np.int64)
    hi = count_two_sided(values, list(zip(qe, qv)), u=u)
    lo = count_two_sided(values, list(zip(qb, qv)), u=u)
    out = hi - lo
    out[qb >= qe] = 0
    return out
