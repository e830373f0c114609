"""Packed bitvector kernels: rank/select, bounded successor, repetition,
and subsequence delete/insert.

Bit positions are 1-based.  All bulk operations work on 64-bit words; the
universal lookup tables of the classic constructions are replaced by CPU
popcount / trailing-zero arithmetic (python ``int.bit_count``) and a
256-entry byte-popcount table for vectorized paths.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError, QueryError

_PC8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)

_SUPER = 512  # bits per absolute rank sample


def _extract_bits(words: np.ndarray, off: int, length: int) -> np.ndarray:
    """Bits [off, off+length) of the word stream, 0-aligned, top zero-padded.

    ``words`` must have at least one spare word past the payload.
    """
    if length <= 0:
        return np.zeros(0, dtype=np.uint64)
    nw = (length + 63) >> 6
    q, r = off >> 6, off & 63
    if r == 0:
        out = words[q : q + nw].copy()
    else:
        lo = words[q : q + nw] >> np.uint64(r)
        hi = words[q + 1 : q + 1 + nw] << np.uint64(64 - r)
        out = lo | hi
    rem = length & 63
    if rem:
        out[-1] &= np.uint64((1 << rem) - 1)
    return out


class _BitWriter:
    """Accumulates a bit stream by whole-chunk appends (vectorized shifts)."""

    def __init__(self, capacity_bits: int = 64):
        self.words = np.zeros(max(2, (capacity_bits >> 6) + 2), dtype=np.uint64)
        self.length = 0

    def _reserve(self, extra_bits: int) -> None:
        need = ((self.length + extra_bits) >> 6) + 2
        if need > len(self.words):
            grown = np.zeros(max(need, 2 * len(self.words)), dtype=np.uint64)
            grown[: len(self.words)] = self.words
            self.words = grown

    def append_words(self, src: np.ndarray, off: int, length: int) -> None:
        """Append bits [off, off+length) of a padded word array."""
        if length <= 0:
            return
        self._reserve(length)
        chunk = _extract_bits(src, off, length)
        t0, r = self.length >> 6, self.length & 63
        nw = len(chunk)
        if r == 0:
            self.words[t0 : t0 + nw] |= chunk
        else:
            rs, ls = np.uint64(r), np.uint64(64 - r)
            self.words[t0] |= chunk[0] << rs
            if nw > 1:
                self.words[t0 + 1 : t0 + nw] |= (chunk[1:] << rs) | (
                    chunk[:-1] >> ls
                )
            self.words[t0 + nw] |= chunk[-1] >> ls
        self.length += length

    def append_bit(self, bit: int) -> None:
        self._reserve(1)
        if bit:
            self.words[self.length >> 6] |= np.uint64(1) << np.uint64(
                self.length & 63
            )
        self.length += 1

    def done(self) -> "Bitvector":
        return Bitvector(self.length, self.words)


class Bitvector:
    """Immutable packed bitvector with sampled rank/select directories."""

    def __init__(self, m: int, words: np.ndarray):
        self.m = int(m)
        need = (self.m >> 6) + 2
        if len(words) < need:
            words = np.concatenate(
                [words, np.zeros(need - len(words), dtype=np.uint64)]
            )
        self.words = np.ascontiguousarray(words[:need], dtype=np.uint64)
        rem = self.m & 63
        if rem:
            self.words[self.m >> 6] &= np.uint64((1 << rem) - 1)
        self.words[(self.m >> 6) + (1 if rem else 0) :] = 0
        self._super = None
        self._byte_cum = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_bits(cls, bits) -> "Bitvector":
        arr = np.asarray(bits, dtype=np.uint8)
        payload = np.packbits(arr, bitorder="little")
        pad = (-payload.size) % 8 + 16
        payload = np.concatenate([payload, np.zeros(pad, dtype=np.uint8)])
        return cls(arr.size, payload.view("<u8").copy())

    @classmethod
    def from_string(cls, s: str) -> "Bitvector":
        return cls.from_bits([1 if c == "1" else 0 for c in s])

    @classmethod
    def zeros(cls, m: int) -> "Bitvector":
        return cls(m, np.zeros((m >> 6) + 2, dtype=np.uint64))

    def to_bits(self) -> np.ndarray:
        if self.m == 0:
            return np.zeros(0, dtype=np.uint8)
        raw = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return raw[: self.m]

    # -- directories ----------------------------------------------------------

    def _build_super(self) -> None:
        bytes_view = self.words.view(np.uint8)
        per_byte = _PC8[bytes_view]
        full = self.m >> 3
        if self.m & 7:
            per_byte = per_byte.copy()
            per_byte[full] = bin(
                int(bytes_view[full]) & ((1 << (self.m & 7)) - 1)
            ).count("1")
            per_byte[full + 1 :] = 0
        else:
            per_byte = per_byte.copy()
            per_byte[full:] = 0
        self._pb = per_byte.astype(np.uint32)
        groups = (len(per_byte) + 63) // 64
        sums = np.zeros(groups, dtype=np.uint64)
        trimmed = per_byte[: groups * 64].copy()
        trimmed.resize(groups * 64)
        sums = trimmed.reshape(groups, 64).sum(axis=1, dtype=np.uint64)
        self._super = np.concatenate(
            [[np.uint64(0)], np.cumsum(sums, dtype=np.uint64)]
        )

    def _ensure_super(self) -> None:
        if self._super is None:
            self._build_super()

    def _ensure_byte_cum(self) -> None:
        if self._byte_cum is None:
            self._ensure_super()
            self._byte_cum = np.concatenate(
                [[np.uint64(0)], np.cumsum(self._pb, dtype=np.uint64)]
            )

    # -- queries ---------------------------------------------------------------

    def get(self, t: int) -> int:
        if not 1 <= t <= self.m:
            raise ParameterError(f"bit position {t} out of [1..{self.m}]")
        return int((self.words[(t - 1) >> 6] >> np.uint64((t - 1) & 63)) & 1)

    def rank1(self, j: int) -> int:
        """Number of ones among bits [1..j]."""
        if not 0 <= j <= self.m:
            raise ParameterError(f"rank position {j} out of [0..{self.m}]")
        if j == 0:
            return 0
        self._ensure_super()
        s = j >> 9
        cnt = int(self._super[s])
        byte0 = s << 6
        byte1 = j >> 3
        if byte1 > byte0:
            cnt += int(self._pb[byte0:byte1].sum())
        rem = j & 7
        if rem:
            b = int(self.words.view(np.uint8)[byte1]) & ((1 << rem) - 1)
            cnt += bin(b).count("1")
        return cnt

    def rank0(self, j: int) -> int:
        return j - self.rank1(j)

    def rank1_many(self, js: np.ndarray) -> np.ndarray:
        """Vectorized rank1 over an array of positions."""
        js = np.asarray(js, dtype=np.int64)
        if js.size and (js.min() < 0 or js.max() > self.m):
            raise ParameterError("rank position out of range")
        self._ensure_byte_cum()
        byte_idx = js >> 3
        out = self._byte_cum[byte_idx].astype(np.int64)
        rem = (js & 7).astype(np.uint8)
        b = self.words.view(np.uint8)[byte_idx]
        masked = b & ((np.uint16(1) << rem) - 1).astype(np.uint8)
        return out + _PC8[masked].astype(np.int64)

    @property
    def total_ones(self) -> int:
        return self.rank1(self.m)

    def select1(self, r: int) -> int:
        """Position of the r-th one (1-based)."""
        self._ensure_super()
        if r < 1 or r > int(self._super[-1]):
            raise QueryError(f"select1({r}) past the last set bit")
        s = int(np.searchsorted(self._super, r, side="left")) - 1
        cnt = int(self._super[s])
        byte = s << 6
        pb = self._pb
        while cnt + int(pb[byte]) < r:
            cnt += int(pb[byte])
            byte += 1
        b = int(self.words.view(np.uint8)[byte])
        pos = byte << 3
        while True:
            if b & 1:
                cnt += 1
                if cnt == r:
                    return pos + 1
            b >>= 1
            pos += 1

    def select0(self, r: int) -> int:
        """Position of the r-th zero (1-based)."""
        self._ensure_super()
        total0 = self.m - int(self._super[-1])
        if r < 1 or r > total0:
            raise QueryError(f"select0({r}) past the last zero bit")
        lo, hi = 1, self.m
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.rank0(mid) >= r:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def succ_one(self, i: int, j: int) -> int:
        """min{t in (i..j] : B[t] = 1}, or j+1 if none."""
        if not 0 <= i <= j <= self.m:
            raise ParameterError("succ_one range violation")
        if i == j:
            return j + 1
        q, r = i >> 6, i & 63
        w = int(self.words[q])
        if r:
            w &= ~((1 << r) - 1)
        if w:
            t = (q << 6) + ((w & -w).bit_length() - 1) + 1
            return t if t <= j else j + 1
        q += 1
        qend = (j + 63) >> 6
        chunk = 1024
        while q < qend:
            stop = min(qend, q + chunk)
            nz = np.nonzero(self.words[q:stop])[0]
            if nz.size:
                q += int(nz[0])
                w = int(self.words[q])
                t = (q << 6) + ((w & -w).bit_length() - 1) + 1
                return t if t <= j else j + 1
            q = stop
            chunk = min(2 * chunk, 1 << 16)
        return j + 1

    def ones_positions(self) -> np.ndarray:
        """All set positions, ascending (1-based)."""
        return np.nonzero(self.to_bits())[0].astype(np.int64) + 1

    # -- producers ---------------------------------------------------------------

    def concat(self, other: "Bitvector") -> "Bitvector":
        w = _BitWriter(self.m + other.m)
        w.append_words(self.words, 0, self.m)
        w.append_words(other.words, 0, other.m)
        return w.done()

    def repeat(self, k: int) -> "Bitvector":
        """B^k, assembled by binary doubling."""
        if k < 0:
            raise ParameterError("repeat count must be nonnegative")
        if k == 0 or self.m == 0:
            return Bitvector.zeros(0)
        acc = None
        base = self
        kk = k
        while kk:
            if kk & 1:
                acc = base if acc is None else acc.concat(base)
            kk >>= 1
            if kk:
                base = base.concat(base)
        return acc

    def delete_positions(self, positions) -> "Bitvector":
        """Remove the listed (1-based, strictly increasing) positions."""
        pos = np.asarray(positions, dtype=np.int64)
        if pos.size == 0:
            return self
        if pos.min() < 1 or pos.max() > self.m or np.any(np.diff(pos) <= 0):
            raise ParameterError("positions must be strictly increasing in [1..m]")
        w = _BitWriter(self.m - pos.size)
        prev = 0
        for p in pos:
            w.append_words(self.words, prev, int(p) - 1 - prev)
            prev = int(p)
        w.append_words(self.words, prev, self.m - prev)
        return w.done()

    def insert_pairs(self, pairs) -> "Bitvector":
        """Insert bits so the result S' has S'[p_i] = c_i and deleting
        {p_i} recovers this bitvector."""
        if len(pairs) == 0:
            return self
        k = len(pairs)
        prev_p = 0
        w = _BitWriter(self.m + k)
        src_off = 0
        for p, c in pairs:
            p = int(p)
            if p <= prev_p or p > self.m + k:
                raise ParameterError("insert positions must be increasing and fit")
            gap = (p - 1) - w.length
            w.append_words(self.words, src_off, gap)
            src_off += gap
            w.append_bit(int(c))
            prev_p = p
        w.append_words(self.words, src_off, self.m - src_off)
        return w.done()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bitvector):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.to_bits(), other.to_bits())

    def __repr__(self) -> str:
        if self.m <= 80:
            return f"Bitvector('{''.join(map(str, self.to_bits()))}')"
        return f"Bitvector(m={self.m})"


def or_into(dst: np.ndarray, bit_off: int, src: Bitvector) -> None:
    """OR the bits of ``src`` into a word buffer starting at bit_off.

    The destination region must currently be zero; the buffer needs one
    spare word past the touched region.
    """
    length = src.m
    if length == 0:
        return
    chunk = _extract_bits(src.words, 0, length)
    t0, r = bit_off >> 6, bit_off & 63
    nw = len(chunk)
    if r == 0:
        dst[t0 : t0 + nw] |= chunk
    else:
        rs, ls = np.uint64(r), np.uint64(64 - r)
        dst[t0] |= chunk[0] << rs
        if nw > 1:
            dst[t0 + 1 : t0 + nw] |= (chunk[1:] << rs) | (chunk[:-1] >> ls)
        dst[t0 + nw] |= chunk[-1] >> ls


def succ_one(b: Bitvector, i: int, j: int) -> int:
    return b.succ_one(i, j)


def repeat(b: Bitvector, k: int) -> Bitvector:
    return b.repeat(k)


def delete_positions(b: Bitvector, positions) -> Bitvector:
    return b.delete_positions(positions)


def insert_pairs(b: Bitvector, pairs) -> Bitvector:
    return b.insert_pairs(pairs)
