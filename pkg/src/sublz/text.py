"""Packed text over an integer alphabet plus suffix-structure scaffolding.

Positions are 1-based everywhere in the public API, matching the rest of
the package.  A text of original length ``n`` may carry an appended unique
sentinel symbol; internal structures then work over ``n_total = n + 1``
positions while factorization and leftmost-occurrence results always refer
to positions of the original text.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import FormatError, InputError, ParameterError

WORD = 64

PACKED2_MAGIC = b"SLZ2"


def _bits_for(sigma: int) -> int:
    return max(1, int(sigma - 1).bit_length())


class PackedText:
    """Bit-packed string over [0, sigma) with optional unique final sentinel.

    ``sym`` keeps the symbols as a numpy array for vectorized scans;
    ``words`` holds the same payload packed at ``bits_per_symbol`` bits per
    symbol (LSB-first within 64-bit words) for word-parallel comparisons.
    """

    def __init__(self, sym: np.ndarray, sigma: int, has_sentinel: bool):
        if sigma < 2:
            raise ParameterError("alphabet size must be at least 2")
        self.sigma = int(sigma)
        self.has_sentinel = bool(has_sentinel)
        self.sym = np.ascontiguousarray(sym, dtype=np.int64)
        self.n_total = int(self.sym.size)
        self.n = self.n_total - 1 if has_sentinel else self.n_total
        if self.n < 1:
            raise ParameterError("text must contain at least one symbol")
        if self.sym.min() < 0 or self.sym.max() >= sigma:
            raise InputError("symbol out of range [0, sigma)")
        if has_sentinel:
            last = self.sym[-1]
            if np.any(self.sym[:-1] == last):
                raise InputError("sentinel symbol is not unique")
        self.bits_per_symbol = _bits_for(sigma)
        self.words = self._pack(self.sym, self.bits_per_symbol)

    @staticmethod
    def _pack(sym: np.ndarray, bits: int) -> np.ndarray:
        stream = np.zeros(sym.size * bits, dtype=np.uint8)
        for b in range(bits):
            stream[b::bits] = (sym >> b) & 1
        payload = np.packbits(stream, bitorder="little")
        pad = (-payload.size) % 8 + 16  # two spare words for unaligned reads
        payload = np.concatenate([payload, np.zeros(pad, dtype=np.uint8)])
        return payload.view("<u8").copy()

    # -- basic access -------------------------------------------------------

    def symbol(self, i: int) -> int:
        """Symbol at 1-based position i (sentinel included)."""
        if not 1 <= i <= self.n_total:
            raise ParameterError(f"position {i} out of [1..{self.n_total}]")
        return int(self.sym[i - 1])

    def window(self, i: int, length: int) -> np.ndarray:
        """Symbols of T[i..i+length) as an array view."""
        if length < 0 or i < 1 or i + length > self.n_total + 1:
            raise ParameterError("window out of range")
        return self.sym[i - 1 : i - 1 + length]

    def _chunks(self, bit_off: int, count: int) -> np.ndarray:
        """`count` consecutive 64-bit windows of the bit stream from bit_off."""
        q, r = bit_off >> 6, bit_off & 63
        lo = self.words[q : q + count]
        if r == 0:
            return lo.copy()
        hi = self.words[q + 1 : q + 1 + count]
        return (lo >> np.uint64(r)) | (hi << np.uint64(64 - r))

    # -- longest common extension ------------------------------------------

    def lce(self, i: int, j: int) -> int:
        """max L with T[i..i+L) = T[j..j+L), by packed word comparison."""
        return self.lce_between(i, self, j)

    def lce_between(self, i: int, other: "PackedText", j: int) -> int:
        if not 1 <= i <= self.n_total:
            raise ParameterError(f"position {i} out of [1..{self.n_total}]")
        if not 1 <= j <= other.n_total:
            raise ParameterError(f"position {j} out of [1..{other.n_total}]")
        if self.bits_per_symbol != other.bits_per_symbol:
            # different packing widths: fall back to symbol-array comparison
            return _lce_arrays(self.sym[i - 1 :], other.sym[j - 1 :])
        bits = self.bits_per_symbol
        limit = min(self.n_total - i + 1, other.n_total - j + 1)
        if self is other and i == j:
            return limit
        limit_bits = limit * bits
        off_a = (i - 1) * bits
        off_b = (j - 1) * bits
        wa, wb = self.words, other.words
        done_bits = 0
        # short matches resolve in a few single-word rounds of plain
        # integer arithmetic; long ones switch to doubling batches
        for _ in range(4):
            if done_bits >= limit_bits:
                return limit
            qa, ra = divmod(off_a + done_bits, WORD)
            qb, rb = divmod(off_b + done_bits, WORD)
            ca = int(wa[qa]) >> ra
            if ra:
                ca |= (int(wa[qa + 1]) << (WORD - ra)) & 0xFFFFFFFFFFFFFFFF
            cb = int(wb[qb]) >> rb
            if rb:
                cb |= (int(wb[qb + 1]) << (WORD - rb)) & 0xFFFFFFFFFFFFFFFF
            diff = ca ^ cb
            if diff:
                done_bits += ((diff & -diff).bit_length() - 1)
                return min(done_bits // bits, limit)
            done_bits += WORD
        batch = 4
        while done_bits < limit_bits:
            k = min(batch, (limit_bits - done_bits) // WORD + 1)
            ca = self._chunks(off_a + done_bits, k)
            cb = other._chunks(off_b + done_bits, k)
            diff = ca ^ cb
            nz = np.nonzero(diff)[0]
            if nz.size == 0:
                done_bits += k * WORD
                batch = min(2 * batch, 4096)
                continue
            t = int(nz[0])
            tz = int(diff[t]) & -int(diff[t])
            done_bits += t * WORD + tz.bit_length() - 1
            return min(done_bits // bits, limit)
        return limit

    def equal_windows(self, i: int, j: int, length: int) -> bool:
        return self.lce(i, j) >= length

    # -- periodicity ---------------------------------------------------------

    def period(self, i: int, length: int) -> int:
        """Smallest period of T[i..i+length)."""
        if length < 1 or i < 1 or i + length > self.n_total + 1:
            raise ParameterError("window out of range")
        return period_of(self.sym[i - 1 : i - 1 + length])


def period_of(w: np.ndarray) -> int:
    """Smallest period of a symbol array, via the KMP failure function."""
    m = len(w)
    if m == 0:
        raise ParameterError("empty window has no period")
    pi = np.zeros(m, dtype=np.int64)
    k = 0
    for q in range(1, m):
        while k > 0 and w[q] != w[k]:
            k = int(pi[k - 1])
        if w[q] == w[k]:
            k += 1
        pi[q] = k
    return m - int(pi[m - 1])


def _lce_arrays(a: np.ndarray, b: np.ndarray) -> int:
    limit = min(len(a), len(b))
    step = 64
    done = 0
    while done < limit:
        k = min(step, limit - done)
        neq = np.nonzero(a[done : done + k] != b[done : done + k])[0]
        if neq.size:
            return done + int(neq[0])
        done += k
        step = min(2 * step, 1 << 20)
    return limit


def pack_text(symbols, sigma: int, add_sentinel: bool = False) -> PackedText:
    """Pack a symbol sequence; optionally extend the alphabet and append a
    unique sentinel (the appended symbol is the new largest value)."""
    if sigma < 2:
        raise ParameterError("alphabet size must be at least 2")
    sym = np.asarray(
        list(symbols) if not isinstance(symbols, np.ndarray) else symbols,
        dtype=np.int64,
    )
    if sym.size < 1:
        raise InputError("empty input")
    if sym.min() < 0 or sym.max() >= sigma:
        raise InputError("symbol out of range [0, sigma)")
    if add_sentinel:
        sym = np.concatenate([sym, [sigma]])
        return PackedText(sym, sigma + 1, has_sentinel=True)
    return PackedText(sym, sigma, has_sentinel=False)


class SuffixScaffold:
    """Suffix array, inverse, and LCE support for a sentinel-terminated text.

    Construction is rank-doubling (O(n log n)); it is scaffolding shared by
    all index-construction algorithms, not a query-time structure.
    """

    def __init__(self, text: PackedText, verify: bool = False):
        if not text.has_sentinel:
            raise ParameterError("scaffold requires a sentinel-terminated text")
        self.text = text
        self.sa = _suffix_array(text.sym)
        self.isa = np.empty_like(self.sa)
        self.isa[self.sa - 1] = np.arange(1, len(self.sa) + 1, dtype=self.sa.dtype)
        if verify:
            self._verify_sorted()

    def _verify_sorted(self) -> None:
        sym = self.text.sym
        n = len(sym)
        suffixes = sorted(range(n), key=lambda i: tuple(sym[i:]))
        if not np.array_equal(self.sa, np.asarray(suffixes) + 1):
            raise AssertionError("suffix array is not sorted")

    def lce(self, i: int, j: int) -> int:
        return self.text.lce(i, j)


def _suffix_array(sym: np.ndarray) -> np.ndarray:
    """1-based suffix array by rank doubling (numpy lexsort per round)."""
    n = len(sym)
    dtype = np.int64
    rank = np.unique(sym, return_inverse=True)[1].astype(dtype)
    if n == 1:
        return np.array([1], dtype=dtype)
    k = 1
    tmp = np.empty(n, dtype=dtype)
    while True:
        second = np.full(n, -1, dtype=dtype)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        tmp[order[0]] = 0
        prev, cur = order[:-1], order[1:]
        bump = (rank[cur] != rank[prev]) | (second[cur] != second[prev])
        tmp[cur] = np.cumsum(bump)
        rank, tmp = tmp.copy(), rank
        if rank[order[-1]] == n - 1:
            return (order + 1).astype(dtype)
        k *= 2


def build_scaffold(text: PackedText, verify: bool = False) -> SuffixScaffold:
    return SuffixScaffold(text, verify=verify)


# -- file input/output -------------------------------------------------------


def read_raw_bytes(path, sigma: int = 256) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if not data:
        raise InputError("empty input")
    sym = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    if sym.max() >= sigma:
        raise InputError(f"byte value >= sigma ({sigma}) in raw input")
    return sym


def read_packed2(path) -> np.ndarray:
    """Read a 2-bit packed file: magic "SLZ2", u64 LE length, payload."""
    with open(path, "rb") as fh:
        head = fh.read(12)
        if len(head) < 12 or head[:4] != PACKED2_MAGIC:
            raise FormatError("not an SLZ2 file")
        (n,) = struct.unpack("<Q", head[4:12])
        payload = fh.read()
    if n == 0:
        raise InputError("empty input")
    need = (2 * n + 7) // 8
    if len(payload) < need:
        raise FormatError("truncated SLZ2 payload")
    bits = np.unpackbits(
        np.frombuffer(payload[:need], dtype=np.uint8), bitorder="little"
    )
    sym = (bits[0 : 2 * n : 2] + 2 * bits[1 : 2 * n : 2]).astype(np.int64)
    return sym


def write_packed2(path, sym: np.ndarray) -> None:
    sym = np.asarray(sym, dtype=np.int64)
    if sym.size and sym.max() > 3:
        raise InputError("SLZ2 holds symbols in [0, 4)")
    bits = np.zeros(2 * sym.size, dtype=np.uint8)
    bits[0::2] = sym & 1
    bits[1::2] = (sym >> 1) & 1
    with open(path, "wb") as fh:
        fh.write(PACKED2_MAGIC)
        fh.write(struct.pack("<Q", sym.size))
        fh.write(np.packbits(bits, bitorder="little").tobytes())
