"""Prefix range-minimum queries: given equal-length sequences A (values)
and S (fixed-length strings), answer the leftmost argmin of A[i] over
i in (b..e] restricted to entries whose string has a given prefix X.

Three cooperating structures:

* ``PrefixRankSelect`` -- a wavelet-style partition over the string bits
  answering prefix rank and prefix selection (the imported-interface
  reference; an h-ary variant is exposed via ``branching``).
* ``SimplePrefixRmq`` -- one RMQ component per distinct prefix; query is
  rank-project, RMQ, select-lift.
* ``ShallowPrefixRmq`` -- block decomposition with per-block components,
  block-minimum arrays A'_X and prefix-count arrays P_X; a query touches
  at most three subranges and compares at most three values.

``PrefixRmqIndex`` stacks shallow/simple components at prefix lengths that
are multiples of alpha = floor(sqrt(log m)/log sigma), with rank-space
values per layer (one global sort).
"""

from __future__ import annotations

import math

import numpy as np

from .bitvec import Bitvector
from .errors import ConfigurationError, InputError, ParameterError
from .rmq import RmqIndex

_INF = np.iinfo(np.int64).max


def _as_matrix(strings, ell: int | None = None) -> np.ndarray:
    s = np.asarray(strings, dtype=np.int64)
    if s.ndim == 1:
        s = s.reshape(len(s), -1) if ell is None else s.reshape(-1, ell)
    if s.ndim != 2:
        raise InputError("strings must form an m x ell matrix")
    return np.ascontiguousarray(s)


def _codes_for_length(s: np.ndarray, k: int, sigma: int) -> np.ndarray:
    """Base-sigma integer of each row's length-k prefix."""
    if sigma**k > (1 << 62):
        raise ConfigurationError("prefix code space exceeds 62 bits")
    out = np.zeros(len(s), dtype=np.int64)
    for d in range(k):
        out = out * sigma + s[:, d]
    return out


def _code_of(x, sigma: int) -> int:
    out = 0
    for c in x:
        out = out * sigma + int(c)
    return out


class PrefixRankSelect:
    """Prefix rank/select over m fixed-length strings.

    A bit-granular partition hierarchy over the ell*ceil(log sigma) bit
    positions; ``branching`` h >= 2 makes each level consume
    floor(log2 h) bits (the binary instantiation is the default and the
    only one the index needs).
    """

    def __init__(self, strings, sigma: int, ell: int | None = None, branching: int = 2):
        self.s = _as_matrix(strings, ell)
        self.m, self.ell = self.s.shape
        if self.m < 1:
            raise InputError("need at least one string")
        self.sigma = int(sigma)
        if self.s.size and (self.s.min() < 0 or self.s.max() >= sigma):
            raise InputError("symbol out of range [0, sigma)")
        if branching < 2:
            raise ParameterError("branching must be at least 2")
        self.bits_per_symbol = max(1, int(sigma - 1).bit_length())
        self.g = max(1, int(math.log2(branching)))
        self.total_bits = self.ell * self.bits_per_symbol
        self._build()

    # -- construction --------------------------------------------------------

    def _bitplane(self, k: int) -> np.ndarray:
        bs = self.bits_per_symbol
        return (self.s[:, k // bs] >> (bs - 1 - k % bs)) & 1

    def _build(self) -> None:
        g = self.g
        self.levels = []  # one dict per level: nid -> node payload
        self.child = []  # one dict per level: (nid, digit) -> nid
        node_of = np.zeros(self.m, dtype=np.int64)
        k = 0
        while k < self.total_bits:
            take = min(g, self.total_bits - k)
            digit = np.zeros(self.m, dtype=np.int64)
            for d in range(take):
                digit = digit * 2 + self._bitplane(k + d)
            order = np.argsort(node_of, kind="stable")
            nodes = {}
            starts = np.searchsorted(
                node_of[order], np.arange(node_of.max() + 1), side="left"
            )
            bounds = np.append(starts, self.m)
            for nid in range(len(bounds) - 1):
                lo, hi = bounds[nid], bounds[nid + 1]
                if lo >= hi:
                    continue
                members = order[lo:hi]
                nodes[nid] = self._make_node(digit[members], take)
            key = node_of * (1 << take) + digit
            uniq, node_of = np.unique(key, return_inverse=True)
            child = {}
            for new_id, kk in enumerate(uniq):
                child[(int(kk) >> take, int(kk) & ((1 << take) - 1))] = new_id
            self.levels.append(nodes)
            self.child.append(child)
            self._take = getattr(self, "_take", [])
            self._take.append(take)
            k += take

    def _make_node(self, digits: np.ndarray, take: int):
        if take == 1:
            return Bitvector.from_bits(digits)
        return [
            np.nonzero(digits == c)[0].astype(np.int64) + 1
            for c in range(1 << take)
        ]

    # -- navigation helpers ----------------------------------------------------

    def _x_bits(self, x) -> list[int]:
        bs = self.bits_per_symbol
        out = []
        for c in x:
            c = int(c)
            if not 0 <= c < self.sigma:
                raise ParameterError("query symbol out of range")
            for d in range(bs - 1, -1, -1):
                out.append((c >> d) & 1)
        return out

    @staticmethod
    def _node_rank(node, digit_lo: int, digit_hi: int, pos: int) -> int:
        if isinstance(node, Bitvector):
            if (digit_lo, digit_hi) == (0, 1):
                return pos - node.rank1(pos)
            if (digit_lo, digit_hi) == (1, 2):
                return node.rank1(pos)
            return pos
        return sum(
            int(np.searchsorted(node[c], pos, side="right"))
            for c in range(digit_lo, digit_hi)
        )

    @staticmethod
    def _node_select(node, digit: int, r: int) -> int:
        if isinstance(node, Bitvector):
            return node.select1(r) if digit else node.select0(r)
        return int(node[digit][r - 1])

    def prefix_rank(self, j: int, x) -> int:
        """|{i in [1..j] : x is a prefix of S[i]}|."""
        if not 0 <= j <= self.m:
            raise ParameterError(f"rank position {j} out of [0..{self.m}]")
        bits = self._x_bits(x)
        if len(bits) > self.total_bits:
            raise ParameterError("prefix longer than the stored strings")
        nid, pos, k = 0, j, 0
        for lvl, take in enumerate(self._take):
            if k >= len(bits) or pos == 0:
                break
            node = self.levels[lvl].get(nid)
            if node is None:
                return 0
            use = min(take, len(bits) - k)
            dlo = 0
            for d in range(use):
                dlo = dlo * 2 + bits[k + d]
            if use == take:
                pos = self._node_rank(node, dlo, dlo + 1, pos)
                nid = self.child[lvl].get((nid, dlo))
                if nid is None:
                    return 0
            else:  # partial digit: count a whole range of child symbols
                span = 1 << (take - use)
                return self._node_rank(node, dlo * span, (dlo + 1) * span, pos)
            k += take
        return pos

    def prefix_select(self, r: int, x) -> int:
        """Index of the r-th string having prefix x (1-based)."""
        if r < 1:
            raise ParameterError("selection rank must be positive")
        bits = self._x_bits(x)
        if len(bits) > self.total_bits:
            raise ParameterError("prefix longer than the stored strings")
        path = []
        nid, k = 0, 0
        partial = None
        for lvl, take in enumerate(self._take):
            if k >= len(bits):
                break
            node = self.levels[lvl].get(nid)
            if node is None:
                raise ParameterError("no string has the requested prefix")
            use = min(take, len(bits) - k)
            dlo = 0
            for d in range(use):
                dlo = dlo * 2 + bits[k + d]
            if use == take:
                path.append((node, dlo))
                nid = self.child[lvl].get((nid, dlo))
                if nid is None:
                    raise ParameterError("no string has the requested prefix")
            else:
                span = 1 << (take - use)
                partial = (node, dlo * span, (dlo + 1) * span)
            k += take
        pos = r
        if partial is not None:
            node, clo, chi = partial
            pos = self._partial_select(node, clo, chi, pos)
        for node, digit in reversed(path):
            pos = self._node_select(node, digit, pos)
        return pos

    @staticmethod
    def _partial_select(node, clo: int, chi: int, r: int) -> int:
        if isinstance(node, Bitvector):
            raise AssertionError("binary nodes never see partial digits")
        merged = np.sort(np.concatenate([node[c] for c in range(clo, chi)]))
        if r > len(merged):
            raise ParameterError("selection rank past the group size")
        return int(merged[r - 1])

    def prefix_count(self, x) -> int:
        return self.prefix_rank(self.m, x)


def build_prefix_rank_select(strings, ell: int, sigma: int, branching: int = 2):
    return PrefixRankSelect(strings, sigma, ell=ell, branching=branching)


class SimplePrefixRmq:
    """One RMQ component per distinct prefix; rank-project / RMQ /
    select-lift via a PrefixRankSelect instance."""

    def __init__(self, values, strings, sigma: int, prs: PrefixRankSelect | None = None):
        self.a = np.ascontiguousarray(values, dtype=np.int64)
        self.s = _as_matrix(strings)
        if len(self.a) != len(self.s):
            raise InputError("values and strings must have equal length")
        self.m, self.ell = self.s.shape
        self.sigma = int(sigma)
        self.prs = prs if prs is not None else PrefixRankSelect(self.s, sigma)
        self._rmq = {}
        for k in range(self.ell + 1):
            codes = _codes_for_length(self.s, k, sigma)
            order = np.argsort(codes, kind="stable")
            sorted_codes = codes[order]
            cuts = np.nonzero(np.diff(sorted_codes))[0] + 1
            for grp in np.split(order, cuts):
                self._rmq[(k, int(codes[grp[0]]))] = RmqIndex(self.a[grp])

    def query(self, b: int, e: int, x):
        if not 0 <= b <= e <= self.m:
            raise ParameterError("range out of bounds")
        x = list(x)
        if len(x) > self.ell:
            raise ParameterError("prefix longer than the stored strings")
        comp = self._rmq.get((len(x), _code_of(x, self.sigma)))
        if comp is None or b >= e:
            return None
        bb = self.prs.prefix_rank(b, x)
        ee = self.prs.prefix_rank(e, x)
        if bb >= ee:
            return None
        r = comp.query(bb, ee)
        return self.prs.prefix_select(r, x)


class ShallowPrefixRmq:
    """Blocked prefix RMQ: per-block candidates plus per-prefix
    block-minimum arrays A'_X (with argmin positions) and prefix-count
    arrays P_X; at most three subrange answers and three comparisons."""

    def __init__(self, values, strings, sigma: int, n_param: int | None = None):
        self.a = np.ascontiguousarray(values, dtype=np.int64)
        self.s = _as_matrix(strings)
        if len(self.a) != len(self.s):
            raise InputError("values and strings must have equal length")
        self.m, self.ell = self.s.shape
        self.sigma = int(sigma)
        n_param = n_param if n_param is not None else self.m
        logm = max(1, math.ceil(math.log2(max(self.m, 2))))
        self.t = max(1, (sigma**self.ell) * logm)
        self.nblocks = (self.m + self.t - 1) // self.t
        self._codes = [
            _codes_for_length(self.s, k, sigma) for k in range(self.ell + 1)
        ]
        blk = np.arange(self.m) // self.t
        self._rows = {}
        self._pfx = {}
        for k in range(self.ell + 1):
            codes = self._codes[k]
            ncodes = sigma**k
            keymat = np.full((ncodes, self.nblocks), _INF, dtype=np.int64)
            enc = self.a * self.m + np.arange(self.m)
            np.minimum.at(keymat, (codes, blk), enc)
            cnt = np.zeros((ncodes, self.nblocks), dtype=np.int64)
            np.add.at(cnt, (codes, blk), 1)
            for code in np.unique(codes):
                row = keymat[code]
                have = row != _INF
                vals = np.where(have, row // self.m, _INF)
                pos = np.where(have, row % self.m, -1)
                self._rows[(k, int(code))] = (vals, pos, RmqIndex(vals))
                self._pfx[(k, int(code))] = np.concatenate(
                    [[0], np.cumsum(cnt[code])]
                )

    def _scan(self, k: int, code: int, lo: int, hi: int):
        """Leftmost argmin over 0-based [lo..hi) among prefix matches."""
        if hi <= lo:
            return None
        seg = self._codes[k][lo:hi]
        ok = seg == code
        if not ok.any():
            return None
        vals = np.where(ok, self.a[lo:hi], _INF)
        return lo + int(np.argmin(vals))

    def query(self, b: int, e: int, x):
        if not 0 <= b <= e <= self.m:
            raise ParameterError("range out of bounds")
        x = list(x)
        if len(x) > self.ell:
            raise ParameterError("prefix longer than the stored strings")
        if b >= e:
            return None
        k = len(x)
        code = _code_of(x, self.sigma)
        row = self._rows.get((k, code))
        if row is None:
            return None
        vals, pos, rmq = row
        pfx = self._pfx[(k, code)]
        t = self.t
        blk_b, blk_e = b // t, (e - 1) // t
        if blk_b == blk_e:
            ans = self._scan(k, code, b, e)
            return None if ans is None else ans + 1
        cands = []
        if pfx[blk_b + 1] - pfx[blk_b]:
            c = self._scan(k, code, b, (blk_b + 1) * t)
            if c is not None:
                cands.append(c)
        if blk_b + 1 <= blk_e - 1:
            r = rmq.query(blk_b + 1, blk_e)
            if vals[r - 1] != _INF:
                cands.append(int(pos[r - 1]))
        if pfx[blk_e + 1] - pfx[blk_e]:
            c = self._scan(k, code, blk_e * t, e)
            if c is not None:
                cands.append(c)
        if not cands:
            return None
        best = cands[0]
        for c in cands[1:]:
            if self.a[c] < self.a[best]:
                best = c
        return best + 1


def build_simple(values, strings, sigma: int) -> SimplePrefixRmq:
    return SimplePrefixRmq(values, strings, sigma)


def build_shallow(values, strings, sigma: int, n_param: int | None = None):
    return ShallowPrefixRmq(values, strings, sigma, n_param)


class _Group:
    __slots__ = ("members", "comp")

    def __init__(self, members, comp):
        self.members = members
        self.comp = comp


class PrefixRmqIndex:
    """Layered prefix RMQ: shallow/simple components at prefix-length
    multiples of alpha over rank-space values, glued by prefix rank and
    selection on the full string sequence."""

    def __init__(self, values, strings, sigma: int, ell: int | None = None,
                 branching: int = 2):
        self.a = np.ascontiguousarray(values, dtype=np.int64)
        self.s = _as_matrix(strings, ell)
        self.m, self.ell = self.s.shape
        if len(self.a) != self.m:
            raise InputError("values and strings must have equal length")
        self.sigma = int(sigma)
        # rank space via one global sort; (value, index) pairs are distinct,
        # so every later argmin automatically breaks ties to the left
        order = np.lexsort((np.arange(self.m), self.a))
        self._arank = np.empty(self.m, dtype=np.int64)
        self._arank[order] = np.arange(self.m)
        self.prs = PrefixRankSelect(self.s, sigma, branching=branching)
        bits_sigma = max(1, math.log2(self.sigma))
        self.alpha = max(1, int(math.sqrt(math.log2(max(self.m, 2))) / bits_sigma))
        self.layers: dict[int, dict[int, _Group]] = {}
        for k in range(0, self.ell, self.alpha):
            self.layers[k] = self._build_layer(k)
        if not self.layers:
            self.layers[0] = self._build_layer(0)

    def _build_layer(self, k: int) -> dict[int, _Group]:
        codes = _codes_for_length(self.s, k, self.sigma)
        order = np.argsort(codes, kind="stable")
        sorted_codes = codes[order]
        cuts = np.nonzero(np.diff(sorted_codes))[0] + 1
        groups = {}
        aprime = min(self.alpha, self.ell - k)
        logtbl = math.ceil(math.log2(max(self.m, 2)))
        for grp in np.split(order, cuts):
            code = int(codes[grp[0]])
            a_loc = self._arank[grp]
            s_loc = self.s[grp, k : k + aprime]
            sz = len(grp)
            if self.sigma**aprime * max(1, math.ceil(math.log2(max(sz, 2)))) <= sz:
                comp = ShallowPrefixRmq(a_loc, s_loc, self.sigma, n_param=self.m)
            else:
                comp = SimplePrefixRmq(a_loc, s_loc, self.sigma)
            groups[code] = _Group(grp + 1, comp)
        return groups

    def query(self, b: int, e: int, x):
        """Leftmost 1-based argmin of A over (b..e] among entries prefixed
        with x, or None."""
        if not 0 <= b <= e <= self.m:
            raise ParameterError("range out of bounds")
        x = list(x)
        if len(x) > self.ell:
            raise ParameterError(f"prefix longer than ell={self.ell}")
        if b >= e:
            return None
        if len(x) == 0:
            klen, z = 0, []
        else:
            zlen = ((len(x) - 1) % self.alpha) + 1
            klen = len(x) - zlen
            z = x[klen:]
        y = x[:klen]
        group = self.layers[klen].get(_code_of(y, self.sigma))
        if group is None:
            return None
        bb = self.prs.prefix_rank(b, y)
        ee = self.prs.prefix_rank(e, y)
        if bb >= ee:
            return None
        local = group.comp.query(bb, ee, z)
        if local is None:
            return None
        return int(group.members[local - 1])


def build_prefix_rmq(values, strings, sigma: int, ell: int | None = None,
                     branching: int = 2) -> PrefixRmqIndex:
    return PrefixRmqIndex(values, strings, sigma, ell=ell, branching=branching)


def prefix_rmq_query(index: PrefixRmqIndex, b: int, e: int, x):
    return index.query(b, e, x)
