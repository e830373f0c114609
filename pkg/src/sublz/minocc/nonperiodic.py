"""Leftmost occurrences of tau-nonperiodic patterns: distinguishing
prefixes route a query to a suffix range over the lexicographically
sorted synchronizing-set samples, where a prefix RMQ over reversed
sample contexts picks the leftmost occurrence.

Suffix ranges come from binary search over the sample array with packed
LCE comparisons (standing in for the compact-trie navigation of the
source construction, with the same (b, e) contract).
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError, NotFoundError, ParameterError
from ..prefix_rmq import PrefixRmqIndex
from ..sync import SyncSet
from ..text import PackedText, SuffixScaffold


class NonperiodicIndex:
    def __init__(
        self,
        text: PackedText,
        scaffold: SuffixScaffold | None,
        sync: SyncSet,
        tau: int,
        r_mask: np.ndarray,
        lex_positions: np.ndarray | None = None,
    ):
        self.text = text
        self.tau = int(tau)
        self.sync = sync
        n = text.n_total
        self.n_total = n
        if lex_positions is not None:
            self.a_s = np.asarray(lex_positions, dtype=np.int64)
        else:
            self.a_s = sync.lex_sorted(scaffold).astype(np.int64)
        m = len(self.a_s)
        # reversed contexts rev(T^inf[s - tau .. s + 2tau)) as 3tau-symbol rows
        offs = np.arange(-tau, 2 * tau, dtype=np.int64)
        idx = (self.a_s[:, None] - 1 + offs[None, :]) % n
        ctx = text.sym[idx]
        self.a_str = np.ascontiguousarray(ctx[:, ::-1])
        self.prmq = PrefixRmqIndex(self.a_s, self.a_str, text.sigma, ell=3 * tau)
        self._dist = self._build_dist_prefixes(r_mask)

    # -- construction --------------------------------------------------------

    def _encode(self, window: np.ndarray) -> int:
        val = 0
        for c in window:
            val = val * self.text.sigma + int(c)
        t = len(window)
        return val * self.text.sigma ** (6 * self.tau - t) + (
            self.text.sigma**t - 1
        )

    def _build_dist_prefixes(self, r_mask: np.ndarray) -> dict:
        """Map encode(D) -> delta for every distinguishing prefix D."""
        tau, n = self.tau, self.n_total
        sym = self.text.sym
        dom = n - 3 * tau + 2
        out: dict[int, int] = {}
        for s in self.sync.positions:
            s = int(s)
            for delta in range(tau):
                j = s - delta
                if j < 1:
                    break
                if delta > 0 and self.sync.member[j]:
                    break  # successor(j) is no longer s
                if j > dom or r_mask[j - 1]:
                    continue
                d = sym[j - 1 : s + 2 * tau - 1]
                out.setdefault(self._encode(d), delta)
        return out

    # -- navigation -----------------------------------------------------------

    def dist_prefix_pos(self, j: int) -> np.ndarray:
        """D = T[j .. successor(S, j) + 2tau) for a nonperiodic position."""
        s = self.sync.successor(j)
        if s - j >= self.tau:
            raise ContractError(f"density violated at {j} (gap {s - j})")
        return self.text.sym[j - 1 : s + 2 * self.tau - 1]

    def _suffix_range_window(self, start: int, end: int):
        """(b, e) over the sample array for the text window T[start..end)."""
        t = self.text
        lam = end - start
        a_s = self.a_s
        m = len(a_s)

        def lt(i) -> bool:
            s = int(a_s[i])
            l = min(t.lce(s, start), lam)
            if l >= lam:
                return False
            if s + l > self.n_total:
                return True
            return t.sym[s + l - 1] < t.sym[start + l - 1]

        lo, hi = 0, m
        while lo < hi:
            mid = (lo + hi) // 2
            if lt(mid):
                lo = mid + 1
            else:
                hi = mid
        b = lo
        hi = m
        while lo < hi:
            mid = (lo + hi) // 2
            if t.lce(int(a_s[mid]), start) >= lam:
                lo = mid + 1
            else:
                hi = mid
        return b, lo

    def _suffix_range_pattern(self, pat: PackedText, skip: int):
        """(b, e) for the explicit pattern suffix P(skip..]."""
        t = self.text
        lam = pat.n_total - skip
        a_s = self.a_s
        m = len(a_s)

        def cmp_at(i) -> int:
            s = int(a_s[i])
            l = min(t.lce_between(s, pat, skip + 1), lam)
            if l >= lam:
                return 0
            if s + l > self.n_total:
                return -1
            return -1 if t.sym[s + l - 1] < pat.sym[skip + l] else 1

        lo, hi = 0, m
        while lo < hi:
            mid = (lo + hi) // 2
            if cmp_at(mid) < 0:
                lo = mid + 1
            else:
                hi = mid
        b = lo
        hi = m
        while lo < hi:
            mid = (lo + hi) // 2
            if cmp_at(mid) == 0:
                lo = mid + 1
            else:
                hi = mid
        return b, lo

    # -- queries ----------------------------------------------------------------

    def window_minocc(self, j: int, length: int) -> int:
        """min Occ(T[j..j+length), T) for a nonperiodic position j."""
        tau = self.tau
        if length < 3 * tau - 1:
            raise ParameterError("nonperiodic part handles length >= 3tau-1")
        s = self.sync.successor(j)
        if s - j >= tau:
            raise ContractError(f"density violated at {j}")
        delta = s - j
        d = self.text.sym[j - 1 : s + 2 * tau - 1]
        b, e = self._suffix_range_window(s, j + length)
        hit = self.prmq.query(b, e, list(d[::-1]))
        if hit is None:
            raise ContractError("prefix RMQ found no occurrence for a window")
        return int(self.a_s[hit - 1]) - delta

    def pattern_minocc(self, pat_sym: np.ndarray, pat: PackedText) -> int:
        """min Occ(P, T) for an explicit nonperiodic pattern."""
        tau = self.tau
        m = len(pat_sym)
        if m < 3 * tau - 1:
            raise ParameterError("nonperiodic part handles length >= 3tau-1")
        delta = None
        for dl in range(tau):
            if 2 * tau + dl > m:
                break
            code = self._encode(pat_sym[: 2 * tau + dl])
            got = self._dist.get(code)
            if got is not None:
                delta = dl
                break
        if delta is None:
            raise NotFoundError("pattern has no distinguishing prefix")
        d = pat_sym[: 2 * tau + delta]
        b, e = self._suffix_range_pattern(pat, delta)
        hit = self.prmq.query(b, e, list(d[::-1]))
        if hit is None:
            raise NotFoundError("pattern does not occur in the text")
        return int(self.a_s[hit - 1]) - delta
