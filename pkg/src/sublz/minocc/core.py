"""Index core: flat lookup tables answering leftmost occurrence for every
short pattern (length < 3*tau - 1) plus O(1) periodicity tests for text
windows and patterns.

Tables are keyed by the padded integer encoding; the leftmost-occurrence
table is filled by a block scan that sorts blocks of length 2l-1
(l = 3*tau - 2) by content and skips repeated blocks, so the work is
proportional to the number of distinct blocks times l^2.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError, NotFoundError, ParameterError
from ..text import PackedText

DEFAULT_TABLE_BUDGET = 1 << 22


def _all_strings_periods(length: int, sigma: int) -> np.ndarray:
    """per(X) for every X in [0..sigma)^length, indexed by base-sigma code."""
    count = sigma**length
    digits = np.empty((count, length), dtype=np.int64)
    codes = np.arange(count)
    for d in range(length):
        digits[:, d] = (codes // sigma ** (length - 1 - d)) % sigma
    per = np.full(count, length, dtype=np.int64)
    assigned = np.zeros(count, dtype=bool)
    for p in range(1, length):
        ok = (digits[:, : length - p] == digits[:, p:]).all(axis=1)
        newly = ok & ~assigned
        per[newly] = p
        assigned |= newly
    return per


class CoreTables:
    """Lookup tables for patterns shorter than 3*tau - 1 and the text's
    periodic-position mask."""

    def __init__(
        self,
        text: PackedText,
        tau: int,
        budget: int = DEFAULT_TABLE_BUDGET,
        with_lookup: bool = True,
    ):
        self.text = text
        self.tau = int(tau)
        sigma = text.sigma
        if tau < 1:
            raise ParameterError("tau must be positive")
        if with_lookup and sigma ** (6 * tau) > budget:
            raise ConfigurationError(
                f"sigma^(6 tau) = {sigma}^{6 * tau} exceeds the table budget"
            )
        if sigma ** (3 * tau - 1) > (1 << 24):
            raise ConfigurationError("period table would exceed its budget")
        self.sigma = sigma
        self.n_total = text.n_total
        self._pows = [sigma**i for i in range(6 * tau + 1)]
        self.per_table = _all_strings_periods(3 * tau - 1, sigma)
        self.r = self._r_mask()
        self.l_minocc = self._build_minocc_table() if with_lookup else None

    # -- construction ---------------------------------------------------------

    def _window_codes(self, length: int) -> np.ndarray:
        sym = self.text.sym
        starts = self.n_total - length + 1
        codes = np.zeros(max(0, starts), dtype=np.int64)
        for d in range(length):
            codes = codes * self.sigma + sym[d : d + starts]
        return codes

    def _r_mask(self) -> np.ndarray:
        w = 3 * self.tau - 1
        if self.n_total < w:
            return np.zeros(0, dtype=bool)
        codes = self._window_codes(w)
        return 3 * self.per_table[codes] <= self.tau

    def _encode(self, window: np.ndarray) -> int:
        """Padded code of a pattern of length < 3*tau - 1."""
        t = len(window)
        val = 0
        for c in window:
            val = val * self.sigma + int(c)
        return val * self._pows[6 * self.tau - t] + (self._pows[t] - 1)

    def _build_minocc_table(self) -> np.ndarray:
        sigma, tau, n = self.sigma, self.tau, self.n_total
        ell = 3 * tau - 2
        sym = self.text.sym
        absent = n + 2
        table = np.full(sigma ** (6 * tau), absent, dtype=np.int64)
        if ell < 1:
            return table
        starts = np.arange(1, n + 1, ell, dtype=np.int64)
        blen = np.minimum(2 * ell - 1, n + 1 - starts)
        # order blocks by content (padded code covers the ragged tail)
        full_digits = 2 * (2 * ell - 1)
        bits = max(1, int(sigma - 1).bit_length())
        codes: np.ndarray | list
        if full_digits * bits <= 62:
            full = np.nonzero(blen == 2 * ell - 1)[0]
            vals = np.zeros(len(starts), dtype=np.int64)
            for d in range(2 * ell - 1):
                vals[full] = vals[full] * sigma + sym[starts[full] - 1 + d]
            codes = vals * sigma ** (full_digits - (2 * ell - 1)) + (
                sigma ** (2 * ell - 1) - 1
            )
            for i in np.nonzero(blen < 2 * ell - 1)[0]:
                b, ln = int(starts[i]), int(blen[i])
                val = 0
                for d in range(ln):
                    val = val * sigma + int(sym[b - 1 + d])
                codes[i] = val * sigma ** (full_digits - ln) + (sigma**ln - 1)
        else:
            codes = []
            for b, ln in zip(starts, blen):
                val = 0
                for d in range(int(ln)):
                    val = val * sigma + int(sym[b - 1 + d])
                codes.append(
                    val * sigma ** (full_digits - int(ln)) + (sigma ** int(ln) - 1)
                )
        order = sorted(range(len(starts)), key=lambda i: (codes[i], starts[i]))
        prev_code = None
        for i in order:
            if codes[i] == prev_code:
                continue  # identical block seen further left
            prev_code = codes[i]
            b, e = int(starts[i]), int(starts[i] + blen[i])
            for s in range(b, e):
                val = 0
                for t in range(1, min(ell, e - s) + 1):
                    val = val * sigma + int(sym[s - 1 + t - 1])
                    q = val * self._pows[6 * tau - t] + (self._pows[t] - 1)
                    if s < table[q]:
                        table[q] = s
        return table

    # -- queries ----------------------------------------------------------------

    def in_r(self, j: int) -> bool:
        """Is j in R(tau, T)?  Domain: [1..n_total - 3tau + 2]."""
        if not 1 <= j <= len(self.r):
            raise ParameterError(f"position {j} outside the R domain")
        return bool(self.r[j - 1])

    def minocc_pat(self, pat) -> int:
        if self.l_minocc is None:
            raise ConfigurationError("core built without the lookup table")
        pat = np.asarray(list(pat), dtype=np.int64)
        if not 0 < len(pat) < 3 * self.tau - 1:
            raise ParameterError("core handles lengths in (0, 3tau-1)")
        got = int(self.l_minocc[self._encode(pat)])
        if got > self.n_total:
            raise NotFoundError("pattern does not occur in the text")
        return got

    def minocc_pos(self, j: int, length: int) -> int:
        if j < 1 or length < 1 or j + length > self.n_total + 1:
            raise ParameterError("window out of range")
        return self.minocc_pat(self.text.window(j, length))

    def is_periodic_pattern(self, pat) -> bool:
        """Is per(P[1..3tau-1]) <= tau/3?  Requires |P| >= 3tau - 1."""
        pat = np.asarray(list(pat), dtype=np.int64)
        w = 3 * self.tau - 1
        if len(pat) < w:
            raise ParameterError("pattern shorter than 3tau - 1")
        code = 0
        for c in pat[:w]:
            code = code * self.sigma + int(c)
        return bool(3 * self.per_table[code] <= self.tau)


def build_core(text: PackedText, tau: int, budget: int = DEFAULT_TABLE_BUDGET):
    return CoreTables(text, tau, budget)
