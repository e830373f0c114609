"""Brute-force reference implementations for every queryable contract.

These restate the definitions directly (leftmost occurrence by scan, LPF
by maximization, greedy parsing phrase by phrase, periodic-run sets by
filtering) and deliberately share no code with the indexed structures.
Quadratic behavior is fine; inputs are desk scale.  The only structural
helpers are an all-pairs lcp table for bulk small-text checks and a
suffix-array range-minimum fallback for spot checks on larger texts.
"""

from __future__ import annotations

import numpy as np


# -- all-pairs lcp -------------------------------------------------------------


def lcp_table(sym: np.ndarray) -> np.ndarray:
    """G[i, j] = lcp(T[i+1..], T[j+1..]) for 0-based i, j (full matrix)."""
    sym = np.asarray(sym)
    n = len(sym)
    g = np.zeros((n, n), dtype=np.int32)
    idx = np.arange(n)
    g[idx, idx] = (n - idx).astype(np.int32)
    for d in range(1, n):
        eq = sym[: n - d] == sym[d:]
        ln = len(eq)
        rev = eq[::-1]
        pos = np.arange(ln)
        lf = np.maximum.accumulate(np.where(~rev, pos, -1))
        run_end = pos - lf
        runs = run_end[::-1].astype(np.int32)
        g[idx[: n - d], idx[: n - d] + d] = runs
        g[idx[: n - d] + d, idx[: n - d]] = runs
    return g


# -- leftmost occurrences -------------------------------------------------------


def oracle_minocc_pattern(sym: np.ndarray, pat) -> int | None:
    """min Occ(P, T) by direct window scan; None when absent (1-based)."""
    sym = np.asarray(sym)
    pat = np.asarray(list(pat))
    m = len(pat)
    if m == 0 or m > len(sym):
        return None
    ok = np.ones(len(sym) - m + 1, dtype=bool)
    for d in range(m):
        ok &= sym[d : d + len(ok)] == pat[d]
        if not ok.any():
            return None
    return int(np.nonzero(ok)[0][0]) + 1


def oracle_minocc_window(g: np.ndarray, j: int, length: int) -> int:
    """min Occ(T[j..j+length), T) from an lcp table (1-based)."""
    col = g[: j - 1, j - 1]
    hits = np.nonzero(col >= length)[0]
    return int(hits[0]) + 1 if hits.size else j


def oracle_minocc_all_windows(g: np.ndarray, j: int) -> np.ndarray:
    """minocc(j, l) for every l in [1..n-j+1], computed per column."""
    n = g.shape[0]
    maxlen = n - (j - 1)
    out = np.full(maxlen + 1, j, dtype=np.int64)
    col = g[: j - 1, j - 1]
    for i in range(j - 2, -1, -1):
        ln = int(col[i])
        if ln > 0:
            out[1 : min(ln, maxlen) + 1] = i + 1
    return out


# -- LPF / LPnF ------------------------------------------------------------------


def oracle_lpf(sym: np.ndarray, variant: str = "overlap"):
    """Definitional LPF (or LPnF) lengths and leftmost sources, O(n^2)."""
    sym = np.asarray(sym)
    n = len(sym)
    g = lcp_table(sym)
    lens = np.zeros(n, dtype=np.int64)
    srcs = np.zeros(n, dtype=np.int64)
    for j in range(1, n + 1):
        best = 0
        for i in range(1, j):
            cap = g[i - 1, j - 1]
            if variant == "nonoverlap":
                cap = min(cap, j - i)
            cap = min(cap, n - j + 1)
            if cap > best:
                best = cap
        lens[j - 1] = best
        if best == 0:
            srcs[j - 1] = sym[j - 1]
        else:
            for i in range(1, j):
                cap = int(g[i - 1, j - 1])
                if variant == "nonoverlap":
                    cap = min(cap, j - i)
                if cap >= best:
                    srcs[j - 1] = i
                    break
    return lens, srcs


def oracle_parse(sym: np.ndarray, variant: str = "overlap"):
    """Greedy left-to-right parse, matching candidates incrementally.

    Returns [(0, symbol)] literals and [(length, src)] copies.
    """
    sym = np.asarray(sym)
    n = len(sym)
    phrases = []
    j = 1
    while j <= n:
        cand = np.arange(1, j)
        best_len, best_src = 0, None
        t = 0
        while cand.size and j + t <= n:
            keep = sym[cand - 1 + t] == sym[j - 1 + t]
            if variant == "nonoverlap":
                keep &= cand + t <= j - 1
            cand = cand[keep]
            if cand.size == 0:
                break
            t += 1
            best_len, best_src = t, int(cand[0])
        if best_len == 0:
            phrases.append((0, int(sym[j - 1])))
            j += 1
        else:
            phrases.append((best_len, best_src))
            j += best_len
    return phrases


# -- scan oracles for the query kernels -------------------------------------------


def oracle_rmq(a, b: int, e: int):
    best = None
    for i in range(b + 1, e + 1):
        if best is None or a[i - 1] < a[best - 1]:
            best = i
    return best


def oracle_prefix_rmq(a, s, b: int, e: int, x):
    x = list(x)
    best = None
    for i in range(b + 1, e + 1):
        if list(s[i - 1][: len(x)]) == x:
            if best is None or a[i - 1] < a[best - 1]:
                best = i
    return best


def oracle_tsrmq(a, barr, b: int, e: int, v: int):
    best = None
    for i in range(b + 1, e + 1):
        if barr[i - 1] >= v and (best is None or a[i - 1] < a[best - 1]):
            best = i
    return best


def oracle_count_two_sided(a, pos: int, val: int) -> int:
    return sum(1 for j in range(pos) if a[j] >= val)


# -- periodic-run machinery ---------------------------------------------------------


def _window_period(w) -> int:
    m = len(w)
    for p in range(1, m + 1):
        if all(w[k] == w[k + p] for k in range(m - p)):
            return p
    return m


def oracle_runs(sym: np.ndarray, tau: int):
    """Maximal R-blocks with their derived quantities, definitionally.

    Returns a list of dicts: a, end (RunEndPos), efull, root (tuple),
    head, exp, per, type.
    """
    sym = np.asarray(sym)
    n = len(sym)
    w = 3 * tau - 1
    dom = n - w + 1
    in_r = [
        3 * _window_period(sym[j : j + w]) <= tau for j in range(dom)
    ]
    runs = []
    j = 0
    while j < dom:
        if not in_r[j]:
            j += 1
            continue
        a = j
        while j + 1 < dom and in_r[j + 1]:
            j += 1
        end = j + 1 + w - 1  # 0-based exclusive end of the run string
        p = _window_period(sym[a : a + w])
        rots = [tuple(sym[a + t : a + t + p]) for t in range(p)]
        root = min(rots)
        head = rots.index(root)
        # extend by the true period to the mismatch
        e = a + p
        while e < n and sym[e] == sym[e - p]:
            e += 1
        end = e  # RunEndPos as 0-based exclusive == 1-based position
        k = (end - a - head) // p
        efull = a + head + k * p
        typ = +1 if end < n and sym[end] > sym[end - p] else -1
        if end >= n:
            typ = -1
        runs.append(
            {
                "a": a + 1,
                "end": end + 1,
                "efull": efull + 1,
                "root": root,
                "head": head,
                "exp": k,
                "per": p,
                "type": typ,
            }
        )
        j += 1
    return runs


def oracle_r_positions(sym: np.ndarray, tau: int):
    """All j (1-based) with per(T[j..j+3tau-1)) <= tau/3."""
    sym = np.asarray(sym)
    w = 3 * tau - 1
    dom = len(sym) - w + 1
    return [
        j + 1
        for j in range(max(0, dom))
        if 3 * _window_period(sym[j : j + w]) <= tau
    ]


def oracle_rmin(sym: np.ndarray, tau: int, sign: int):
    """RMin for one type sign: {j in R_sign : j = min Occ(T[j..e(j)), T)
    restricted to R_sign}."""
    sym = np.asarray(sym)
    runs = oracle_runs(sym, tau)
    g = lcp_table(sym)
    members = []  # (j, end, type)
    for r in runs:
        for j in range(r["a"], r["end"] - (3 * tau - 1) + 1):
            members.append((j, r["end"], r["type"]))
    bytype = np.array([j for j, _, t in members if t == sign], dtype=np.int64)
    out = set()
    for j, end, t in members:
        if t != sign:
            continue
        plen = end - j
        cand = bytype[bytype < j]
        if cand.size and (g[cand - 1, j - 1] >= plen).any():
            continue
        out.add(j)
    return out


def oracle_emin(sym: np.ndarray, tau: int, sign: int):
    """RunMinEnd per run start of the given type, from the RMin set."""
    rmin = oracle_rmin(sym, tau, sign)
    out = {}
    for r in oracle_runs(sym, tau):
        if r["type"] != sign:
            continue
        j = r["a"]
        while j in rmin:
            j += 1
        out[r["a"]] = j
    return out


# -- suffix-array based spot-check oracle (for large texts) ------------------------


class SaWindowOracle:
    """minocc / LPF / LPnF answers for sampled positions of a large text,
    via suffix-array binary search and block-sparse range minima over SA.

    Uses the text scaffolding only; independent of the leftmost-occurrence
    index machinery under test.
    """

    BLOCK = 64

    def __init__(self, text, scaffold):
        self.text = text
        self.sa = scaffold.sa
        n = len(self.sa)
        w = self.BLOCK
        nb = (n + w - 1) // w
        pad = nb * w - n
        v = self.sa
        if pad:
            v = np.concatenate([v, np.full(pad, np.iinfo(np.int64).max)])
        self._bmin = v.reshape(nb, w).min(axis=1)
        sp = [self._bmin]
        span = 1
        while 2 * span <= nb:
            prev = sp[-1]
            sp.append(np.minimum(prev[: len(prev) - span], prev[span:]))
            span *= 2
        self._sp = sp

    def _sa_min(self, lo: int, hi: int) -> int:
        """min SA[lo..hi) 0-based."""
        w = self.BLOCK
        fb, lb = (lo + w - 1) // w, hi // w - 1
        best = np.iinfo(np.int64).max
        if fb > lb:
            return int(self.sa[lo:hi].min())
        if lo < fb * w:
            best = min(best, int(self.sa[lo : fb * w].min()))
        if fb <= lb:
            k = (lb - fb + 1).bit_length() - 1
            best = min(
                best,
                int(self._sp[k][fb]),
                int(self._sp[k][lb - (1 << k) + 1]),
            )
        if (lb + 1) * w < hi:
            best = min(best, int(self.sa[(lb + 1) * w : hi].min()))
        return best

    def _range_of_window(self, j: int, length: int):
        """SA range [lo..hi) 0-based of suffixes prefixed with
        T[j..j+length)."""
        t = self.text
        n = t.n_total
        sa = self.sa

        def suffix_lt(i):
            s = int(sa[i])
            l = t.lce(s, j)
            if l >= length:
                return False  # window is a prefix of this suffix
            if s + l > n:
                return True  # suffix ran out: proper prefix of the window
            return t.sym[s + l - 1] < t.sym[j + l - 1]

        lo, hi = 0, n
        while lo < hi:
            mid = (lo + hi) // 2
            if suffix_lt(mid):
                lo = mid + 1
            else:
                hi = mid
        start = lo
        lo, hi = start, n
        while lo < hi:
            mid = (lo + hi) // 2
            s = int(sa[mid])
            if t.lce(s, j) >= length:
                lo = mid + 1
            else:
                hi = mid
        return start, lo

    def minocc(self, j: int, length: int) -> int:
        lo, hi = self._range_of_window(j, length)
        return self._sa_min(lo, hi)

    def lpf_at(self, j: int, variant: str = "overlap") -> int:
        n = self.text.n
        best = 0
        hi = n - j + 1
        lo = 0
        while lo < hi:
            mid = (lo + hi + 1) // 2
            occ = self.minocc(j, mid)
            ok = occ < j if variant == "overlap" else occ + mid <= j
            if ok:
                lo = mid
            else:
                hi = mid - 1
        return lo
