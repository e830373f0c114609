"""Facade combining the core tables with the nonperiodic and periodic
parts into the leftmost-occurrence index, plus a scaffold-based fallback
answerer for regimes the table budgets cannot serve, and a versioned
binary container for save/load.

Dispatch: a window (j, l) with l < 3*tau - 1 goes to the core tables;
otherwise the R-membership of j routes it to the periodic or nonperiodic
part.  Explicit patterns dispatch on length and pattern periodicity the
same way, with a final occurrence verification so absent patterns raise
instead of returning junk.
"""

from __future__ import annotations

import json
import math
import struct

import numpy as np

from ..errors import (
    ConfigurationError,
    ContractError,
    FormatError,
    NotFoundError,
    ParameterError,
)
from ..rmq import RmqIndex
from ..sync import SyncSet, build_sync_set
from ..text import PackedText, SuffixScaffold, build_scaffold, period_of
from .core import DEFAULT_TABLE_BUDGET, CoreTables
from .nonperiodic import NonperiodicIndex
from .periodic import PeriodicIndex, RunsTable, _min_rotation

MAGIC = b"SLZIX01"

N_MIN = 64
MU_NUM, MU_DEN = 1, 8  # tau = max(2, floor(log_sigma(n) / 8))


def choose_tau(n_total: int, sigma: int, budget: int = DEFAULT_TABLE_BUDGET):
    """The index's tau, or None when no tau fits the table budget."""
    tau = max(2, int(MU_NUM * math.log(max(n_total, 2), sigma)) // MU_DEN)
    tau = max(2, tau)
    while 3 * tau - 1 > n_total and tau > 2:
        tau -= 1
    if 3 * tau - 1 > n_total:
        return None
    while tau >= 2 and sigma ** (6 * tau) > budget:
        tau -= 1
    return tau if tau >= 2 else None


class MinOccIndex:
    """Leftmost-occurrence queries for windows and explicit patterns."""

    def __init__(self, text: PackedText, mode: str, tau: int | None,
                 memory_relaxed: bool = False):
        self.text = text
        self.mode = mode
        self.tau = tau
        self.memory_relaxed = memory_relaxed
        self.core: CoreTables | None = None
        self.sync: SyncSet | None = None
        self.nonper: NonperiodicIndex | None = None
        self.periodic: PeriodicIndex | None = None
        self.scaffold: SuffixScaffold | None = None
        self._sa_rmq: RmqIndex | None = None

    # -- fallback answerer ------------------------------------------------------

    def _install_fallback(self, scaffold: SuffixScaffold) -> None:
        self.scaffold = scaffold
        self._sa_rmq = RmqIndex(scaffold.sa)

    def _sa_range(self, start: int, lam: int, pat: PackedText | None = None,
                  skip: int = 0):
        t = self.text
        sa = self.scaffold.sa
        n = t.n_total

        def cmp_at(i) -> int:
            s = int(sa[i])
            if pat is None:
                l = min(t.lce(s, start), lam)
                nxt = t.sym[start + l - 1] if l < lam else 0
            else:
                l = min(t.lce_between(s, pat, skip + 1), lam)
                nxt = pat.sym[skip + l] if l < lam else 0
            if l >= lam:
                return 0
            if s + l > n:
                return -1
            return -1 if t.sym[s + l - 1] < nxt else 1

        lo, hi = 0, n
        while lo < hi:
            mid = (lo + hi) // 2
            if cmp_at(mid) < 0:
                lo = mid + 1
            else:
                hi = mid
        b = lo
        hi = n
        while lo < hi:
            mid = (lo + hi) // 2
            if cmp_at(mid) == 0:
                lo = mid + 1
            else:
                hi = mid
        return b, lo

    def _fallback_window(self, j: int, length: int) -> int:
        b, e = self._sa_range(j, length)
        arg = self._sa_rmq.query(b, e)
        return int(self.scaffold.sa[arg - 1])

    def _fallback_pattern(self, pat: PackedText) -> int:
        b, e = self._sa_range(0, pat.n_total, pat=pat)
        if b >= e:
            raise NotFoundError("pattern does not occur in the text")
        arg = self._sa_rmq.query(b, e)
        return int(self.scaffold.sa[arg - 1])

    # -- queries ------------------------------------------------------------------

    def window(self, j: int, length: int) -> int:
        """min Occ(T[j..j+length), T); positions refer to the original
        text (the sentinel never enters a window)."""
        if j < 1 or length < 1 or j + length > self.text.n + 1:
            raise ParameterError("window out of range")
        if self.mode == "fallback":
            return self._fallback_window(j, length)
        tau = self.tau
        if length < 3 * tau - 1:
            return self.core.minocc_pos(j, length)
        if self.core.in_r(j):
            return self.periodic.window_minocc(j, length)
        return self.nonper.window_minocc(j, length)

    def pattern(self, pat_sym) -> int:
        """min Occ(P, T); raises NotFoundError when P does not occur."""
        pat_sym = np.asarray(list(pat_sym), dtype=np.int64)
        if len(pat_sym) == 0:
            raise ParameterError("empty pattern")
        if pat_sym.min() < 0 or pat_sym.max() >= self.text.sigma:
            raise NotFoundError("pattern symbol outside the text alphabet")
        if len(pat_sym) > self.text.n_total:
            raise NotFoundError("pattern longer than the text")
        pat = PackedText(pat_sym, self.text.sigma, has_sentinel=False)
        if self.mode == "fallback":
            return self._fallback_pattern(pat)
        got = self._pattern_full(pat_sym, pat)
        # absent patterns can produce junk ranges; verify the hit
        if (
            got < 1
            or got + len(pat_sym) > self.text.n_total + 1
            or self.text.lce_between(got, pat, 1) < len(pat_sym)
        ):
            raise NotFoundError("pattern does not occur in the text")
        return got

    def _pattern_full(self, pat_sym: np.ndarray, pat: PackedText) -> int:
        tau = self.tau
        m = len(pat_sym)
        if m < 3 * tau - 1:
            return self.core.minocc_pat(pat_sym)
        if not self.core.is_periodic_pattern(pat_sym):
            return self.nonper.pattern_minocc(pat_sym, pat)
        p = period_of(pat_sym[: 3 * tau - 1])
        run_end = 1 + p + min(pat.lce(1, 1 + p), m - p)
        rot = _min_rotation(pat_sym[:p])
        head = rot
        root = pat_sym[rot : rot + p]
        try:
            if run_end > m:
                return self.periodic.fully_periodic_minocc(head, root, m)
            k = (run_end - 1 - head) // p
            efull_pat = 1 + head + k * p
            sign = 1 if pat_sym[run_end - 1] > pat_sym[run_end - 1 - p] else -1
            return self.periodic.partially_periodic_pattern(
                pat_sym, pat, p, efull_pat, sign
            )
        except ContractError as exc:
            raise NotFoundError(str(exc)) from exc


def build_minocc(
    text: PackedText,
    tau: int | None = None,
    memory_relaxed: bool = False,
    budget: int = DEFAULT_TABLE_BUDGET,
    verify_sync: bool = True,
    timings: dict | None = None,
) -> MinOccIndex:
    """Build the index; degrades to the scaffold-based fallback answerer
    outside the small-alphabet regime (never refuses)."""
    import time

    def clock(name, start):
        if timings is not None:
            timings[name] = time.perf_counter() - start
        return time.perf_counter()

    if not text.has_sentinel:
        raise ParameterError("index requires a sentinel-terminated text")
    n = text.n_total
    sigma = text.sigma
    t0 = time.perf_counter()
    scaffold = build_scaffold(text)
    t0 = clock("scaffold", t0)
    if tau is not None:
        # explicit override: force the full index, budgets permitting
        if tau < 1 or 3 * tau - 1 > n or sigma ** (6 * tau) > budget:
            raise ConfigurationError(f"tau={tau} violates the table budgets")
        chosen = int(tau)
    else:
        chosen = choose_tau(n, sigma, budget)
        regime_ok = (
            n >= N_MIN
            and sigma**7 < n
            and chosen is not None
        )
        if not regime_ok:
            idx = MinOccIndex(text, "fallback", None, memory_relaxed)
            idx._install_fallback(scaffold)
            return idx
    idx = MinOccIndex(text, "full", chosen, memory_relaxed)
    idx.core = CoreTables(text, chosen, budget=budget)
    t0 = clock("core", t0)
    idx.sync = build_sync_set(text, scaffold, chosen, verify=verify_sync)
    idx.nonper = NonperiodicIndex(text, scaffold, idx.sync, chosen, idx.core.r)
    t0 = clock("nonperiodic", t0)
    idx.periodic = PeriodicIndex(
        text, chosen, scaffold, rm=idx.core.r, keep_scaffold=memory_relaxed
    )
    clock("periodic", t0)
    if memory_relaxed:
        idx.scaffold = scaffold
        idx._sa_rmq = RmqIndex(scaffold.sa)
    return idx


# -- serialization ------------------------------------------------------------------


def _sections_of(index: MinOccIndex) -> dict[str, np.ndarray]:
    out = {"text_sym": index.text.sym}
    if index.mode == "fallback":
        out["sa"] = index.scaffold.sa.astype(np.int64)
        return out
    out["sync_positions"] = index.sync.positions
    out["a_s"] = index.nonper.a_s
    runs = index.periodic.runs
    for name in RunsTable.ARRAY_FIELDS:
        out[f"runs.{name}"] = getattr(runs, name)
    if runs.roots:
        out["roots_flat"] = np.concatenate(runs.roots)
        out["roots_len"] = np.array([len(r) for r in runs.roots], dtype=np.int64)
    else:
        out["roots_flat"] = np.zeros(0, dtype=np.int64)
        out["roots_len"] = np.zeros(0, dtype=np.int64)
    cls = index.periodic._classes
    keys = sorted(cls)
    out["cls_head"] = np.array([k[0] for k in keys], dtype=np.int64)
    out["cls_root"] = np.array([k[1] for k in keys], dtype=np.int64)
    out["cls_bounds"] = np.array([cls[k] for k in keys], dtype=np.int64).reshape(
        -1, 3
    )
    for sign, side in ((-1, index.periodic.minus), (1, index.periodic.plus)):
        tag = "m" if sign == -1 else "p"
        out[f"bmin_{tag}"] = side.bmin.words
        out[f"ones_{tag}"] = side.sa_at_ones
    return out


def save_index(index: MinOccIndex, path) -> None:
    meta = {
        "mode": index.mode,
        "tau": index.tau,
        "sigma": index.text.sigma,
        "n": index.text.n,
        "has_sentinel": index.text.has_sentinel,
        "memory_relaxed": index.memory_relaxed,
    }
    sections = _sections_of(index)
    blob = json.dumps(meta).encode()
    entries = []
    payload = bytearray()
    off = 0
    for name, arr in sections.items():
        arr = np.ascontiguousarray(arr)
        raw = arr.astype("<i8").tobytes() if arr.dtype != np.uint64 else arr.astype(
            "<u8"
        ).tobytes()
        code = 1 if arr.dtype == np.uint64 else 0
        shape1 = arr.shape[1] if arr.ndim == 2 else 0
        entries.append((name.encode()[:24].ljust(24, b"\0"), code, shape1, off,
                        len(raw)))
        payload += raw
        off += len(raw)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        fh.write(struct.pack("<I", len(entries)))
        for name, code, shape1, o, ln in entries:
            fh.write(name)
            fh.write(struct.pack("<IIQQ", code, shape1, o, ln))
        fh.write(bytes(payload))


def load_index(path) -> MinOccIndex:
    with open(path, "rb") as fh:
        if fh.read(len(MAGIC)) != MAGIC:
            raise FormatError("not an SLZIX01 container")
        (blen,) = struct.unpack("<I", fh.read(4))
        meta = json.loads(fh.read(blen))
        (cnt,) = struct.unpack("<I", fh.read(4))
        entries = []
        for _ in range(cnt):
            name = fh.read(24).rstrip(b"\0").decode()
            code, shape1, off, ln = struct.unpack("<IIQQ", fh.read(24))
            entries.append((name, code, shape1, off, ln))
        payload = fh.read()
    sections = {}
    for name, code, shape1, off, ln in entries:
        raw = payload[off : off + ln]
        arr = np.frombuffer(raw, dtype="<u8" if code else "<i8").copy()
        if shape1:
            arr = arr.reshape(-1, shape1)
        sections[name] = arr
    text = PackedText(
        sections["text_sym"], meta["sigma"], has_sentinel=meta["has_sentinel"]
    )
    if meta["mode"] == "fallback":
        idx = MinOccIndex(text, "fallback", None, meta["memory_relaxed"])
        scaffold = SuffixScaffold.__new__(SuffixScaffold)
        scaffold.text = text
        scaffold.sa = sections["sa"]
        scaffold.isa = np.empty_like(scaffold.sa)
        scaffold.isa[scaffold.sa - 1] = np.arange(1, len(scaffold.sa) + 1)
        idx._install_fallback(scaffold)
        return idx
    tau = meta["tau"]
    idx = MinOccIndex(text, "full", tau, meta["memory_relaxed"])
    idx.core = CoreTables(text, tau)
    idx.sync = SyncSet(tau, sections["sync_positions"], text.n_total)
    idx.nonper = NonperiodicIndex(
        text, None, idx.sync, tau, idx.core.r,
        lex_positions=sections["a_s"],
    )
    runs = RunsTable.restore(
        tau,
        {name: sections[f"runs.{name}"] for name in RunsTable.ARRAY_FIELDS},
        _split_roots(sections["roots_flat"], sections["roots_len"]),
    )
    classes = {}
    for h, r, bounds in zip(
        sections["cls_head"], sections["cls_root"], sections["cls_bounds"]
    ):
        classes[(int(h), int(r))] = [int(x) for x in bounds]
    idx.periodic = PeriodicIndex.restore(
        text,
        tau,
        runs,
        classes,
        {-1: sections["bmin_m"], 1: sections["bmin_p"]},
        {-1: sections["ones_m"], 1: sections["ones_p"]},
    )
    return idx


def _split_roots(flat: np.ndarray, lens: np.ndarray):
    out = []
    off = 0
    for ln in lens:
        out.append(flat[off : off + int(ln)])
        off += int(ln)
    return out
