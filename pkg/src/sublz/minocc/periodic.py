"""Leftmost occurrences of tau-periodic patterns.

Machinery per type sign (-1 / +1):

* a runs table (start, end, full end, Lyndon root, head, exponent, type)
  over the maximal blocks of R(tau, T);
* arrays A_pos / A_len over the lexicographically sorted runs with a
  three-sided RMQ for partially periodic queries;
* the B_min bitvector in suffix-array order marking leftmost run-prefix
  occurrences, built root by root with the event-sweep construction:
  exponent sweep for head 0, then head-to-head sweeps, each block obtained
  from its predecessor by bitvector Delete/Insert, with repetition filling
  the event-free gaps.

Run-length comparisons reverse between the two signs: within a class the
minus side orders exponents ascending in suffix order and the candidate is
the first marked bit after the range begin; the plus side orders them
descending and takes the last marked bit before the range end.
"""

from __future__ import annotations

import numpy as np

from ..bitvec import Bitvector, or_into
from ..dyn_rmq import NarrowRangeMax
from ..errors import ConstructionError, ContractError, ParameterError
from ..sync import r_mask
from ..text import PackedText, SuffixScaffold, period_of
from ..tsrmq import ThreeSidedRmqIndex


def _min_rotation(w: np.ndarray) -> int:
    """Index of the lexicographically smallest rotation (Booth-style scan)."""
    p = len(w)
    best = 0
    for t in range(1, p):
        for d in range(p):
            a, b = w[(t + d) % p], w[(best + d) % p]
            if a != b:
                if a < b:
                    best = t
                break
    return best


class RunsTable:
    """Per-run records for the maximal blocks of R(tau, T)."""

    def __init__(self, text: PackedText, tau: int, scaffold: SuffixScaffold,
                 rm: np.ndarray | None = None):
        self.tau = int(tau)
        sym = text.sym
        n = text.n_total
        if rm is None:
            rm = r_mask(text, tau)
        dom = len(rm)
        if dom == 0 or not rm.any():
            self._empty(n)
            return
        flags = rm.astype(np.int8)
        d = np.diff(np.concatenate([[0], flags, [0]]))
        starts0 = np.nonzero(d == 1)[0]  # 0-based block starts
        stops0 = np.nonzero(d == -1)[0]  # exclusive 0-based block ends
        self.a = starts0 + 1
        block_last = stops0  # 1-based last block position
        self.end = block_last + 3 * tau - 1
        m = len(self.a)
        w = 3 * tau - 1
        # period of each run from its first window, root by minimal rotation
        self.per = np.array(
            [period_of(sym[s0 : s0 + w]) for s0 in starts0], dtype=np.int64
        )
        roots: dict[tuple, int] = {}
        self.root_id = np.zeros(m, dtype=np.int64)
        self.head = np.zeros(m, dtype=np.int64)
        for i in range(m):
            a0 = int(starts0[i])
            p = int(self.per[i])
            rot = _min_rotation(sym[a0 : a0 + p])
            self.head[i] = rot
            key = tuple(sym[a0 + rot : a0 + rot + p].tolist())
            self.root_id[i] = roots.setdefault(key, len(roots))
        self.roots = [None] * len(roots)
        for key, rid in roots.items():
            self.roots[rid] = np.array(key, dtype=np.int64)
        self.root_of = {
            tuple(r.tolist()): rid for rid, r in enumerate(self.roots)
        }
        self.exp = (self.end - self.a - self.head) // self.per
        self.efull = self.a + self.head + self.exp * self.per
        brk = self.end  # 1-based position of the breaking symbol
        self.type = np.where(sym[brk - 1] > sym[brk - 1 - self.per], 1, -1)
        self.r_len = self.end - self.a - (3 * tau - 1) + 1  # block length
        # rank of each root among the distinct root strings
        order = sorted(range(len(self.roots)), key=lambda i: tuple(self.roots[i]))
        rank_of = np.zeros(len(self.roots), dtype=np.int64)
        rank_of[order] = np.arange(len(self.roots))
        self.root_rank = rank_of[self.root_id]
        self.pow_len = self.per * -(-self.tau // self.per)
        self._isa_efull = scaffold.isa[self.efull - 1]

    def _empty(self, n):
        for name in (
            "a",
            "end",
            "efull",
            "per",
            "root_id",
            "head",
            "exp",
            "type",
            "r_len",
            "root_rank",
            "pow_len",
            "_isa_efull",
        ):
            setattr(self, name, np.zeros(0, dtype=np.int64))
        self.roots = []
        self.root_of = {}

    ARRAY_FIELDS = (
        "a",
        "end",
        "efull",
        "per",
        "root_id",
        "head",
        "exp",
        "type",
        "r_len",
        "root_rank",
        "pow_len",
        "_isa_efull",
    )

    @classmethod
    def restore(cls, tau: int, arrays: dict, roots: list) -> "RunsTable":
        self = cls.__new__(cls)
        self.tau = int(tau)
        for name in cls.ARRAY_FIELDS:
            setattr(self, name, np.asarray(arrays[name], dtype=np.int64))
        self.roots = [np.asarray(r, dtype=np.int64) for r in roots]
        self.root_of = {tuple(r.tolist()): i for i, r in enumerate(self.roots)}
        return self

    def __len__(self) -> int:
        return len(self.a)

    def lex_order(self, sign: int) -> np.ndarray:
        """Run indices of one type, sorted by (root string, suffix after
        the full end)."""
        sel = np.nonzero(self.type == sign)[0]
        if sel.size == 0:
            return sel.astype(np.int64)
        order = np.lexsort((self._isa_efull[sel], self.root_rank[sel]))
        return sel[order]

    def head_at(self, run: int, pos: int) -> int:
        return int(
            (self.head[run] - (pos - self.a[run])) % self.per[run]
        )

    def run_containing(self, j: int) -> int:
        """Index of the run whose block holds j; raises when j not in R."""
        i = int(np.searchsorted(self.a, j, side="right")) - 1
        if i < 0 or j > self.a[i] + self.r_len[i] - 1:
            raise ContractError(f"position {j} is not in R(tau, T)")
        return i


class _SideIndex:
    """Per-sign query structures."""

    def __init__(self, runs: RunsTable, sign: int, m_param: int):
        self.sign = sign
        self.order = runs.lex_order(sign)
        self.a_pos = (runs.efull - runs.pow_len)[self.order]
        self.a_len = self.a_pos - runs.a[self.order]
        self.tsrmq = ThreeSidedRmqIndex(self.a_pos, self.a_len, m_param=m_param)
        self.by_root: dict[int, np.ndarray] = {}
        sel = self.order
        for rid in np.unique(runs.root_id[sel]):
            self.by_root[int(rid)] = sel[runs.root_id[sel] == rid]
        self.bmin: Bitvector | None = None
        self.sa_at_ones: np.ndarray | None = None


class PeriodicIndex:
    def __init__(
        self,
        text: PackedText,
        tau: int,
        scaffold: SuffixScaffold,
        rm: np.ndarray | None = None,
        keep_scaffold: bool = False,
    ):
        self.text = text
        self.tau = int(tau)
        self.runs = RunsTable(text, tau, scaffold, rm=rm)
        m_param = max(1, 2 * text.n_total // max(1, tau))
        self.minus = _SideIndex(self.runs, -1, m_param)
        self.plus = _SideIndex(self.runs, +1, m_param)
        self._classes: dict[tuple[int, int], list[int]] = {}
        self._exp_starts: dict[tuple[int, int, int, int], int] = {}
        if len(self.runs):
            self._enumerate_classes(scaffold)
            for side in (self.minus, self.plus):
                self._build_bmin(side, scaffold)
        else:
            for side in (self.minus, self.plus):
                side.bmin = Bitvector.zeros(text.n_total)
                side.sa_at_ones = np.zeros(0, dtype=np.int64)
        self.scaffold = scaffold if keep_scaffold else None

    @classmethod
    def restore(cls, text: PackedText, tau: int, runs: RunsTable,
                classes: dict, bmin_words: dict, sa_at_ones: dict):
        """Rebuild the queryable index from serialized state (no sweeps)."""
        self = cls.__new__(cls)
        self.text = text
        self.tau = int(tau)
        self.runs = runs
        m_param = max(1, 2 * text.n_total // max(1, tau))
        self.minus = _SideIndex(runs, -1, m_param)
        self.plus = _SideIndex(runs, +1, m_param)
        self._classes = classes
        self._exp_starts = {}
        for sign, side in ((-1, self.minus), (1, self.plus)):
            side.bmin = Bitvector(text.n_total, bmin_words[sign])
            side.sa_at_ones = np.asarray(sa_at_ones[sign], dtype=np.int64)
        self.scaffold = None
        return self

    # -- construction ----------------------------------------------------------

    def _members(self):
        """All positions of R with run ids, one numpy record batch."""
        runs = self.runs
        counts = runs.r_len
        total = int(counts.sum())
        rid = np.repeat(np.arange(len(runs)), counts)
        offs = np.arange(total) - np.repeat(
            np.concatenate([[0], np.cumsum(counts)[:-1]]), counts
        )
        pos = runs.a[rid] + offs
        head = (runs.head[rid] - offs) % runs.per[rid]
        exp = (runs.efull[rid] - pos - head) // runs.per[rid]
        return rid, pos, head, exp

    def _enumerate_classes(self, scaffold: SuffixScaffold) -> None:
        """SA block boundaries for every (head, root) class and every
        (head, root, exponent, sign) class."""
        runs = self.runs
        rid, pos, head, exp = self._members()
        isa = scaffold.isa[pos - 1]
        sign = runs.type[rid]
        root = runs.root_id[rid]
        key = (root * (self.tau + 2) + head).astype(np.int64)
        order = np.argsort(key, kind="stable")
        bounds = np.nonzero(np.diff(key[order]))[0] + 1
        for grp in np.split(order, bounds):
            r0, h0 = int(root[grp[0]]), int(head[grp[0]])
            isa_g = isa[grp]
            sign_g = sign[grp]
            lo = int(isa_g.min()) - 1
            hi = int(isa_g.max())
            if hi - lo != len(grp):
                raise ConstructionError(
                    "R(head, root) class is not a contiguous SA block"
                )
            minus_mask = sign_g == -1
            y_minus = lo + int(minus_mask.sum())
            if minus_mask.any() and int(isa_g[minus_mask].max()) != y_minus:
                raise ConstructionError("type -1 members do not precede +1")
            self._classes[(h0, r0)] = [lo, y_minus, hi]
            # exponent-class block starts, per sign
            for sgn in (-1, 1):
                sel = sign_g == (sgn)
                if not sel.any():
                    continue
                e_g = exp[grp][sel]
                i_g = isa_g[sel]
                for k in np.unique(e_g):
                    self._exp_starts[(h0, r0, int(k), sgn)] = (
                        int(i_g[e_g == k].min()) - 1
                    )

    def _emin_for(self, runs_idx: np.ndarray) -> dict[int, int]:
        """RunMinEnd per run start for one root's runs of one sign,
        via the narrow-range-max recurrence in text order."""
        runs = self.runs
        tau = self.tau
        out: dict[int, int] = {}
        if runs_idx.size == 0:
            return out
        text_order = runs_idx[np.argsort(runs.a[runs_idx])]
        p = int(runs.per[text_order[0]])
        nrm = NarrowRangeMax(p)
        l_trim = 0
        for t in text_order:
            a = int(runs.a[t])
            e = int(runs.end[t])
            efull = int(runs.efull[t])
            r = e - a - 3 * tau + 2
            l_pos = efull - a
            l_whole = nrm.query(e - efull)
            l_max = max(l_trim, l_whole)
            if l_pos <= l_max:
                out[a] = a
            else:
                out[a] = a + min(l_pos - l_max, p, r)
            l_trim = max(l_trim, efull - a - p)
            nrm.insert(e - efull, efull - a)
        return out

    def _class_size(self, h: int, rid: int, sign: int) -> int:
        cls = self._classes.get((h, rid))
        if cls is None:
            return 0
        lo, ym, hi = cls
        return (ym - lo) if sign == -1 else (hi - ym)

    def _class_start(self, h: int, rid: int, sign: int) -> int:
        lo, ym, hi = self._classes[(h, rid)]
        return lo if sign == -1 else ym

    def _build_bmin(self, side: _SideIndex, scaffold: SuffixScaffold) -> None:
        n = self.text.n_total
        buf = np.zeros((n >> 6) + 2, dtype=np.uint64)
        for rid, runs_idx in side.by_root.items():
            self._sweep_root(side, rid, runs_idx, scaffold, buf)
        side.bmin = Bitvector(n, buf)
        ones = side.bmin.ones_positions()
        side.sa_at_ones = scaffold.sa[ones - 1].astype(np.int64)

    def _sweep_root(self, side, rid, runs_idx, scaffold, buf) -> None:
        """Build B(s, H) for all heads of one root and place them."""
        runs = self.runs
        tau = self.tau
        sign = side.sign
        isa = scaffold.isa
        p = int(runs.per[runs_idx[0]])
        emin = self._emin_for(runs_idx)
        # per-run geometry
        recs = []
        for t in runs_idx:
            a = int(runs.a[t])
            e = int(runs.end[t])
            recs.append(
                {
                    "a": a,
                    "eblk": a + int(runs.r_len[t]),  # one past the block
                    "efull": int(runs.efull[t]),
                    "emin": emin[a],
                    "s_a": int(runs.head[t]),
                }
            )
        cur = self._exponent_sweep(side, rid, recs, p, isa)
        self._place(buf, side, rid, 0, cur)
        for s in range(0, p - 1):
            cur = self._head_step(side, rid, recs, p, s, isa, cur)
            self._place(buf, side, rid, s + 1, cur)

    def _place(self, buf, side, rid, s, bv) -> None:
        size = self._class_size(s, rid, side.sign)
        if bv.m != size:
            raise ConstructionError(
                f"swept block for head {s} has {bv.m} bits, class has {size}"
            )
        if size:
            or_into(buf, self._class_start(s, rid, side.sign), bv)

    def _exponent_sweep(self, side, rid, recs, p, isa) -> Bitvector:
        """B(0, H): concatenate the (0, k, H) blocks in suffix order,
        maintaining the current block through insert/delete events."""
        sign = side.sign
        segs = []  # (k_lo, k_hi, bit, run record)
        for rec in recs:
            off = rec["s_a"] % p  # first position with head 0 is a + off
            for lo_pos, hi_pos, bit in (
                (rec["a"], rec["emin"], 1),
                (rec["emin"], rec["eblk"], 0),
            ):
                first = rec["a"] + off
                if first < lo_pos:
                    first += -(-(lo_pos - first) // p) * p
                if first >= hi_pos:
                    continue
                last = first + (hi_pos - 1 - first) // p * p
                k_hi = (rec["efull"] - first) // p  # small pos -> large k
                k_lo = (rec["efull"] - last) // p
                segs.append((k_lo, k_hi, bit, rec))
        if not segs:
            return Bitvector.zeros(0)
        enters: dict[int, list] = {}
        leaves: dict[int, list] = {}
        for k_lo, k_hi, bit, rec in segs:
            first_k, last_k = (k_lo, k_hi) if sign == -1 else (k_hi, k_lo)
            enters.setdefault(first_k, []).append((bit, rec))
            leaves.setdefault(last_k, []).append((bit, rec))
        pieces = []
        cur = Bitvector.zeros(0)
        event_ks = sorted(set(enters) | set(leaves), reverse=(sign == 1))
        prev_k = None
        for k in event_ks:
            if prev_k is not None:
                gap = abs(k - prev_k) - 1
                if gap:
                    pieces.append(cur.repeat(gap))
            bstart = self._exp_starts.get((0, rid, k, sign))
            if bstart is None:
                raise ConstructionError("event targets an empty exponent class")
            inss = []
            for bit, rec in enters.get(k, []):
                x = rec["efull"] - k * p
                inss.append((int(isa[x - 1]) - bstart, bit))
            cur2 = cur
            if inss:
                inss.sort()
                self._check_increasing([i for i, _ in inss], "exponent inserts")
                cur2 = cur.insert_pairs(inss)
            pieces.append(cur2)
            # deletions apply when moving past k
            dels = []
            for bit, rec in leaves.get(k, []):
                x = rec["efull"] - k * p
                dels.append(int(isa[x - 1]) - bstart)
            if dels:
                dels.sort()
                cur2 = cur2.delete_positions(dels)
            cur = cur2
            prev_k = k
        out = pieces[0]
        for piece in pieces[1:]:
            out = out.concat(piece)
        return out

    @staticmethod
    def _check_increasing(vals, what) -> None:
        for x, y in zip(vals, vals[1:]):
            if y <= x:
                raise ConstructionError(f"{what} collide at rank {y}")

    def _head_step(self, side, rid, recs, p, s, isa, b_in) -> Bitvector:
        """B(s+1, H) = Insert(Delete(B(s, H), D), I) per the head-sweep
        events."""
        sign = side.sign
        x_in = (
            self._class_start(s, rid, sign)
            if self._class_size(s, rid, sign)
            else None
        )
        x_out = (
            self._class_start(s + 1, rid, sign)
            if self._class_size(s + 1, rid, sign)
            else None
        )
        dels, inss = [], []

        def head_of(rec, x):
            return (rec["s_a"] - (x - rec["a"])) % p

        for rec in recs:
            a, eblk, em = rec["a"], rec["eblk"], rec["emin"]
            if a < em and head_of(rec, a) == s:
                dels.append(int(isa[a - 1]) - x_in)
            if em < eblk and head_of(rec, em) == s:
                dels.append(int(isa[em - 1]) - x_in)
            if a < em and head_of(rec, em - 1) == s + 1:
                inss.append((int(isa[em - 2]) - x_out, 1))
            if em < eblk and head_of(rec, eblk - 1) == s + 1:
                inss.append((int(isa[eblk - 2]) - x_out, 0))
        dels.sort()
        inss.sort()
        self._check_increasing([i for i, _ in inss], "head-sweep inserts")
        out = b_in.delete_positions(dels) if dels else b_in
        if inss:
            out = out.insert_pairs(inss)
        return out

    # -- queries ------------------------------------------------------------------

    def _side(self, sign: int) -> _SideIndex:
        return self.minus if sign == -1 else self.plus

    def _pattern_suffix_range(self, side: _SideIndex, start=None, end=None,
                              pat: PackedText | None = None, skip: int = 0):
        """(b, e) over the side's lex-sorted runs for the query suffix,
        either a text window [start..end) or an explicit pattern suffix."""
        t = self.text
        a_pos = side.a_pos
        m = len(a_pos)
        if pat is None:
            lam = end - start

            def cmp_at(i) -> int:
                bi = int(a_pos[i])
                l = min(t.lce(bi, start), lam)
                if l >= lam:
                    return 0
                if bi + l > t.n_total:
                    return -1
                return -1 if t.sym[bi + l - 1] < t.sym[start + l - 1] else 1

        else:
            lam = pat.n_total - skip

            def cmp_at(i) -> int:
                bi = int(a_pos[i])
                l = min(t.lce_between(bi, pat, skip + 1), lam)
                if l >= lam:
                    return 0
                if bi + l > t.n_total:
                    return -1
                return -1 if t.sym[bi + l - 1] < pat.sym[skip + l] else 1

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

    def partially_periodic_window(self, j: int, length: int) -> int:
        """min Occ for a window with e(j) < j + length <= n + 1."""
        runs = self.runs
        i = runs.run_containing(j)
        sign = int(runs.type[i])
        side = self._side(sign)
        delta = int(runs.efull[i]) - j - int(runs.pow_len[i])
        b, e = self._pattern_suffix_range(side, start=j + delta, end=j + length)
        hit = side.tsrmq.query(b, e, delta)
        if hit is None:
            raise ContractError("three-sided RMQ found no occurrence")
        return int(side.a_pos[hit - 1]) - delta

    def partially_periodic_pattern(self, pat_sym, pat, p, efull_pat, sign) -> int:
        side = self._side(sign)
        pow_len = p * -(-self.tau // p)
        delta = (efull_pat - 1) - pow_len
        b, e = self._pattern_suffix_range(side, pat=pat, skip=delta)
        hit = side.tsrmq.query(b, e, delta)
        if hit is None:
            raise ContractError("three-sided RMQ found no occurrence")
        return int(side.a_pos[hit - 1]) - delta

    def fully_periodic_minocc(self, head: int, root, length: int) -> int:
        """min Occ(P, T) for a fully periodic pattern given by (head,
        root, |P|)."""
        rid = self._root_id_of(root)
        if rid is None:
            raise ContractError("pattern root does not occur in the text")
        cls = self._classes.get((head, rid))
        if cls is None:
            raise ContractError("no periodic positions with this head/root")
        lo, y_minus, y_plus = cls
        b = lo + self._count_lt(self.minus, rid, head, length)
        e = y_minus + self._count_ge(self.plus, rid, head, length)
        cands = []
        bm = self.minus.bmin
        r_b, r_e = bm.rank1(b), bm.rank1(e)
        if r_e > r_b:
            cands.append(int(self.minus.sa_at_ones[r_b]))
        bp = self.plus.bmin
        r_x, r_e2 = bp.rank1(y_minus), bp.rank1(e)
        if r_e2 > r_x:
            cands.append(int(self.plus.sa_at_ones[r_e2 - 1]))
        if not cands:
            raise ContractError("fully periodic query found no candidates")
        return min(cands)

    def _root_id_of(self, root) -> int | None:
        return self.runs.root_of.get(tuple(int(c) for c in root))

    def _count_lt(self, side, rid, head, m) -> int:
        """Members of the (head, root) class on this side with run-suffix
        length e - j < m."""
        return self._count_members(side, rid, head, m, want_lt=True)

    def _count_ge(self, side, rid, head, m) -> int:
        return self._count_members(side, rid, head, m, want_lt=False)

    def _count_members(self, side, rid, head, m, want_lt: bool) -> int:
        runs = self.runs
        total = 0
        for t in side.by_root.get(rid, ()):
            a = int(runs.a[t])
            e = int(runs.end[t])
            p = int(runs.per[t])
            blk_hi = a + int(runs.r_len[t]) - 1  # last member
            off = (int(runs.head[t]) - head) % p
            first = a + off
            if first > blk_hi:
                continue
            last = first + (blk_hi - first) // p * p
            # t(j) = e - j < m  <=>  j > e - m
            if want_lt:
                lo_bound = e - m + 1
                if lo_bound > first:
                    first = first + -(-(lo_bound - first) // p) * p
            else:
                hi_bound = e - m
                if hi_bound < last:
                    last = first + (hi_bound - first) // p * p if hi_bound >= first else first - p
            if first <= last:
                total += (last - first) // p + 1
        return total

    def window_minocc(self, j: int, length: int) -> int:
        """Dispatch a periodic window: partially vs fully periodic."""
        runs = self.runs
        i = runs.run_containing(j)
        if int(runs.end[i]) < j + length:
            return self.partially_periodic_window(j, length)
        head = runs.head_at(i, j)
        root = runs.roots[int(runs.root_id[i])]
        return self.fully_periodic_minocc(head, root, length)
