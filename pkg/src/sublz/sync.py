"""Tau-synchronizing sets: construction via a deterministic minimizer rule,
contract verification (density and consistency are checked, not assumed),
successor queries, and lexicographic ordering of the sampled positions.

For each window start k, an identifier id(k) ranks the tau-symbol window
T[k..k+tau) lexicographically, with id(k) = infinity when that window has
period <= tau/3.  A position j joins the set iff the minimum identifier
over k in [j..j+tau] is finite and attained at one of the two endpoints.
Membership is therefore a function of T[j..j+2tau), which yields the
2tau-window consistency contract directly.
"""

from __future__ import annotations

import numpy as np

from .errors import ConstructionError, ContractError, ParameterError
from .text import PackedText, SuffixScaffold

_INF = np.iinfo(np.int64).max


def window_has_period(sym: np.ndarray, length: int, p: int) -> np.ndarray:
    """Boolean array over starts 0..n-length: does T[k..k+length) have
    period p?"""
    n = len(sym)
    starts = n - length + 1
    if starts <= 0:
        return np.zeros(0, dtype=bool)
    if p >= length:
        return np.ones(starts, dtype=bool)
    eq = (sym[: n - p] == sym[p:]).astype(np.int64)
    cum = np.concatenate([[0], np.cumsum(eq)])
    need = length - p
    return cum[need : need + starts] - cum[:starts] == need


def periodic_window_mask(sym: np.ndarray, length: int, tau: int) -> np.ndarray:
    """Starts whose length-window has some period p with 3p <= tau."""
    starts = len(sym) - length + 1
    if starts <= 0:
        return np.zeros(0, dtype=bool)
    out = np.zeros(starts, dtype=bool)
    for p in range(1, tau // 3 + 1):
        out |= window_has_period(sym, length, p)
    return out


def window_ranks(sym: np.ndarray, length: int, sigma: int) -> np.ndarray:
    """Lexicographic rank (ties equal) of each length-window."""
    n = len(sym)
    starts = n - length + 1
    bits = max(1, int(sigma - 1).bit_length())
    if length * bits <= 62:
        codes = np.zeros(starts, dtype=np.int64)
        for d in range(length):
            codes = codes * sigma + sym[d : d + starts]
        return np.unique(codes, return_inverse=True)[1].astype(np.int64)
    mat = np.stack([sym[d : d + starts] for d in range(length)], axis=1)
    order = np.lexsort(mat.T[::-1])
    bump = (mat[order[1:]] != mat[order[:-1]]).any(axis=1)
    rr = np.zeros(starts, dtype=np.int64)
    rr[1:] = np.cumsum(bump)
    out = np.empty(starts, dtype=np.int64)
    out[order] = rr
    return out


def r_mask(text: PackedText, tau: int) -> np.ndarray:
    """Boolean mask over j in [1..n_total-3tau+2]: j in R(tau, T)."""
    return periodic_window_mask(text.sym, 3 * tau - 1, tau)


def in_r(text: PackedText, tau: int, j: int) -> bool:
    mask = r_mask(text, tau)
    if not 1 <= j <= len(mask):
        raise ParameterError(f"position {j} out of [1..{len(mask)}]")
    return bool(mask[j - 1])


class SyncSet:
    """Sampled positions with the density/consistency contract."""

    def __init__(self, tau: int, positions: np.ndarray, n_total: int):
        self.tau = int(tau)
        self.positions = np.asarray(positions, dtype=np.int64)
        self.n_total = int(n_total)
        self.member = np.zeros(n_total + 2, dtype=bool)
        self.member[self.positions] = True
        self._lex = None

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, j: int) -> bool:
        return 0 < j <= self.n_total and bool(self.member[j])

    def successor(self, j: int) -> int:
        """min{j' in S : j' >= j}; caller must be in the density domain."""
        k = int(np.searchsorted(self.positions, j, side="left"))
        if k >= len(self.positions):
            raise ContractError(f"no sampled position at or after {j}")
        return int(self.positions[k])

    def lex_sorted(self, scaffold: SuffixScaffold) -> np.ndarray:
        """Positions ordered by the rank of their suffixes."""
        if self._lex is None:
            order = np.argsort(scaffold.isa[self.positions - 1], kind="stable")
            self._lex = self.positions[order]
        return self._lex


def build_sync_set(
    text: PackedText,
    scaffold: SuffixScaffold | None,
    tau: int,
    verify: bool = True,
) -> SyncSet:
    n = text.n_total
    if tau < 1 or 3 * tau - 1 > n:
        raise ParameterError(f"tau={tau} violates 1 <= tau, 3tau-1 <= n={n}")
    sym = text.sym
    ids = window_ranks(sym, tau, text.sigma)
    periodic = periodic_window_mask(sym, tau, tau)
    ids = np.where(periodic, _INF, ids)
    # windows of tau+1 consecutive identifiers
    m = n - 2 * tau + 1  # membership domain size
    view = np.lib.stride_tricks.sliding_window_view(ids, tau + 1)[:m]
    wmin = view.min(axis=1)
    member = (wmin < _INF) & ((wmin == ids[:m]) | (wmin == ids[tau : tau + m]))
    positions = np.nonzero(member)[0].astype(np.int64) + 1
    s = SyncSet(tau, positions, n)
    if verify:
        why = verify_sync_contract(text, s)
        if why:
            raise ConstructionError(f"synchronizing-set contract failed: {why}")
    return s


def verify_sync_contract(text: PackedText, s: SyncSet) -> str | None:
    """Definitional density + consistency scan; returns a reason or None."""
    tau, n = s.tau, text.n_total
    rm = r_mask(text, tau)
    dom = n - 3 * tau + 2
    if dom >= 1:
        memb = s.member[1 : n + 1].astype(np.int64)
        cum = np.concatenate([[0], np.cumsum(memb)])
        hit = cum[tau:] - cum[:-tau]  # ones in [j..j+tau) for 0-based j-1
        bad = np.nonzero((~rm[:dom]) & (hit[:dom] == 0))[0]
        if bad.size:
            return f"density fails at position {int(bad[0]) + 1}"
        if len(s) == 0 or int(s.positions.max()) < dom:
            return "max S < n - 3tau + 2"
    # consistency: equal 2tau-windows agree on membership
    m = n - 2 * tau + 1
    if m >= 1:
        ranks = window_ranks(text.sym, 2 * tau, text.sigma)[:m]
        memb = s.member[1 : m + 1]
        order = np.argsort(ranks, kind="stable")
        rs = ranks[order]
        ms = memb[order]
        same_group = rs[1:] == rs[:-1]
        disagree = same_group & (ms[1:] != ms[:-1])
        if disagree.any():
            i = int(np.nonzero(disagree)[0][0])
            return (
                "consistency fails between positions "
                f"{int(order[i]) + 1} and {int(order[i + 1]) + 1}"
            )
    return None
