import numpy as np
import pytest

from sublz.errors import ConfigurationError, NotFoundError, ParameterError
from sublz.minocc.core import CoreTables
from sublz.minocc.index import build_minocc, choose_tau, load_index, save_index
from sublz.oracle import (
    lcp_table,
    oracle_minocc_all_windows,
    oracle_minocc_pattern,
)
from sublz.text import pack_text


def sym(s):
    return np.array([ord(c) - ord("a") for c in s], dtype=np.int64)


def periodic_rich(rng, n, sigma=2):
    out = []
    while sum(len(p) for p in out) < n:
        root = rng.integers(0, sigma, size=int(rng.integers(1, 4)))
        out.append(np.tile(root, int(rng.integers(1, 20))))
        out.append(rng.integers(0, sigma, size=int(rng.integers(0, 5))))
    return np.concatenate(out)[:n]


def exhaustive_check(t, idx):
    g = lcp_table(t.sym)
    for j in range(1, t.n + 1):
        want = oracle_minocc_all_windows(g, j)
        for length in range(1, t.n - j + 2):
            got = idx.window(j, length)
            assert got == want[length], (j, length, got, int(want[length]))
            assert got <= j


class TestCoreTables:
    def test_hand_examples(self):
        t = pack_text(sym("abab"), sigma=2, add_sentinel=True)
        core = CoreTables(t, 1)
        assert core.minocc_pat([0]) == 1
        assert core.minocc_pat([1]) == 2
        t2 = pack_text(sym("aaaa"), sigma=2, add_sentinel=True)
        core2 = CoreTables(t2, 2)
        assert core2.minocc_pat(sym("aa")) == 1
        assert core2.minocc_pos(2, 2) == 1
        with pytest.raises(NotFoundError):
            core2.minocc_pat(sym("ab"))

    def test_matches_naive_exhaustively(self):
        rng = np.random.default_rng(100)
        for trial in range(20):
            n = int(rng.integers(5, 300))
            s = rng.integers(0, 2, size=n)
            t = pack_text(s, sigma=2, add_sentinel=True)
            core = CoreTables(t, 2)
            for j in range(1, t.n_total + 1):
                for ln in range(1, min(3 * 2 - 2, t.n_total - j + 1) + 1):
                    got = core.minocc_pos(j, ln)
                    want = oracle_minocc_pattern(t.sym, t.sym[j - 1 : j - 1 + ln])
                    assert got == want

    def test_budget(self):
        t = pack_text(np.arange(16), sigma=16, add_sentinel=True)
        with pytest.raises(ConfigurationError):
            CoreTables(t, 2)

    def test_is_periodic_pattern(self):
        t = pack_text(sym("aaaaaaaaab"), sigma=2, add_sentinel=True)
        core = CoreTables(t, 3, with_lookup=False)
        assert core.is_periodic_pattern(sym("aaaaaaaa"))
        assert not core.is_periodic_pattern(sym("abcabcab"))


class TestChooseTau:
    def test_values(self):
        assert choose_tau(100_000, 3) == 2
        assert choose_tau(100_000, 17) is None  # 17^12 over budget
        assert choose_tau(5, 3) == 2  # 3*2-1 = 5 fits


class TestFacadeFallback:
    def test_small_text_uses_fallback(self):
        t = pack_text(np.arange(16) % 16, sigma=16, add_sentinel=True)
        idx = build_minocc(t)
        assert idx.mode == "fallback"

    def test_fallback_exhaustive(self):
        rng = np.random.default_rng(101)
        for sigma in (2, 16, 256):
            s = rng.integers(0, sigma, size=150)
            t = pack_text(s, sigma=sigma, add_sentinel=True)
            idx = build_minocc(t)
            assert idx.mode == "fallback"
            exhaustive_check(t, idx)

    def test_fallback_patterns(self):
        rng = np.random.default_rng(102)
        s = rng.integers(0, 4, size=200)
        t = pack_text(s, sigma=4, add_sentinel=True)
        idx = build_minocc(t)
        for _ in range(300):
            j = int(rng.integers(1, 200))
            ln = int(rng.integers(1, 201 - j))
            pat = s[j - 1 : j - 1 + ln]
            assert idx.pattern(pat) == oracle_minocc_pattern(t.sym, pat)
        with pytest.raises(NotFoundError):
            idx.pattern(np.full(300, 1))


class TestFacadeFull:
    def test_full_mode_default_on_large_binary(self):
        rng = np.random.default_rng(103)
        s = rng.integers(0, 2, size=3000)
        t = pack_text(s, sigma=2, add_sentinel=True)
        idx = build_minocc(t)
        assert idx.mode == "full" and idx.tau == 2

    def test_exhaustive_small_forced_full(self):
        rng = np.random.default_rng(104)
        for trial in range(8):
            n = int(rng.integers(30, 220))
            s = (
                periodic_rich(rng, n)
                if trial % 2
                else rng.integers(0, 2, size=n)
            )
            t = pack_text(s, sigma=2, add_sentinel=True)
            idx = build_minocc(t, tau=2)
            assert idx.mode == "full"
            exhaustive_check(t, idx)

    def test_exhaustive_periodic_paths_tau3(self):
        # a presentineled binary text keeps sigma = 2, so tau = 3 fits the
        # table budget and runs/B_min paths run through the facade
        from sublz.text import PackedText

        for n in (20, 60, 150):
            s = np.concatenate([np.zeros(n - 1, dtype=np.int64), [1]])
            t = PackedText(s, 2, has_sentinel=True)
            idx = build_minocc(t, tau=3)
            assert idx.mode == "full"
            assert len(idx.periodic.runs) > 0
            exhaustive_check(t, idx)

    def test_patterns_full_mode(self):
        rng = np.random.default_rng(106)
        s = periodic_rich(rng, 400)
        t = pack_text(s, sigma=2, add_sentinel=True)
        idx = build_minocc(t, tau=2)
        for _ in range(400):
            j = int(rng.integers(1, 400))
            ln = int(rng.integers(1, 401 - j))
            pat = s[j - 1 : j - 1 + ln]
            assert idx.pattern(pat) == oracle_minocc_pattern(t.sym, pat)
        for _ in range(100):
            pat = rng.integers(0, 2, size=int(rng.integers(1, 30)))
            want = oracle_minocc_pattern(t.sym, pat)
            if want is None:
                with pytest.raises(NotFoundError):
                    idx.pattern(pat)
            else:
                assert idx.pattern(pat) == want

    def test_unary_text(self):
        s = np.zeros(120, dtype=np.int64)
        from sublz.text import PackedText

        t = PackedText(np.concatenate([s, [1]]), 2, has_sentinel=True)
        idx = build_minocc(t, tau=3)
        assert idx.mode == "full"
        exhaustive_check(t, idx)


class TestSerialization:
    def test_roundtrip_full(self, tmp_path):
        rng = np.random.default_rng(107)
        s = periodic_rich(rng, 500)
        t = pack_text(s, sigma=2, add_sentinel=True)
        idx = build_minocc(t, tau=2)
        path = tmp_path / "idx.slzix"
        save_index(idx, path)
        idx2 = load_index(path)
        assert idx2.mode == idx.mode and idx2.tau == idx.tau
        for _ in range(500):
            j = int(rng.integers(1, 500))
            ln = int(rng.integers(1, 501 - j))
            assert idx.window(j, ln) == idx2.window(j, ln)
            pat = s[j - 1 : j - 1 + ln]
            assert idx.pattern(pat) == idx2.pattern(pat)

    def test_roundtrip_fallback(self, tmp_path):
        rng = np.random.default_rng(108)
        s = rng.integers(0, 16, size=120)
        t = pack_text(s, sigma=16, add_sentinel=True)
        idx = build_minocc(t)
        path = tmp_path / "idx.slzix"
        save_index(idx, path)
        idx2 = load_index(path)
        for _ in range(200):
            j = int(rng.integers(1, 120))
            ln = int(rng.integers(1, 121 - j))
            assert idx.window(j, ln) == idx2.window(j, ln)
