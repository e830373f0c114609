import numpy as np

from sublz.oracle import (
    SaWindowOracle,
    lcp_table,
    oracle_emin,
    oracle_lpf,
    oracle_minocc_all_windows,
    oracle_minocc_pattern,
    oracle_minocc_window,
    oracle_parse,
    oracle_rmin,
    oracle_runs,
)
from sublz.text import build_scaffold, pack_text


def sym(s):
    return np.array([ord(c) - ord("a") for c in s], dtype=np.int64)


class TestLcpTable:
    def test_against_python(self):
        rng = np.random.default_rng(80)
        a = rng.integers(0, 3, size=120)
        g = lcp_table(a)
        for i in range(120):
            for j in range(120):
                k = 0
                while i + k < 120 and j + k < 120 and a[i + k] == a[j + k]:
                    k += 1
                assert g[i, j] == k


class TestMinOcc:
    def test_pattern(self):
        a = sym("abab")
        assert oracle_minocc_pattern(a, sym("ab")) == 1
        assert oracle_minocc_pattern(a, sym("ba")) == 2
        assert oracle_minocc_pattern(a, sym("bb")) is None

    def test_window_and_all_windows(self):
        a = sym("abab")
        g = lcp_table(a)
        assert oracle_minocc_window(g, 3, 2) == 1
        allw = oracle_minocc_all_windows(g, 3)
        assert allw[1] == 1 and allw[2] == 1
        assert oracle_minocc_window(g, 1, 4) == 1


class TestLpfParse:
    def test_hand_examples(self):
        lens, srcs = oracle_lpf(sym("abab"))
        assert list(lens) == [0, 0, 2, 1]
        assert list(srcs) == [0, 1, 1, 2]
        lens_no, _ = oracle_lpf(sym("aaaa"), "nonoverlap")
        assert list(lens_no) == [0, 1, 2, 1]
        lens_ov, _ = oracle_lpf(sym("aaaa"))
        assert list(lens_ov) == [0, 3, 2, 1]

    def test_parse_examples(self):
        assert oracle_parse(sym("aaaa")) == [(0, 0), (3, 1)]
        assert oracle_parse(sym("aaaa"), "nonoverlap") == [(0, 0), (1, 1), (2, 1)]
        assert oracle_parse(sym("abab")) == [(0, 0), (0, 1), (2, 1)]
        assert oracle_parse(sym("abab"), "nonoverlap") == [(0, 0), (0, 1), (2, 1)]

    def test_parse_consistent_with_lpf(self):
        rng = np.random.default_rng(81)
        for _ in range(20):
            a = rng.integers(0, 3, size=int(rng.integers(1, 120)))
            for variant in ("overlap", "nonoverlap"):
                lens, srcs = oracle_lpf(a, variant)
                j = 1
                for ln, src in oracle_parse(a, variant):
                    if ln == 0:
                        assert lens[j - 1] == 0 and src == a[j - 1]
                        j += 1
                    else:
                        assert lens[j - 1] == ln and srcs[j - 1] == src
                        j += ln


class TestRuns:
    def test_single_run_plus(self):
        t = pack_text(sym("aaaaaaaab"), sigma=2, add_sentinel=True)
        runs = oracle_runs(t.sym, 3)
        assert len(runs) == 1
        r = runs[0]
        assert r["a"] == 1 and r["end"] == 9 and r["root"] == (0,)
        assert r["head"] == 0 and r["exp"] == 8 and r["type"] == +1

    def test_single_run_minus(self):
        t = pack_text(sym("bbbbbbbba"), sigma=2, add_sentinel=True)
        runs = oracle_runs(t.sym, 3)
        assert len(runs) == 1
        assert runs[0]["type"] == -1

    def test_no_runs(self):
        t = pack_text(sym("abcabcab"), sigma=3, add_sentinel=True)
        assert oracle_runs(t.sym, 3) == []  # per 3 > tau/3

    def test_rmin_single_run(self):
        t = pack_text(sym("aaaaaaaab"), sigma=2, add_sentinel=True)
        rm = oracle_rmin(t.sym, 3, +1)
        em = oracle_emin(t.sym, 3, +1)
        # single run: RMin is a prefix of length min(p, r)
        assert em[1] - 1 == min(1, 9 - 1 - 3 * 3 + 2)
        assert rm == {1}


class TestSaOracle:
    def test_matches_table_oracle(self):
        rng = np.random.default_rng(82)
        a = rng.integers(0, 2, size=400)
        t = pack_text(a, sigma=2, add_sentinel=True)
        sc = build_scaffold(t)
        sao = SaWindowOracle(t, sc)
        g = lcp_table(t.sym)
        lens_ov, _ = oracle_lpf(a)
        lens_no, _ = oracle_lpf(a, "nonoverlap")
        for _ in range(300):
            j = int(rng.integers(1, 401))
            ln = int(rng.integers(1, 401 - j + 1))
            assert sao.minocc(j, ln) == oracle_minocc_window(g, j, ln)
            assert sao.lpf_at(j) == lens_ov[j - 1]
            assert sao.lpf_at(j, "nonoverlap") == lens_no[j - 1]
