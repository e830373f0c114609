import numpy as np
import pytest

from sublz.errors import ParameterError, QueryError
from sublz.rmq import PackedRmqIndex, RmqIndex, build_packed_rmq, build_rmq


def scan_argmin(a, b, e):
    """Leftmost 1-based argmin over (b..e]."""
    best = None
    for i in range(b + 1, e + 1):
        if best is None or a[i - 1] < a[best - 1]:
            best = i
    return best


class TestRmqIndex:
    def test_examples(self):
        assert build_rmq([3, 1, 2]).query(0, 3) == 2
        assert build_rmq([5]).query(0, 1) == 1
        assert build_rmq([2, 2, 2]).query(0, 3) == 1  # leftmost tie
        assert build_rmq([4, 4, 1, 9]).query(1, 4) == 3
        a = build_rmq([7, 3, 5])
        assert a.query(1, 2) == 2  # singleton

    def test_empty_range_errors(self):
        r = build_rmq([1, 2, 3])
        with pytest.raises(QueryError):
            r.query(2, 2)
        with pytest.raises(ParameterError):
            r.query(2, 5)

    def test_random_vs_scan(self):
        rng = np.random.default_rng(20)
        for m in (1, 2, 31, 32, 33, 100, 1000, 4096):
            for sigma in (2, 4, 16, 1 << 30):
                a = rng.integers(0, sigma, size=m)
                idx = build_rmq(a)
                for _ in range(300):
                    b = int(rng.integers(0, m))
                    e = int(rng.integers(b + 1, m + 1))
                    assert idx.query(b, e) == scan_argmin(a, b, e)


class TestPackedRmq:
    def test_alternating_example(self):
        a = np.tile([1, 0], 50)
        idx = build_packed_rmq(a, sigma=2)
        assert idx.query(0, 100) == 2

    def test_inside_one_block(self):
        idx = build_packed_rmq([3, 1, 2], sigma=4, tau_blk=4)
        assert idx.query(0, 3) == 2

    def test_empty_index(self):
        idx = build_packed_rmq([], sigma=2)
        with pytest.raises((ParameterError, QueryError)):
            idx.query(0, 1)

    def test_random_vs_scan(self):
        rng = np.random.default_rng(21)
        for sigma in (2, 4, 16):
            for m in (1, 5, 63, 64, 200, 2048):
                a = rng.integers(0, sigma, size=m)
                idx = build_packed_rmq(a, sigma=sigma)
                for _ in range(200):
                    b = int(rng.integers(0, m))
                    e = int(rng.integers(b + 1, m + 1))
                    assert idx.query(b, e) == scan_argmin(a, b, e)

    def test_reads_at_most_three(self):
        rng = np.random.default_rng(22)
        a = rng.integers(0, 4, size=4096)
        idx = build_packed_rmq(a, sigma=4)
        for _ in range(2000):
            b = int(rng.integers(0, 4096))
            e = int(rng.integers(b + 1, 4097))
            before = idx.reads
            idx.query(b, e)
            assert idx.reads - before <= 3

    def test_leftmost_ties(self):
        a = np.zeros(257, dtype=np.int64)
        idx = build_packed_rmq(a, sigma=2)
        assert idx.query(0, 257) == 1
        assert idx.query(100, 257) == 101
