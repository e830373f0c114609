import numpy as np
import pytest

from sublz.errors import ParameterError
from sublz.range_count import (
    OfflineCountEngine,
    count_three_sided,
    count_two_sided,
    encode_padded,
)


def scan_two(a, pos, val):
    return sum(1 for j in range(pos) if a[j] >= val)


class TestEncodePadded:
    def test_examples(self):
        assert encode_padded([1], 2, 2) == 0b1001
        assert encode_padded([], 2, 2) == 0
        assert encode_padded([0], 2, 2) == 0b0001
        assert encode_padded([0, 0], 2, 2) == 0b0011
        with pytest.raises(ParameterError):
            encode_padded([0, 1, 0], 2, 2)

    def test_order_preserving(self):
        # X < X' lexicographically (prefix order included) => code < code'
        import itertools

        m, sigma = 3, 3
        strs = []
        for ln in range(0, m + 1):
            strs.extend(itertools.product(range(sigma), repeat=ln))
        strs.sort()
        codes = [encode_padded(s, m, sigma) for s in strs]
        assert codes == sorted(codes)
        assert len(set(codes)) == len(codes)


class TestTwoSided:
    def test_examples(self):
        a = [3, 0, 2, 1]
        assert count_two_sided(a, [(3, 2)])[0] == 2
        assert count_two_sided(a, [(0, 7)])[0] == 0
        assert count_two_sided(a, [(4, 0)])[0] == 4

    def test_random_batches(self):
        rng = np.random.default_rng(40)
        for m in (1, 7, 100, 1000):
            a = rng.integers(0, 10, size=m)  # sum about 5m to stress levels
            a[rng.random(m) < 0.05] += 300  # sprinkle multi-level values
            queries = [
                (int(rng.integers(0, m + 1)), int(rng.integers(0, 400)))
                for _ in range(400)
            ]
            got = count_two_sided(a, queries)
            for q, g in zip(queries, got):
                assert g == scan_two(a, q[0], q[1])

    def test_level_reconstruction_exhaustive(self):
        rng = np.random.default_rng(41)
        a = rng.integers(0, 130, size=256)
        eng = OfflineCountEngine(a)
        for v in range(0, int(a.max()) + 1):
            k, delta = divmod(v, 64)
            want = set(np.nonzero(a >= v)[0] + 1)
            if k >= len(eng.levels):
                assert not want
                continue
            p = eng.levels[k]
            bv = eng.level_bv[k]
            mk = p.size
            got = {
                int(p[i])
                for i in range(mk)
                if bv.get(delta * mk + i + 1)
            }
            assert got == want


class TestThreeSided:
    def test_examples(self):
        a = [3, 0, 2, 1]
        assert count_three_sided(a, [(1, 4, 1)])[0] == 2
        assert count_three_sided(a, [(2, 2, 0)])[0] == 0
        assert count_three_sided(a, [(0, 4, 0)])[0] == 4

    def test_random(self):
        rng = np.random.default_rng(42)
        m = 500
        a = rng.integers(0, 8, size=m)
        qs = []
        for _ in range(500):
            b, e = sorted(rng.integers(0, m + 1, size=2))
            qs.append((int(b), int(e), int(rng.integers(0, 10))))
        got = count_three_sided(a, qs)
        for (b, e, v), g in zip(qs, got):
            assert g == sum(1 for j in range(b, e) if a[j] >= v)
