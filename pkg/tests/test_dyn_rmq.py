import numpy as np
import pytest

from sublz.dyn_rmq import NarrowRangeMax, SmallPredSet
from sublz.errors import ContractError


class TestSmallPredSet:
    def test_examples(self):
        s = SmallPredSet(16)
        s.insert(3, 7)
        assert s.predecessor(5) == (3, 7)
        assert s.successor(4) == (16, 0)
        s.delete(3)
        assert s.predecessor(3) == (-1, 0)

    def test_contract_errors(self):
        s = SmallPredSet(8)
        s.insert(2, 1)
        with pytest.raises(ContractError):
            s.insert(2, 5)
        with pytest.raises(ContractError):
            s.delete(3)

    def test_wide_universe(self):
        s = SmallPredSet(200)  # beyond one machine word
        s.insert(130, 9)
        s.insert(64, 4)
        assert s.predecessor(199) == (130, 9)
        assert s.successor(65) == (130, 9)
        assert s.successor(0) == (64, 4)

    def test_random_vs_dict(self):
        rng = np.random.default_rng(30)
        h = 64
        s = SmallPredSet(h)
        ref = {}
        for _ in range(5000):
            op = rng.integers(0, 4)
            k = int(rng.integers(0, h))
            if op == 0 and k not in ref:
                v = int(rng.integers(1, 100))
                s.insert(k, v)
                ref[k] = v
            elif op == 1 and k in ref:
                s.delete(k)
                del ref[k]
            elif op == 2:
                keys = [x for x in ref if x <= k]
                want = (max(keys), ref[max(keys)]) if keys else (-1, 0)
                assert s.predecessor(k) == want
            else:
                keys = [x for x in ref if x >= k]
                want = (min(keys), ref[min(keys)]) if keys else (h, 0)
                assert s.successor(k) == want


class TestNarrowRangeMax:
    def test_examples(self):
        m = NarrowRangeMax(16)
        m.insert(3, 10)
        m.insert(5, 7)
        assert m.query(4) == 7
        assert m.query(6) == 0
        m.insert(5, 12)
        assert m.query(4) == 12
        assert 3 not in m._set  # (3,10) pruned by (5,12)

    def test_random_vs_list_oracle(self):
        rng = np.random.default_rng(31)
        for h in (4, 17, 64):
            m = NarrowRangeMax(h)
            pairs = []
            for _ in range(4000):
                if rng.random() < 0.5:
                    x = int(rng.integers(0, h))
                    y = int(rng.integers(1, 1000))
                    m.insert(x, y)
                    pairs.append((x, y))
                else:
                    q = int(rng.integers(0, h))
                    want = max([y for x, y in pairs if x >= q], default=0)
                    assert m.query(q) == want
            assert m.pruned <= m.inserted
