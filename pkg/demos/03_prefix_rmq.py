"""Prefix range-minimum queries over (values, fixed-length strings).

Run:  python3 demos/03_prefix_rmq.py
"""

import numpy as np

from sublz.prefix_rmq import (
    PrefixRankSelect,
    build_prefix_rmq,
    build_shallow,
    build_simple,
)

# A prefix RMQ instance is a pair of equal-length sequences: values A and
# strings S.  A query (b, e, X) asks for the leftmost argmin of A over
# positions in (b..e] whose string starts with X.
a = np.array([40, 10, 30, 20, 50, 15])
s = np.array(
    [
        [0, 1, 1],  # abb
        [1, 0, 0],  # baa
        [0, 1, 0],  # aba
        [0, 1, 1],  # abb
        [1, 1, 0],  # bba
        [0, 0, 1],  # aab
    ]
)
idx = build_prefix_rmq(a, s, sigma=2)
print("A:", list(a))
print("S:", ["".join("ab"[c] for c in row) for row in s])
print("query (0, 6], X='ab'  ->", idx.query(0, 6, [0, 1]), "(A[3]=30 vs A[1]=40, A[4]=20: picks 4)")
print("query (0, 3], X='ab'  ->", idx.query(0, 3, [0, 1]))
print("query (1, 2], X='b'   ->", idx.query(1, 2, [1]))
print("query (0, 6], X=''    ->", idx.query(0, 6, []), "(plain RMQ)")
print("query (4, 5], X='aa'  ->", idx.query(4, 5, [0, 0]), "(no match: None)")

# The underlying prefix rank/select structure is a bit-partition
# hierarchy over the string bits; rank counts prefix matches among the
# first j strings, select finds the r-th match.
prs = PrefixRankSelect(s, sigma=2)
print("\nprefix_rank(6, 'ab') =", prs.prefix_rank(6, [0, 1]))
print("prefix_select(2, 'ab') =", prs.prefix_select(2, [0, 1]))

# Three cooperating implementations answer the same contract: the simple
# per-prefix components, the blocked shallow layout, and the layered
# structure used by the text index.  On any input they agree.
rng = np.random.default_rng(3)
m, ell, sigma = 4000, 4, 2
av = rng.integers(0, m, size=m)
sv = rng.integers(0, sigma, size=(m, ell))
sim = build_simple(av, sv, sigma)
sha = build_shallow(av, sv, sigma)
lay = build_prefix_rmq(av, sv, sigma)
agree = True
for _ in range(2000):
    b = int(rng.integers(0, m))
    e = int(rng.integers(b, m + 1))
    x = list(rng.integers(0, sigma, size=int(rng.integers(0, ell + 1))))
    agree &= sim.query(b, e, x) == sha.query(b, e, x) == lay.query(b, e, x)
print(f"\nsimple == shallow == layered on 2000 random queries: {agree}")
