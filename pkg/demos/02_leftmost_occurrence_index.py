"""The leftmost-occurrence index: window and pattern queries, dispatch,
and serialization.

Run:  python3 demos/02_leftmost_occurrence_index.py
"""

import tempfile

import numpy as np

from sublz import build_minocc, load_index, pack_text, save_index

rng = np.random.default_rng(1)
sym = rng.integers(0, 2, size=30_000)
text = pack_text(sym, sigma=2, add_sentinel=True)

# The default build picks tau from the alphabet/length regime.  Binary
# texts of this size build the full index: core lookup tables for short
# patterns, a synchronizing-set + prefix-RMQ part for nonperiodic
# queries, and a runs + B_min part for periodic ones.
index = build_minocc(text)
print(f"mode={index.mode}, tau={index.tau}")
print(f"synchronizing samples: {len(index.sync)}")
print(f"periodic runs: {len(index.periodic.runs)}")

# A window query names a substring by (position, length) and returns the
# leftmost place the same substring occurs.
j, ln = 20_000, 12
occ = index.window(j, ln)
print(f"\nT[{j}..{j + ln}) first occurs at {occ}")
assert occ <= j
assert np.array_equal(sym[occ - 1 : occ - 1 + ln], sym[j - 1 : j - 1 + ln])

# Explicit patterns work the same way; absent patterns raise.
pat = sym[j - 1 : j - 1 + ln]
print(f"pattern query agrees: {index.pattern(pat) == occ}")
try:
    index.pattern(np.ones(200, dtype=np.int64))
except KeyError as exc:
    print(f"absent pattern raises: {exc}")

# Indexes serialize to a versioned container; loading reproduces the
# same answers without re-running construction sweeps.
with tempfile.NamedTemporaryFile(suffix=".slzix") as fh:
    save_index(index, fh.name)
    again = load_index(fh.name)
    checks = []
    for _ in range(200):
        q = int(rng.integers(1, text.n))
        l = int(rng.integers(1, text.n - q + 2))
        checks.append(index.window(q, l) == again.window(q, l))
    print(f"\nsave/load replay of 200 queries: {'OK' if all(checks) else 'BROKEN'}")

# Small or wide-alphabet inputs degrade to a suffix-array fallback
# answerer with the same query contract.
tiny = build_minocc(pack_text([3, 1, 2, 1], sigma=4, add_sentinel=True))
print(f"\nn=4 text builds in mode: {tiny.mode}")
print(f"tiny.window(4, 1) = {tiny.window(4, 1)}")
