"""Greedy LZ77 factorization, both variants, with decoding and dumps.

Run:  python3 demos/01_factorization.py
"""

import io

import numpy as np

from sublz import decode, factorize, pack_text
from sublz.lz77 import phrase_count_bound_check, write_binary, write_tsv

# A small text over the alphabet {a=0, b=1}.  The packer appends a unique
# sentinel symbol (extending the alphabet by one), which internal
# structures rely on; factorization positions always refer to the
# original text.
raw = "abababaabababab"
sym = np.array([ord(c) - ord("a") for c in raw])
text = pack_text(sym, sigma=2, add_sentinel=True)
print(f"text: {raw!r}  (n={text.n}, sigma={text.sigma} after sentinel)")

# The overlapping variant lets a phrase copy from a source that runs into
# the phrase itself; "abababa..." compresses into one long self-copy.
for variant in ("overlap", "nonoverlap"):
    fact = factorize(text, variant)
    pretty = [
        f"lit({p.symbol})" if hasattr(p, "symbol") else f"copy(len={p.length}, src={p.src})"
        for p in fact
    ]
    print(f"\n{variant}: z = {fact.z}")
    for p in pretty:
        print("   ", p)
    assert np.array_equal(decode(fact, 2), sym)
    print("    decode round-trips: OK")
    rep = phrase_count_bound_check(fact, 2)
    print(f"    z * log_sigma(n) / n = {rep['ratio']:.2f} (informational)")

# Phrase dumps: a TSV form and a byte-stable binary container.
fact = factorize(text, "overlap")
tsv = io.StringIO()
write_tsv(fact, tsv)
print("\nTSV dump:")
print(tsv.getvalue().rstrip())
blob = io.BytesIO()
write_binary(fact, blob)
print(f"binary dump: {len(blob.getvalue())} bytes, magic {blob.getvalue()[:7]!r}")
