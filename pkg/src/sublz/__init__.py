"""LZ77 factorization toolkit built on a leftmost-occurrence index:
prefix range-minimum queries over synchronizing-set samples, periodic-run
machinery with the B_min bitvector, LPF/LPnF random access, and greedy
parsing, all verifiable against brute-force oracles."""

from .bitvec import Bitvector
from .lpf import LpfIndex, build_lpf
from .lz77 import Copy, Factorization, Literal, decode, factorize
from .minocc.index import MinOccIndex, build_minocc, load_index, save_index
from .text import PackedText, SuffixScaffold, build_scaffold, pack_text

__all__ = [
    "Bitvector",
    "Copy",
    "Factorization",
    "Literal",
    "LpfIndex",
    "MinOccIndex",
    "PackedText",
    "SuffixScaffold",
    "build_lpf",
    "build_minocc",
    "build_scaffold",
    "decode",
    "factorize",
    "load_index",
    "pack_text",
    "save_index",
]
