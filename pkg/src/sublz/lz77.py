"""Greedy LZ77 factorization (overlapping and non-overlapping) driven by
the LPF/LPnF indexes, plus decoding and the phrase dump formats.

Phrases are ``Literal(symbol)`` for first occurrences of a letter and
``Copy(length, src)`` otherwise, with ``src`` the leftmost earlier
occurrence.  The sentinel never enters a phrase.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, ParameterError
from .lpf import LpfIndex, build_lpf
from .minocc.index import build_minocc
from .oracle import oracle_parse
from .text import PackedText

BIN_MAGIC = b"SLZ77v1"


@dataclass(frozen=True)
class Literal:
    symbol: int


@dataclass(frozen=True)
class Copy:
    length: int
    src: int


@dataclass
class Factorization:
    variant: str
    n: int
    phrases: list

    @property
    def z(self) -> int:
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)


def parse_with_lpf(lpf: LpfIndex) -> Factorization:
    """Greedy parse reading phrase lengths off the LPF index."""
    n = lpf.n
    phrases = []
    j = 1
    while j <= n:
        length, src = lpf.at(j)
        if length == 0:
            phrases.append(Literal(int(src)))
            j += 1
        else:
            phrases.append(Copy(int(length), int(src)))
            j += length
    return Factorization(lpf.variant, n, phrases)


def factorize(
    text: PackedText,
    variant: str = "overlap",
    engine: str = "indexed",
    lpf: LpfIndex | None = None,
    tau: int | None = None,
) -> Factorization:
    """Greedy left-to-right factorization of the original text.

    ``engine="indexed"`` goes through the leftmost-occurrence index and
    the LPF sampling; ``engine="oracle"`` runs the independent naive
    parser.
    """
    if engine == "oracle":
        sym = text.sym[: text.n]
        phrases = [
            Literal(s) if ln == 0 else Copy(ln, s)
            for ln, s in oracle_parse(sym, variant)
        ]
        return Factorization(variant, text.n, phrases)
    if engine != "indexed":
        raise ParameterError("engine must be 'indexed' or 'oracle'")
    if lpf is None:
        index = build_minocc(text, tau=tau)
        lpf = build_lpf(index, variant)
    elif lpf.variant != variant:
        raise ParameterError("LPF index variant does not match")
    return parse_with_lpf(lpf)


def decode(f: Factorization, sigma: int | None = None) -> np.ndarray:
    """Reconstruct the symbol sequence (overlapping copies resolve
    left to right)."""
    out = np.zeros(f.n, dtype=np.int64)
    pos = 0
    for ph in f.phrases:
        if isinstance(ph, Literal):
            if sigma is not None and not 0 <= ph.symbol < sigma:
                raise FormatError("literal outside the alphabet")
            out[pos] = ph.symbol
            pos += 1
        else:
            if ph.length < 1 or ph.src < 1 or ph.src > pos:
                raise FormatError("copy phrase violates its invariants")
            s = ph.src - 1
            for d in range(ph.length):
                out[pos + d] = out[s + d]
            pos += ph.length
    if pos != f.n:
        raise FormatError("phrase lengths do not sum to n")
    return out


def check_phrases(f: Factorization) -> None:
    """Structural invariants: lengths sum to n, sources precede their
    phrase, the non-overlapping variant never self-overlaps, and greedy
    maximality holds per the parse construction."""
    pos = 1
    for ph in f.phrases:
        if isinstance(ph, Copy):
            if ph.src >= pos:
                raise FormatError("copy source does not precede the phrase")
            if f.variant == "nonoverlap" and ph.src + ph.length > pos:
                raise FormatError("non-overlapping phrase overlaps itself")
            pos += ph.length
        else:
            pos += 1
    if pos != f.n + 1:
        raise FormatError("phrase lengths do not sum to n")


def phrase_count_bound_check(f: Factorization, sigma: int) -> dict:
    """Informational z * log_sigma(n) / n report (constants unknown)."""
    n = max(f.n, 2)
    log_sigma_n = math.log(n, max(sigma, 2))
    ratio = f.z * log_sigma_n / n
    return {"n": f.n, "z": f.z, "ratio": ratio}


# -- dump formats ---------------------------------------------------------------


def write_tsv(f: Factorization, fh) -> None:
    for ph in f.phrases:
        if isinstance(ph, Literal):
            fh.write(f"L\t{ph.symbol}\n")
        else:
            fh.write(f"C\t{ph.length}\t{ph.src}\n")


def read_tsv(fh, variant: str = "overlap") -> Factorization:
    phrases = []
    n = 0
    for line in fh:
        parts = line.rstrip("\n").split("\t")
        if not parts or parts == [""]:
            continue
        if parts[0] == "L" and len(parts) == 2:
            phrases.append(Literal(int(parts[1])))
            n += 1
        elif parts[0] == "C" and len(parts) == 3:
            phrases.append(Copy(int(parts[1]), int(parts[2])))
            n += int(parts[1])
        else:
            raise FormatError(f"bad phrase row: {line!r}")
    return Factorization(variant, n, phrases)


def write_binary(f: Factorization, fh) -> None:
    fh.write(BIN_MAGIC)
    fh.write(struct.pack("<QQ", f.n, f.z))
    for ph in f.phrases:
        if isinstance(ph, Literal):
            fh.write(struct.pack("<QQ", 0, ph.symbol))
        else:
            fh.write(struct.pack("<QQ", ph.length, ph.src))


def read_binary(fh, variant: str = "overlap") -> Factorization:
    if fh.read(len(BIN_MAGIC)) != BIN_MAGIC:
        raise FormatError("not an SLZ77v1 stream")
    n, z = struct.unpack("<QQ", fh.read(16))
    phrases = []
    for _ in range(z):
        a, b = struct.unpack("<QQ", fh.read(16))
        phrases.append(Literal(b) if a == 0 else Copy(a, b))
    return Factorization(variant, n, phrases)
