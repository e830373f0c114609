"""Command-line front end: factorize, LPF dump, decode, benchmark, and
index build/inspect.

Exit codes: 0 ok, 1 verification mismatch, 2 I/O or decode error.
"""

from __future__ import annotations

import argparse
import json
import resource
import sys
import time

import numpy as np

from .errors import FormatError, InputError, NotFoundError
from .lpf import build_lpf
from .lz77 import (
    decode,
    factorize,
    phrase_count_bound_check,
    read_binary,
    read_tsv,
    write_binary,
    write_tsv,
)
from .minocc.index import build_minocc, load_index, save_index
from .oracle import oracle_lpf, oracle_parse
from .text import pack_text, read_packed2, read_raw_bytes


def _load_text(args):
    if args.packed:
        sym = read_packed2(args.input)
        sigma = args.sigma if args.sigma else 4
        if sym.size and sym.max() >= sigma:
            raise InputError("packed symbol exceeds sigma")
    else:
        sigma = args.sigma if args.sigma else 256
        sym = read_raw_bytes(args.input, sigma=sigma)
    return sym, pack_text(sym, sigma=sigma, add_sentinel=True)


def _stats_line(extra: dict) -> None:
    rss_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    extra = dict(extra)
    extra["peak_rss_mb"] = round(rss_kb / 1024, 1)
    print(json.dumps(extra), file=sys.stderr)


def cmd_factorize(args) -> int:
    sym, text = _load_text(args)
    t0 = time.perf_counter()
    fact = factorize(text, args.variant, tau=args.tau)
    wall = time.perf_counter() - t0
    if args.output:
        if args.format == "bin":
            with open(args.output, "wb") as fh:
                write_binary(fact, fh)
        else:
            with open(args.output, "w") as fh:
                write_tsv(fact, fh)
    else:
        write_tsv(fact, sys.stdout)
    report = phrase_count_bound_check(fact, text.sigma)
    report["seconds"] = round(wall, 3)
    _stats_line(report)
    if args.verify:
        if sym.size > (1 << 20):
            print("verify skipped: input above 1 MiB", file=sys.stderr)
        else:
            want = oracle_parse(sym, args.variant)
            got = [
                (0, p.symbol) if hasattr(p, "symbol") else (p.length, p.src)
                for p in fact.phrases
            ]
            if got != want:
                print("verification mismatch", file=sys.stderr)
                return 1
    return 0


def cmd_lpf(args) -> int:
    sym, text = _load_text(args)
    index = build_minocc(text, tau=args.tau, memory_relaxed=args.memory_relaxed)
    lpf = build_lpf(index, args.variant)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for j in range(1, text.n + 1):
            ln, src = lpf.at(j)
            out.write(f"{j}\t{ln}\t{src}\n")
    finally:
        if args.output:
            out.close()
    if args.verify:
        if sym.size > (1 << 20):
            print("verify skipped: input above 1 MiB", file=sys.stderr)
            return 0
        lens, srcs = oracle_lpf(sym, args.variant)
        for j in range(1, text.n + 1):
            if lpf.at(j) != (int(lens[j - 1]), int(srcs[j - 1])):
                print(f"verification mismatch at {j}", file=sys.stderr)
                return 1
    return 0


def cmd_decode(args) -> int:
    opener = open(args.input, "rb" if args.format == "bin" else "r")
    with opener as fh:
        fact = read_binary(fh) if args.format == "bin" else read_tsv(fh)
    sym = decode(fact)
    if sym.size and sym.max() > 255:
        raise FormatError("decoded symbols do not fit bytes")
    data = bytes(int(c) for c in sym)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    return 0


def cmd_bench(args) -> int:
    sym, text = _load_text(args)
    rng = np.random.default_rng(0)
    samples = []
    for _ in range(max(1, args.reps)):
        timings: dict = {}
        t0 = time.perf_counter()
        index = build_minocc(text, tau=args.tau, timings=timings)
        lpf_t0 = time.perf_counter()
        lpf = build_lpf(index, args.variant)
        timings["lpf"] = time.perf_counter() - lpf_t0
        build_wall = time.perf_counter() - t0
        qcount = min(args.queries, 100_000)
        lat = np.zeros(qcount)
        for i in range(qcount):
            j = int(rng.integers(1, text.n + 1))
            ln = int(rng.integers(1, text.n - j + 2))
            q0 = time.perf_counter()
            index.window(j, ln)
            lat[i] = time.perf_counter() - q0
        f0 = time.perf_counter()
        fact = factorize(text, args.variant, lpf=lpf)
        f_wall = time.perf_counter() - f0
        samples.append(
            {
                "mode": index.mode,
                "build_seconds": round(build_wall, 3),
                "build_breakdown": {k: round(v, 3) for k, v in timings.items()},
                "query_p50_us": round(float(np.percentile(lat, 50)) * 1e6, 1),
                "query_p99_us": round(float(np.percentile(lat, 99)) * 1e6, 1),
                "factorize_mb_per_s": round(
                    text.n / 1e6 / max(f_wall, 1e-9), 3
                ),
                "z": fact.z,
            }
        )
    wall_builds = [s["build_seconds"] for s in samples]
    report = {
        "input": str(args.input),
        "n": text.n,
        "sigma": text.sigma,
        "reps": len(samples),
        "build_seconds_min": min(wall_builds),
        "build_seconds_median": float(np.median(wall_builds)),
        "samples": samples,
    }
    print(json.dumps(report, indent=2))
    return 0


def cmd_index(args) -> int:
    if args.inspect:
        index = load_index(args.input)
        print(
            json.dumps(
                {
                    "mode": index.mode,
                    "tau": index.tau,
                    "n": index.text.n,
                    "sigma": index.text.sigma,
                }
            )
        )
        return 0
    _, text = _load_text(args)
    index = build_minocc(text, tau=args.tau, memory_relaxed=args.memory_relaxed)
    save_index(index, args.output)
    print(json.dumps({"mode": index.mode, "tau": index.tau, "out": args.output}))
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sublz",
        description="LZ77 factorization via a leftmost-occurrence index",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("input", help="input file")
        p.add_argument("--sigma", type=int, default=None, help="alphabet size")
        p.add_argument("--packed", action="store_true", help="input is SLZ2 2-bit")
        p.add_argument("--tau", type=int, default=None, help="override tau")
        p.add_argument(
            "--variant",
            choices=("overlap", "nonoverlap"),
            default="overlap",
        )
        p.add_argument("--memory-relaxed", action="store_true")
        if output:
            p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("factorize", help="greedy LZ77 phrase dump")
    common(p)
    p.add_argument("--format", choices=("tsv", "bin"), default="tsv")
    p.add_argument("--verify", action="store_true",
                   help="diff against the naive parser (inputs up to 1 MiB)")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("lpf", help="LPF/LPnF dump: j<TAB>len<TAB>src")
    common(p)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_lpf)

    p = sub.add_parser("decode", help="rebuild the text from a phrase dump")
    p.add_argument("input")
    p.add_argument("--format", choices=("tsv", "bin"), default="tsv")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bench", help="build/query/factorize timings as JSON")
    common(p, output=False)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--queries", type=int, default=10_000)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("index", help="build and serialize the index")
    common(p)
    p.add_argument("--inspect", action="store_true",
                   help="treat input as a container and print its meta")
    p.set_defaults(func=cmd_index)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, InputError, FormatError, NotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
