#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure NumPy/Python fallbacks.

    python benchmarks/bench_kernels.py [--reviews 300] [--chunks 2000] [--queries 50]

The same functions run through both paths in-process, so numbers are directly
comparable. Selecting the fallback globally instead is PERSONAMINE_NO_NUMBA=1.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from personamine import kernels
from personamine.curation.lexicon import load_default_lexicon
from personamine.kernels import (
    _masked_scores_numpy,
    _phrase_in_windows_py,
    encode_tokens,
)


def build_bodies(n: int, seed: int = 99) -> list[list[str]]:
    lexicon = load_default_lexicon()
    vocab = sorted({tok for phrases in lexicon.entries.values()
                    for p in phrases for tok in p.split()})
    fillers = ["game", "play", "vr", "the", "and", "great", "arena", "match",
               "level", "store", "friend", "evening", "update", "menu"]
    rng = random.Random(seed)
    bodies = []
    for _ in range(n):
        words = []
        for _ in range(rng.randrange(20, 60)):
            pool = vocab if rng.random() < 0.3 else fillers
            word = rng.choice(pool)
            if rng.random() < 0.2 and len(word) > 3:
                i = rng.randrange(len(word) - 1)
                word = word[:i] + word[i + 1] + word[i] + word[i + 2:]
            words.append(word)
        bodies.append(words)
    return bodies


def bench_fuzzy(bodies: list[list[str]], fn) -> float:
    lexicon = load_default_lexicon()
    compiled = [p for dim in lexicon.entries for p in lexicon.compiled(dim)]
    start = time.perf_counter()
    hits = 0
    for tokens in bodies:
        enc, lens = encode_tokens(tokens)
        for phrase in compiled:
            if fn(enc, lens, phrase.enc, phrase.lens, phrase.budgets):
                hits += 1
    elapsed = time.perf_counter() - start
    print(f"    {hits} phrase hits")
    return elapsed


def bench_scores(n_chunks: int, n_queries: int, fn) -> float:
    rng = np.random.default_rng(3)
    mat = rng.normal(size=(n_chunks, 64))
    mat /= np.linalg.norm(mat, axis=1, keepdims=True)
    queries = rng.normal(size=(n_queries, 64))
    queries /= np.linalg.norm(queries, axis=1, keepdims=True)
    masks = rng.random((n_queries, n_chunks)) < 0.5
    start = time.perf_counter()
    total = 0.0
    for q in range(n_queries):
        scores = fn(mat, queries[q], masks[q])
        total += float(np.max(scores))
    elapsed = time.perf_counter() - start
    print(f"    checksum {total:.4f}")
    return elapsed


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reviews", type=int, default=300)
    parser.add_argument("--chunks", type=int, default=2000)
    parser.add_argument("--queries", type=int, default=50)
    args = parser.parse_args()

    if not kernels.USING_NUMBA:
        print("numba path unavailable (disabled or not importable); nothing to compare")
        return

    print(f"fuzzy phrase scan: {args.reviews} reviews x full lexicon")
    kernels.warmup()
    bodies = build_bodies(args.reviews)
    jit_time = bench_fuzzy(bodies, kernels._phrase_in_windows_nb)
    py_time = bench_fuzzy(bodies, _phrase_in_windows_py)
    print(f"  numba:    {jit_time:.3f}s")
    print(f"  fallback: {py_time:.3f}s  ({py_time / jit_time:.1f}x slower)")

    print(f"masked cosine scores: {args.chunks} chunks x {args.queries} queries")
    jit_time = bench_scores(args.chunks, args.queries, kernels._masked_scores_nb)
    np_time = bench_scores(args.chunks, args.queries, _masked_scores_numpy)
    print(f"  numba:    {jit_time:.3f}s")
    print(f"  fallback: {np_time:.3f}s  ({np_time / jit_time:.1f}x)")


if __name__ == "__main__":
    main()
