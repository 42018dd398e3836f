"""Hot numeric kernels: fuzzy token-window matching and masked cosine scoring.

Both kernels ship in two variants with identical semantics: a numba @njit
build (default when numba imports cleanly) and a plain NumPy/Python fallback.
Set PERSONAMINE_NO_NUMBA=1 to force the fallback path; benchmarks/bench_kernels.py
times the two side by side.

Token edit distance is the optimal-string-alignment variant, so an adjacent
transposition ("motoin" vs "motion") costs one edit.
"""

from __future__ import annotations

import os

import numpy as np

_env_off = os.environ.get("PERSONAMINE_NO_NUMBA", "") not in ("", "0")

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

USING_NUMBA = HAS_NUMBA and not _env_off


def _osa_distance_impl(a, b, la, lb, cap):
    """Capped optimal-string-alignment distance between int32 codepoint rows.

    Returns cap + 1 as soon as the distance provably exceeds cap.
    """
    if la - lb > cap or lb - la > cap:
        return cap + 1
    prev2 = np.empty(lb + 1, dtype=np.int32)
    prev = np.empty(lb + 1, dtype=np.int32)
    cur = np.empty(lb + 1, dtype=np.int32)
    for j in range(lb + 1):
        prev[j] = j
    for i in range(1, la + 1):
        cur[0] = i
        row_min = cur[0]
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            best = prev[j] + 1  # deletion
            if cur[j - 1] + 1 < best:  # insertion
                best = cur[j - 1] + 1
            if prev[j - 1] + cost < best:  # substitution
                best = prev[j - 1] + cost
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                if prev2[j - 2] + 1 < best:  # transposition
                    best = prev2[j - 2] + 1
            cur[j] = best
            if best < row_min:
                row_min = best
        if row_min > cap:
            return cap + 1
        for j in range(lb + 1):
            prev2[j] = prev[j]
            prev[j] = cur[j]
    return prev[lb]


def _phrase_in_windows_impl(body_enc, body_len, phr_enc, phr_len, budgets):
    """True if any length-m token window of the body matches the phrase.

    body_enc: (n, w) int32 codepoints, padded; body_len: (n,) token lengths.
    phr_enc/phr_len: same layout for the m phrase tokens.
    budgets: (m,) per-token edit-distance budget.
    """
    n = body_len.shape[0]
    m = phr_len.shape[0]
    if m > n or m == 0:
        return False
    for w in range(n - m + 1):
        ok = True
        for j in range(m):
            bl = body_len[w + j]
            pl = phr_len[j]
            cap = budgets[j]
            if bl - pl > cap or pl - bl > cap:
                ok = False
                break
            if cap == 0:
                if bl != pl:
                    ok = False
                    break
                same = True
                for c in range(pl):
                    if body_enc[w + j, c] != phr_enc[j, c]:
                        same = False
                        break
                if not same:
                    ok = False
                    break
            else:
                d = _OSA_ACTIVE(body_enc[w + j], phr_enc[j], bl, pl, cap)
                if d > cap:
                    ok = False
                    break
        if ok:
            return True
    return False


def _masked_scores_numpy(matrix, query, mask):
    """Dot products of unit vectors against the query; -2.0 where masked out."""
    out = np.full(matrix.shape[0], -2.0, dtype=np.float64)
    if mask.any():
        out[mask] = matrix[mask] @ query
    return out


def _masked_scores_impl(matrix, query, mask):
    n, d = matrix.shape
    out = np.full(n, -2.0, dtype=np.float64)
    for i in range(n):
        if mask[i]:
            s = 0.0
            for j in range(d):
                s += matrix[i, j] * query[j]
            out[i] = s
    return out


_osa_distance_py = _osa_distance_impl
_phrase_in_windows_py = _phrase_in_windows_impl

if USING_NUMBA:
    _osa_distance_nb = njit(cache=True)(_osa_distance_impl)
    _OSA_ACTIVE = _osa_distance_nb
    _phrase_in_windows_nb = njit(cache=True)(_phrase_in_windows_impl)
    _masked_scores_nb = njit(cache=True)(_masked_scores_impl)

    osa_distance = _osa_distance_nb
    phrase_in_windows = _phrase_in_windows_nb
    masked_scores = _masked_scores_nb
else:
    _OSA_ACTIVE = _osa_distance_py
    osa_distance = _osa_distance_py
    phrase_in_windows = _phrase_in_windows_py
    masked_scores = _masked_scores_numpy


def encode_tokens(tokens: list[str], width: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Pack tokens into a padded (n, width) int32 codepoint matrix + lengths."""
    n = len(tokens)
    if width is None:
        width = max((len(t) for t in tokens), default=1)
    width = max(width, 1)
    enc = np.zeros((max(n, 1), width), dtype=np.int32)
    lens = np.zeros(max(n, 1), dtype=np.int32)
    for i, tok in enumerate(tokens):
        lens[i] = len(tok)
        for c, ch in enumerate(tok[:width]):
            enc[i, c] = ord(ch)
    return enc[:n] if n else enc[:0], lens[:n] if n else lens[:0]


def token_distance(a: str, b: str, cap: int = 64) -> int:
    """Convenience wrapper: OSA distance between two tokens, capped."""
    ea, la = encode_tokens([a])
    eb, lb = encode_tokens([b])
    width = max(ea.shape[1], eb.shape[1])
    ea2 = np.zeros((1, width), dtype=np.int32)
    eb2 = np.zeros((1, width), dtype=np.int32)
    ea2[0, : ea.shape[1]] = ea[0]
    eb2[0, : eb.shape[1]] = eb[0]
    return int(osa_distance(ea2[0], eb2[0], int(la[0]), int(lb[0]), cap))


def warmup() -> None:
    """Trigger JIT compilation so timed sections measure steady-state speed."""
    enc, lens = encode_tokens(["motion", "sickness"])
    phr, plens = encode_tokens(["motoin"], width=enc.shape[1])
    budgets = np.array([1], dtype=np.int32)
    phrase_in_windows(enc, lens, phr, plens, budgets)
    m = np.eye(3, 4, dtype=np.float64)
    masked_scores(m, np.ones(4, dtype=np.float64), np.array([True, False, True]))
