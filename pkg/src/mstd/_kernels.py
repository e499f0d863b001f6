"""Batch bitset kernels for exhaustive sweeps and Monte Carlo sampling.

Each row of ``words`` is one subset of ``[0, 64*W)`` in little-endian
uint64 words. Sums need up to ``2*W`` words; positive differences fit
in ``W`` words, and ``|A-A| = 2*(#positive differences) + 1``.
"""

import os

import numba
import numpy as np
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # skip the TBB probe, which warns on older TBB installs
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_SIXTY_FOUR = np.uint64(64)


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, inline="always")
def _bit_set(arr, i):
    return (arr[i // 64] >> np.uint64(i % 64)) & _ONE


@njit(cache=True)
def _row(words, t, s, d):
    W = words.shape[1]
    lo = -1
    hi = -1
    for w in range(W):
        x = words[t, w]
        while x:
            low = x & (~x + _ONE)
            i = w * 64 + _popcount(low - _ONE)
            if lo < 0:
                lo = i
            hi = i
            q = i // 64
            r = np.uint64(i % 64)
            for v in range(W):
                a = words[t, v]
                s[v + q] |= a << r
                if r:
                    s[v + q + 1] |= a >> (_SIXTY_FOUR - r)
                if v >= q:
                    val = a >> r
                    if r and v + 1 < W:
                        val |= words[t, v + 1] << (_SIXTY_FOUR - r)
                    d[v - q] |= val
            x ^= low
    return lo, hi


@njit(parallel=True, cache=True)
def classify_rows(words, fringe):
    """Per row: |A+A|, |A-A| and whether A is a P_fringe-set.

    ``fringe < 0`` skips the fringe test (result False). Empty rows give
    zero cardinalities.
    """
    N, W = words.shape
    SW = 2 * W + 1
    sum_card = np.zeros(N, np.int64)
    diff_card = np.zeros(N, np.int64)
    pn = np.zeros(N, np.bool_)
    for t in prange(N):
        s = np.zeros(SW, np.uint64)
        d = np.zeros(W, np.uint64)
        lo, hi = _row(words, t, s, d)
        if lo < 0:
            continue
        c = 0
        for v in range(SW):
            c += _popcount(s[v])
        sum_card[t] = c
        e = 0
        for v in range(W):
            e += _popcount(d[v])
        diff_card[t] = 2 * (e - 1) + 1
        if fringe >= 0 and fringe <= hi - lo:
            ok = True
            for b in range(2 * lo + fringe, 2 * hi - fringe + 1):
                if not _bit_set(s, b):
                    ok = False
                    break
            if ok:
                for b in range(1, hi - lo - fringe + 1):
                    if not _bit_set(d, b):
                        ok = False
                        break
            pn[t] = ok
    return sum_card, diff_card, pn


def set_threads(threads):
    numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))
