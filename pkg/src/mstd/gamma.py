"""Element frequencies over MSTD subsets of [1, n].

``gamma(k; n)`` is the fraction of MSTD subsets of ``[1, n]`` that contain
``k``. Small ``n`` is handled by an exhaustive bitmask sweep; large ``n`` by
rejection sampling from the uniform model, with per-chunk counter-based
Philox streams so results do not depend on the worker count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels

log = logging.getLogger(__name__)

MAX_EXACT_N = 26
# fixed so that (seed, samples) alone determines the draw sequence
_MC_CHUNK = 1 << 16
_SWEEP_CHUNK = 1 << 20


@dataclass
class GammaEstimate:
    """Per-element counts over MSTD sets; index ``k - 1`` holds element ``k``."""

    n: int
    mode: str  # "exact" or "monte_carlo"
    counts: np.ndarray
    total: int
    endpoint_constraint: bool
    stderr: np.ndarray | None = None
    draws: int = 0  # sets examined (all subsets in exact mode)
    seed: int | None = None

    @property
    def gamma(self) -> np.ndarray:
        if self.total == 0:
            return np.zeros(self.n)
        return self.counts / self.total

    def at(self, k: int) -> float:
        return float(self.gamma[k - 1])

    @property
    def mstd_fraction(self) -> float:
        return self.total / self.draws if self.draws else 0.0

    def rows(self) -> list[tuple]:
        g = self.gamma
        se = self.stderr if self.stderr is not None else np.zeros(self.n)
        return [(k, float(g[k - 1]), float(se[k - 1]), int(self.counts[k - 1])) for k in range(1, self.n + 1)]

    def summary(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "total": self.total,
            "draws": self.draws,
            "mstd_fraction": self.mstd_fraction,
            "endpoint_constraint": self.endpoint_constraint,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class CensusResult:
    n: int
    require_endpoints: bool
    examined: int
    mstd: int
    pn: int | None = None
    pn_count: int | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "require_endpoints": self.require_endpoints,
            "examined": self.examined,
            "mstd": self.mstd,
            "pn": self.pn,
            "pn_count": self.pn_count,
        }


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    max_abs_diff: float
    worst_k: int
    tolerance: str
    notes: list[str] = field(default_factory=list)


def _words(masks: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(masks.reshape(-1, 1))


def _sweep(n: int, endpoints: bool, fringe: int) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield (masks, is_mstd, is_pn) over all nonempty subsets of [1, n].

    Element ``k`` is bit ``k - 1``.
    """
    if n < 1 or n > MAX_EXACT_N:
        raise ValueError(f"exhaustive mode needs 1 <= n <= {MAX_EXACT_N}, got {n}")
    if endpoints and n < 2:
        raise ValueError("endpoint constraint needs n >= 2")
    free = n - 2 if endpoints else n
    fixed = np.uint64(1 | (1 << (n - 1)))
    total = 1 << free
    for start in range(0, total, _SWEEP_CHUNK):
        inner = np.arange(start, min(total, start + _SWEEP_CHUNK), dtype=np.uint64)
        masks = (inner << np.uint64(1)) | fixed if endpoints else inner[inner != 0]
        sc, dc, pn = _kernels.classify_rows(_words(masks), fringe)
        yield masks, sc > dc, pn


def _element_counts(masks: np.ndarray, n: int) -> np.ndarray:
    return np.array([int(np.count_nonzero((masks >> np.uint64(k)) & np.uint64(1))) for k in range(n)], dtype=np.int64)


def census(n: int, require_endpoints: bool = True, pn: int | None = None, threads: int = 1) -> CensusResult:
    """Count MSTD subsets of [1, n] (optionally with 1, n forced) and those that are P_pn."""
    _kernels.set_threads(threads)
    if pn is not None and (pn < 1 or (require_endpoints and pn > n - 1)):
        raise ValueError(f"fringe size {pn} out of range for [1,{n}]")
    examined = mstd = pn_count = 0
    for masks, hit, ok in _sweep(n, require_endpoints, -1 if pn is None else pn):
        examined += len(masks)
        mstd += int(hit.sum())
        pn_count += int((hit & ok).sum())
    return CensusResult(n, require_endpoints, examined, mstd, pn, pn_count if pn is not None else None)


def exact_gamma(n: int, endpoint_constraint: bool = False, threads: int = 1) -> GammaEstimate:
    _kernels.set_threads(threads)
    counts = np.zeros(n, np.int64)
    total = examined = 0
    for masks, hit, _ in _sweep(n, endpoint_constraint, -1):
        examined += len(masks)
        sel = masks[hit]
        total += len(sel)
        counts += _element_counts(sel, n)
    return GammaEstimate(n, "exact", counts, total, endpoint_constraint, draws=examined)


def _draw_chunk(n: int, seed: int, chunk: int) -> np.ndarray:
    W = (n + 63) // 64
    key = (seed % (1 << 64)) | (chunk << 64)
    words = np.random.Philox(key=key).random_raw((_MC_CHUNK, W))
    top = n - 64 * (W - 1)
    if top < 64:
        words[:, W - 1] &= np.uint64((1 << top) - 1)
    return words


def _rows_to_masks(words: np.ndarray) -> list[int]:
    return [sum(int(w) << (64 * i) for i, w in enumerate(row)) for row in words]


def mc_gamma(n: int, samples: int, seed: int = 0, threads: int = 1, max_draws: int | None = None) -> GammaEstimate:
    """Rejection-sample uniform subsets of [1, n] until ``samples`` MSTD sets are seen.

    Draw ``i`` lives in chunk ``i // 65536`` whose stream is keyed by
    ``(seed, chunk)``; hits are taken in draw order, so the result depends only
    on ``(n, samples, seed)``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if n < 1:
        raise ValueError("n must be positive")
    _kernels.set_threads(threads)
    counts = np.zeros(n, np.int64)
    total = 0
    draws = 0
    chunk = 0
    while total < samples:
        if max_draws is not None and draws >= max_draws:
            break
        words = _draw_chunk(n, seed, chunk)
        sc, dc, _ = _kernels.classify_rows(words, -1)
        idx = np.flatnonzero(sc > dc)
        need = samples - total
        if len(idx) >= need:
            idx = idx[:need]
            draws += int(idx[-1]) + 1
        else:
            draws += len(words)
        for mask in _rows_to_masks(words[idx]):
            for k in range(n):
                if (mask >> k) & 1:
                    counts[k] += 1
        total += len(idx)
        chunk += 1
        if chunk % 32 == 0:
            log.info("mc_gamma n=%d: %d/%d MSTD sets after %d draws", n, total, samples, draws)
    g = counts / total if total else np.zeros(n)
    stderr = np.sqrt(g * (1 - g) / total) if total else np.zeros(n)
    return GammaEstimate(n, "monte_carlo", counts, total, False, stderr=stderr, draws=draws, seed=seed)


def symmetry_check(est: GammaEstimate, n_sigma: float = 4.0) -> SymmetryReport:
    """Check gamma(k) = gamma(n+1-k).

    Exact estimates must agree count-for-count. Monte Carlo estimates must
    agree within ``n_sigma`` combined standard errors at every k.
    """
    n = est.n
    g = est.gamma
    notes = []
    if est.endpoint_constraint:
        notes.append("endpoint-constrained population; reflection x -> n+1-x preserves it")
    diffs = np.abs(g - g[::-1])
    worst = int(np.argmax(diffs)) + 1
    if est.mode == "exact":
        ok = bool(np.array_equal(est.counts, est.counts[::-1]))
        return SymmetryReport(ok, float(diffs.max()), worst, "exact", notes)
    se = est.stderr if est.stderr is not None else np.zeros(n)
    combined = np.sqrt(se**2 + se[::-1] ** 2)
    ok = bool(np.all((diffs < n_sigma * combined) | (diffs == 0)))
    return SymmetryReport(ok, float(diffs.max()), worst, f"{n_sigma:g} combined stderr", notes)
