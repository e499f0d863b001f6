"""Random search for seeds of generalized MSTD families.

A seed is a P_n^j-set ``A ⊂ [1, 2n]`` with ``1, 2n ∈ A`` and
``|f_first(A)| > |f_second(A)|`` for two forms of order ``j``. Candidate
``i`` is drawn from its own RNG stream keyed by ``(seed, i)``, and the winner
is the hit with the smallest index, so the outcome does not depend on how
index ranges are split between workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .core import IntSet, LinearForm, sumset


@dataclass(frozen=True)
class SearchConfig:
    n: int
    j: int
    target: tuple[LinearForm, LinearForm]
    inclusion_prob: float | None = None
    budget: int = 1_000_000
    seed: int = 0
    # optional fringe profile: elements within fringe_width of 1 or 2n use fringe_prob
    fringe_width: int = 0
    fringe_prob: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.j < 2:
            raise ValueError("order j must be at least 2")
        first, second = self.target
        if first.order != self.j or second.order != self.j:
            raise ValueError(f"both target forms must have order {self.j}")
        if not 0 < self.prob < 1:
            raise ValueError("inclusion probability must lie in (0, 1)")
        if self.fringe_prob is not None and not 0 < self.fringe_prob < 1:
            raise ValueError("fringe probability must lie in (0, 1)")
        if self.budget < 1:
            raise ValueError("budget must be positive")

    @property
    def prob(self) -> float:
        return 1.0 / self.j if self.inclusion_prob is None else self.inclusion_prob

    def element_probs(self) -> list[float]:
        """Inclusion probability for each interior element 2..2n-1."""
        top = 2 * self.n
        out = []
        for e in range(2, top):
            near = min(e - 1, top - e) <= self.fringe_width
            out.append(self.fringe_prob if near and self.fringe_prob is not None else self.prob)
        return out


@dataclass(frozen=True)
class SearchHit:
    index: int
    set: IntSet
    first_card: int
    second_card: int


@dataclass(frozen=True)
class SearchResult:
    hit: SearchHit | None
    examined: int
    pnj_count: int  # candidates that passed the P_n^j test

    @property
    def found(self) -> bool:
        return self.hit is not None

    def to_dict(self) -> dict:
        out = {"found": self.found, "examined": self.examined, "pnj_count": self.pnj_count}
        if self.hit is not None:
            out.update(
                index=self.hit.index,
                set=self.hit.set.to_list(),
                first_card=self.hit.first_card,
                second_card=self.hit.second_card,
            )
        return out


def _stream(seed: int, index: int) -> random.Random:
    return random.Random(((seed % (1 << 64)) << 64) | index)


def random_candidate(cfg: SearchConfig, index: int, _probs: list[float] | None = None) -> IntSet:
    probs = cfg.element_probs() if _probs is None else _probs
    rng = _stream(cfg.seed, index)
    top = 2 * cfg.n
    bits = 1 | (1 << (top - 1))
    for i, p in enumerate(probs, start=1):
        if rng.random() < p:
            bits |= 1 << i
    return IntSet.from_mask(1, bits)


def all_forms(A: IntSet, j: int) -> dict[LinearForm, IntSet]:
    """f_{j1,j2}(A) for every j1 >= j2 with j1 + j2 = j, sharing partial sums."""
    neg = -A
    cache: dict[tuple[int, int], IntSet] = {(1, 0): A}

    def get(a: int, b: int) -> IntSet:
        if (a, b) not in cache:
            cache[(a, b)] = sumset(get(a, b - 1), neg) if b else sumset(get(a - 1, 0), A)
        return cache[(a, b)]

    return {LinearForm(j - b, b): get(j - b, b) for b in range(j // 2 + 1)}


def evaluate(A: IntSet, n: int, j: int, target: tuple[LinearForm, LinearForm]) -> tuple[bool, int, int]:
    """(is P_n^j, |f_first(A)|, |f_second(A)|) for a set with min 1."""
    forms = all_forms(A, j)
    lo_a, hi_a = A.min(), A.max()
    pnj = True
    for f, S in forms.items():
        lo, hi = f.span(lo_a, hi_a)
        full = (1 << (hi - lo - 2 * n + 1)) - 1
        if S.window(lo + n, hi - n) != full:
            pnj = False
            break

    def card(f: LinearForm) -> int:
        return len(forms[f] if f.j1 >= f.j2 else forms[f.mirrored()])

    return pnj, card(target[0]), card(target[1])


def _scan(cfg: SearchConfig, start: int, stop: int, first_only: bool) -> tuple[list[SearchHit], int]:
    probs = cfg.element_probs()
    hits = []
    pnj_count = 0
    for i in range(start, stop):
        A = random_candidate(cfg, i, probs)
        pnj, c1, c2 = evaluate(A, cfg.n, cfg.j, cfg.target)
        if not pnj:
            continue
        pnj_count += 1
        if c1 > c2:
            hits.append(SearchHit(i, A, c1, c2))
            if first_only:
                break
    return hits, pnj_count


def iter_hits(cfg: SearchConfig, chunk: int = 4096) -> Iterator[SearchHit]:
    """Every hit within the budget, in index order."""
    for start in range(0, cfg.budget, chunk):
        hits, _ = _scan(cfg, start, min(cfg.budget, start + chunk), first_only=False)
        yield from hits


def find_seed(cfg: SearchConfig, threads: int = 1, chunk: int = 4096) -> SearchResult:
    """First hit by candidate index, or a miss after ``cfg.budget`` candidates."""
    bounds = [(s, min(cfg.budget, s + chunk)) for s in range(0, cfg.budget, chunk)]
    pnj_total = 0
    if threads <= 1:
        for start, stop in bounds:
            hits, pc = _scan(cfg, start, stop, True)
            if hits:
                # pnj_count counts up to and including the winner
                return SearchResult(hits[0], hits[0].index + 1, pnj_total + pc)
            pnj_total += pc
        return SearchResult(None, cfg.budget, pnj_total)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for b in range(0, len(bounds), threads):
            batch = bounds[b : b + threads]
            results = list(pool.map(_scan_first, [(cfg, s, e) for s, e in batch]))
            for hits, pc in results:
                pnj_total += pc
                if hits:
                    return SearchResult(hits[0], hits[0].index + 1, pnj_total)
    return SearchResult(None, cfg.budget, pnj_total)


def _scan_first(args):
    cfg, start, stop = args
    return _scan(cfg, start, stop, True)


def verify_seed(A: IntSet, n: int, j: int, target: tuple[LinearForm, LinearForm]) -> dict:
    """From-scratch report on whether A is a valid seed for the target inequality."""
    in_range = bool(A) and A.min() == 1 and A.max() == 2 * n
    pnj, c1, c2 = evaluate(A, n, j, target) if A else (False, 0, 0)
    return {
        "in_range": in_range,
        "pnj": pnj,
        "first_card": c1,
        "second_card": c2,
        "ok": in_range and pnj and c1 > c2,
    }
