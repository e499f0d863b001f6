"""Explicit infinite families of MSTD sets.

The main family starts from a P_n, MSTD seed ``A = L ∪ R`` on ``[1, 2n]``
and inserts a middle chunk of width ``2k + m``::

    A(M; k) = L ∪ [n+1, n+k] ∪ M ∪ [n+k+m+1, n+2k+m] ∪ (R + 2k + m)

with ``M ⊆ [n+k+1, n+k+m]`` hitting every window of ``k`` consecutive
integers and ``n+k+1 ∉ M``. The result is again a P_n-set, and sums and
differences both grow by exactly ``2(2k+m)``.

Also here: counting of admissible ``M`` against the block lower bound,
Nathanson's family and the base expansion method.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .analysis import Classification, Kind, classify, is_pn
from .core import IntSet, affine, sumset
from .density import DensityParams, eval_S


class ConstructionError(ValueError):
    """A family parameter set violates one of its invariants."""


class DigitInteractionWarning(UserWarning):
    """Base expansion used a base small enough for digit sums to collide."""


@dataclass(frozen=True)
class FamilySpec:
    seed: IntSet
    n: int
    k: int
    m: int
    M: IntSet = field(default_factory=IntSet)

    @property
    def L(self) -> IntSet:
        return IntSet(x for x in self.seed if x <= self.n)

    @property
    def R(self) -> IntSet:
        return IntSet(x for x in self.seed if x > self.n)

    @property
    def insertion_width(self) -> int:
        """Width 2k+m of the inserted chunk O1 ∪ M ∪ O2."""
        return 2 * self.k + self.m

    @property
    def total_width(self) -> int:
        """Width 2n+2k+m of the constructed set, which spans [1, 2n+2k+m]."""
        return 2 * self.n + 2 * self.k + self.m

    def check(self) -> None:
        """Raise ConstructionError naming the first violated invariant."""
        n, k, m = self.n, self.k, self.m
        if n < 1:
            raise ConstructionError("n must be positive")
        if k < n:
            raise ConstructionError(f"k >= n violated (k={k}, n={n})")
        if m < 0:
            raise ConstructionError("m must be non-negative")
        s = self.seed
        if not s or s.min() != 1 or s.max() != 2 * n:
            raise ConstructionError(f"seed must lie in [1, {2 * n}] and contain both 1 and {2 * n}")
        if self.M and (self.M.min() < n + k + 1 or self.M.max() > n + k + m):
            raise ConstructionError(f"M must lie in [{n + k + 1}, {n + k + m}]")
        if not validate_M(self.M, n, k, m):
            raise ConstructionError("M violates the gap condition or contains n+k+1")
        if not is_pn(s, n):
            raise ConstructionError(f"seed is not a P_{n}-set")
        if classify(s).kind is not Kind.MSTD:
            raise ConstructionError("seed is not an MSTD set")


@dataclass(frozen=True)
class ConstructionReport:
    spec: FamilySpec
    result: IntSet
    seed_class: Classification
    result_class: Classification
    is_pn: bool

    @property
    def sum_gain(self) -> int:
        return self.result_class.sum_card - self.seed_class.sum_card

    @property
    def diff_gain(self) -> int:
        return self.result_class.diff_card - self.seed_class.diff_card

    @property
    def expected_gain(self) -> int:
        return 2 * self.spec.insertion_width

    @property
    def verified(self) -> bool:
        return (
            self.is_pn
            and self.result_class.kind is Kind.MSTD
            and self.sum_gain == self.diff_gain == self.expected_gain
        )

    def to_dict(self) -> dict:
        return {
            "set": self.result.to_list(),
            "n": self.spec.n,
            "k": self.spec.k,
            "m": self.spec.m,
            "M": self.spec.M.to_list(),
            "insertion_width": self.spec.insertion_width,
            "total_width": self.spec.total_width,
            "sum_card": self.result_class.sum_card,
            "diff_card": self.result_class.diff_card,
            "kind": self.result_class.kind.value,
            "is_pn": self.is_pn,
            "sum_gain": self.sum_gain,
            "diff_gain": self.diff_gain,
            "expected_gain": self.expected_gain,
            "verified": self.verified,
        }


def validate_M(M: IntSet, n: int, k: int, m: int) -> bool:
    """Gap condition: each l in [n+k+1, n+m+1] has a member of M in [l, l+k-1]; and n+k+1 ∉ M."""
    if M and (M.min() < n + k + 1 or M.max() > n + k + m):
        raise ValueError(f"M must lie in [{n + k + 1}, {n + k + m}]")
    if n + k + 1 in M:
        return False
    return all(M.window(l, l + k - 1) for l in range(n + k + 1, n + m + 2))


def enumerate_M(n: int, k: int, m: int, exclude_first: bool = True) -> Iterator[IntSet]:
    """Yield every admissible M once, in lexicographic order of membership bits.

    The gap condition only bites when m >= k; then it forbids k consecutive
    absent positions. ``exclude_first=False`` drops the n+k+1 ∉ M requirement,
    leaving the gap-condition fills that the block bound counts.
    """
    lo = n + k + 1
    constrained = m >= k
    bits = [0] * m

    def rec(i: int, run: int) -> Iterator[IntSet]:
        if i == m:
            yield IntSet(lo + j for j in range(m) if bits[j])
            return
        for b in (0, 1):
            if b == 1 and i == 0 and exclude_first:
                continue
            nrun = 0 if b else run + 1
            if constrained and nrun >= k:
                continue
            bits[i] = b
            yield from rec(i + 1, nrun)
        bits[i] = 0

    if m == 0:
        yield IntSet()
        return
    yield from rec(0, 0)


def count_M(n: int, k: int, m: int, exclude_first: bool = True) -> int:
    """Number of sets ``enumerate_M`` yields, by dynamic programming on the trailing run."""
    if m == 0:
        return 1
    if m < k:
        return 2 ** (m - 1) if exclude_first else 2**m
    if k == 1:
        return 0 if exclude_first else 1
    # ways[r] = number of prefixes ending in a run of r absent positions
    ways = [0] * k
    ways[1] = 1
    if not exclude_first:
        ways[0] = 1
    for _ in range(m - 1):
        nxt = [0] * k
        nxt[0] = sum(ways)
        for r in range(k - 1):
            nxt[r + 1] = ways[r]
        ways = nxt
    return sum(ways)


def count_lower_bound(k: int, r: int) -> float:
    """Block bound 2^(r-2k) (1 - 2^(-h))^(r/h - 3) with block size h = floor(k/2)."""
    if k < 2:
        raise ValueError("block bound needs k >= 2")
    if r < 2 * k:
        raise ValueError("need r >= 2k")
    h = k // 2
    return 2.0 ** (r - 2 * k) * (1 - 2.0**-h) ** (r / h - 3)


def family_percentage_lower_bound(n: int, r: float) -> float:
    """Raw sum over k in [n, r/4] of 2^(-2k) (1 - 2^(-k/2))^(r/(k/2)); constant omitted."""
    return eval_S(DensityParams.family(n, r))


def construct_report(spec: FamilySpec) -> ConstructionReport:
    spec.check()
    n, k, m = spec.n, spec.k, spec.m
    w = spec.insertion_width
    out = spec.L.union(
        IntSet.interval(n + 1, n + k),
        spec.M,
        IntSet.interval(n + k + m + 1, n + 2 * k + m),
        spec.R.shift(w),
    )
    return ConstructionReport(spec, out, classify(spec.seed), classify(out), bool(is_pn(out, n)))


def construct(spec: FamilySpec) -> IntSet:
    """Build A(M; k) and re-verify it is a P_n, MSTD set with the predicted gains."""
    rep = construct_report(spec)
    if not rep.verified:
        raise ConstructionError(
            f"constructed set failed verification: P_n={rep.is_pn}, kind={rep.result_class.kind.value}, "
            f"gains {rep.sum_gain}/{rep.diff_gain} vs {rep.expected_gain}"
        )
    return rep.result


@dataclass(frozen=True)
class SweepRow:
    k: int
    m: int
    M_count: int
    verified_count: int


@dataclass
class SweepResult:
    rows: list[SweepRow]
    distinct: bool
    sets_by_width: dict[int, int]
    failures: list[ConstructionReport]

    @property
    def ok(self) -> bool:
        return self.distinct and not self.failures and all(r.M_count == r.verified_count for r in self.rows)


def sweep_family(seed: IntSet, n: int, ks: Iterable[int], ms: Iterable[int]) -> SweepResult:
    """Construct every A(M;k) for the given k, m ranges and check distinctness per total width."""
    rows = []
    failures = []
    seen: dict[int, set] = {}
    produced: dict[int, int] = {}
    ms = list(ms)
    for k in ks:
        for m in ms:
            count = ok = 0
            for M in enumerate_M(n, k, m):
                rep = construct_report(FamilySpec(seed, n, k, m, M))
                count += 1
                if rep.verified:
                    ok += 1
                else:
                    failures.append(rep)
                width = rep.spec.total_width
                seen.setdefault(width, set()).add(rep.result)
                produced[width] = produced.get(width, 0) + 1
            rows.append(SweepRow(k, m, count, ok))
    distinct = all(len(seen[w]) == produced[w] for w in produced)
    return SweepResult(rows, distinct, produced, failures)


def nathanson_set(m: int, d: int, k: int) -> IntSet:
    """B ∪ L ∪ (a* - B) ∪ {m}, with B = [0,m-1] minus {d}, L = {m-d, 2m-d, ..., km-d}, a* = (k+1)m - 2d."""
    if m < 4:
        raise ValueError("m >= 4 required")
    if not 1 <= d <= m - 1:
        raise ValueError("1 <= d <= m-1 required")
    if 2 * d == m:
        raise ValueError("d = m/2 is excluded")
    if 2 * d < m and k < 3:
        raise ValueError("k >= 3 required when d < m/2")
    if 2 * d > m and k < 4:
        raise ValueError("k >= 4 required when d > m/2")
    B = IntSet(x for x in range(m) if x != d)
    L = IntSet(i * m - d for i in range(1, k + 1))
    a_star = (k + 1) * m - 2 * d
    return B.union(L, affine(B, -1, a_star), IntSet([m]))


def nathanson_grid(max_km: int = 60, m_range: Iterable[int] = range(4, 11)) -> Iterator[tuple[int, int, int]]:
    for m in m_range:
        for d in range(1, m):
            if 2 * d == m:
                continue
            k = 3 if 2 * d < m else 4
            while k * m <= max_km:
                yield m, d, k
                k += 1


def base_expand(A: IntSet, base: int, t: int) -> IntSet:
    """{sum_i a_i base^(i-1) : a_i in A} over t digits.

    Warns when base <= 2*(max A - min A): digit sums or differences can then
    carry into the next digit and the MSTD property need not transfer.
    """
    if base < 1 or t < 1:
        raise ValueError("base and t must be positive")
    if not A:
        return A
    if base <= 2 * (A.max() - A.min()):
        warnings.warn(
            f"base {base} <= 2*(max-min) = {2 * (A.max() - A.min())}; digits may interact",
            DigitInteractionWarning,
            stacklevel=2,
        )
    out = A
    scale = 1
    for _ in range(t - 1):
        scale *= base
        out = sumset(out, affine(A, scale, 0))
    return out


def lower_bound_table(ks: Iterable[int], ms: Iterable[int], n: int = 1, exclude_first: bool = True) -> list[dict]:
    rows = []
    for k in ks:
        for m in ms:
            r = 2 * k + m
            rows.append(
                {
                    "k": k,
                    "m": m,
                    "count": count_M(n, k, m, exclude_first),
                    "bound": count_lower_bound(k, r),
                }
            )
    return rows
