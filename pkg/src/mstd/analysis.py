"""MSTD classification and fringe (P_n / P_n^j) checks."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

from .core import IntSet, LinearForm, diffset, eval_form, forms_of_order, sumset


class Kind(str, Enum):
    MSTD = "MSTD"
    BALANCED = "balanced"
    MDTS = "MDTS"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    sum_card: int
    diff_card: int

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "sum_card": self.sum_card, "diff_card": self.diff_card}


@dataclass(frozen=True)
class FringeReport:
    """Which required sums and differences are absent.

    ``missing_sums`` lists integers of ``[2a+n, 2b-n]`` not in ``A+A``;
    ``missing_diffs`` lists integers of ``[-(b-a)+n, (b-a)-n]`` not in ``A-A``.
    """

    n: int
    sum_ok: bool
    diff_ok: bool
    missing_sums: list[int] = field(default_factory=list)
    missing_diffs: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sum_ok and self.diff_ok

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return asdict(self)


def kind_of(sum_card: int, diff_card: int) -> Kind:
    if sum_card > diff_card:
        return Kind.MSTD
    if sum_card == diff_card:
        return Kind.BALANCED
    return Kind.MDTS


def classify(A: IntSet) -> Classification:
    if not A:
        raise ValueError("cannot classify the empty set")
    s = len(sumset(A, A))
    d = len(diffset(A, A))
    return Classification(kind_of(s, d), s, d)


def is_mstd(A: IntSet) -> bool:
    return classify(A).kind is Kind.MSTD


def is_pn(A: IntSet, n: int) -> FringeReport:
    if not A:
        raise ValueError("P_n check needs a nonempty set")
    a, b = A.min(), A.max()
    if n < 1 or n > b - a:
        raise ValueError(f"fringe size n={n} must lie in [1, max-min={b - a}]")
    ms = sumset(A, A).missing_in(2 * a + n, 2 * b - n)
    md = diffset(A, A).missing_in(-(b - a) + n, (b - a) - n)
    return FringeReport(n, not ms, not md, ms, md)


def form_missing(A: IntSet, n: int, form: LinearForm) -> list[int]:
    """Elements of the form's inner window (all but n at each end) that are absent."""
    lo, hi = form.span(A.min(), A.max())
    return eval_form(form, A).missing_in(lo + n, hi - n)


def is_pnj(A: IntSet, n: int, j: int) -> bool:
    # |f_{j1,j2}(A)| = |f_{j2,j1}(A)| and the windows mirror, so j1 >= j2 suffices
    if not A or A.min() != 1:
        raise ValueError("P_n^j check needs A ⊂ [1,k] with 1 in A")
    if j < 2:
        raise ValueError("order j must be at least 2")
    k = A.max()
    if n < 1 or 2 * n > j * (k - 1):
        raise ValueError(f"fringe size n={n} out of range for order {j} on [1,{k}]")
    return all(not form_missing(A, n, f) for f in forms_of_order(j, canonical=True))
