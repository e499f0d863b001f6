"""Exact arithmetic on finite integer sets.

An :class:`IntSet` stores its members as a Python ``int`` bitmask plus an
offset: bit ``i`` set means ``offset + i`` is a member. The window is kept
tight (bit 0 is always set for a nonempty set), so equal sets always have
identical representations.

Sumsets are computed as the OR of shifted copies of one operand, one shift
per member of the other operand, which lets CPython's big-int shifts do the
word-parallel work. Difference sets reuse the same kernel on the reflected
second operand.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

MAX_WIDTH = 1 << 24
MAX_ABS = 1 << 62
MAX_FORM_ORDER = 6

_WIDE = 256


class SetOverflowError(OverflowError):
    """Raised when a result would leave the supported integer range."""


class DegenerateSetWarning(UserWarning):
    """An operation received an empty operand and returned the empty set."""


def _check_window(lo: int, width: int) -> None:
    if width > MAX_WIDTH:
        raise SetOverflowError(
            f"window width {width} exceeds the supported maximum {MAX_WIDTH}"
        )
    if width and (lo < -MAX_ABS or lo + width - 1 > MAX_ABS):
        raise SetOverflowError(
            f"window [{lo}, {lo + width - 1}] exceeds the supported range +/-2^62"
        )


def _bit_positions(bits: int) -> list[int]:
    if bits.bit_length() <= _WIDE:
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out
    raw = np.frombuffer(bits.to_bytes((bits.bit_length() + 7) // 8, "little"), np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


def _reverse(bits: int) -> int:
    # bits has its lowest bit set, so the reversal has the same width
    return int(format(bits, "b")[::-1], 2)


def _shift_or(a: int, b: int) -> int:
    """Bitmask of the sumset of two zero-offset masks."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    for i in _bit_positions(a):
        out |= b << i
    return out


class IntSet:
    """Immutable finite set of integers backed by an offset bitmask."""

    __slots__ = ("_lo", "_bits", "_card")

    def __init__(self, elements: Iterable[int] = ()):
        elems = []
        for e in elements:
            if isinstance(e, bool) or not isinstance(e, (int, np.integer)):
                raise TypeError(f"set elements must be integers, got {e!r}")
            elems.append(int(e))
        if not elems:
            self._lo, self._bits, self._card = 0, 0, 0
            return
        lo, hi = min(elems), max(elems)
        _check_window(lo, hi - lo + 1)
        bits = 0
        for e in elems:
            bits |= 1 << (e - lo)
        self._lo, self._bits, self._card = lo, bits, bits.bit_count()

    @classmethod
    def from_mask(cls, offset: int, bits: int) -> "IntSet":
        """Build from a raw mask where bit ``i`` stands for ``offset + i``."""
        if bits < 0:
            raise ValueError("mask must be non-negative")
        obj = cls.__new__(cls)
        if not bits:
            obj._lo, obj._bits, obj._card = 0, 0, 0
            return obj
        tz = (bits & -bits).bit_length() - 1
        bits >>= tz
        offset += tz
        _check_window(offset, bits.bit_length())
        obj._lo, obj._bits, obj._card = offset, bits, bits.bit_count()
        return obj

    @classmethod
    def interval(cls, lo: int, hi: int) -> "IntSet":
        if hi < lo:
            return cls()
        return cls.from_mask(lo, (1 << (hi - lo + 1)) - 1)

    # raw representation
    @property
    def offset(self) -> int:
        return self._lo

    @property
    def mask(self) -> int:
        return self._bits

    @property
    def window_lo(self) -> int:
        return self._lo

    @property
    def window_hi(self) -> int:
        return self._lo + self._bits.bit_length() - 1

    @property
    def cardinality(self) -> int:
        return self._card

    @property
    def width(self) -> int:
        """Number of integers in ``[min, max]``; 0 for the empty set."""
        return self._bits.bit_length()

    def min(self) -> int:
        if not self._bits:
            raise ValueError("empty set has no minimum")
        return self._lo

    def max(self) -> int:
        if not self._bits:
            raise ValueError("empty set has no maximum")
        return self.window_hi

    def recount(self) -> int:
        return sum(1 for _ in self)

    def is_empty(self) -> bool:
        return not self._bits

    def __len__(self) -> int:
        return self._card

    def __bool__(self) -> bool:
        return bool(self._bits)

    def __iter__(self) -> Iterator[int]:
        lo = self._lo
        return iter([lo + i for i in _bit_positions(self._bits)])

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, (int, np.integer)):
            return False
        i = int(x) - self._lo
        return i >= 0 and (self._bits >> i) & 1 == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntSet):
            return NotImplemented
        return self._bits == other._bits and (not self._bits or self._lo == other._lo)

    def __hash__(self) -> int:
        return hash((self._lo, self._bits))

    def __repr__(self) -> str:
        return f"IntSet({{{', '.join(map(str, self))}}})"

    def __str__(self) -> str:
        return format_set(self)

    def to_list(self) -> list[int]:
        return list(self)

    # arithmetic
    def __add__(self, other: "IntSet") -> "IntSet":
        return sumset(self, other)

    def __sub__(self, other: "IntSet") -> "IntSet":
        return diffset(self, other)

    def __neg__(self) -> "IntSet":
        if not self._bits:
            return self
        return IntSet.from_mask(-self.window_hi, _reverse(self._bits))

    def shift(self, t: int) -> "IntSet":
        return IntSet.from_mask(self._lo + t, self._bits) if self._bits else self

    def union(self, *others: "IntSet") -> "IntSet":
        sets = [s for s in (self, *others) if s._bits]
        if not sets:
            return IntSet()
        lo = min(s._lo for s in sets)
        bits = 0
        for s in sets:
            bits |= s._bits << (s._lo - lo)
        return IntSet.from_mask(lo, bits)

    __or__ = union

    def difference(self, other: "IntSet") -> "IntSet":
        if not self._bits or not other._bits:
            return self
        d = other._lo - self._lo
        ob = other._bits << d if d >= 0 else other._bits >> -d
        return IntSet.from_mask(self._lo, self._bits & ~ob)

    def window(self, lo: int, hi: int) -> int:
        """Mask of membership over ``[lo, hi]``; bit ``i`` stands for ``lo + i``."""
        if hi < lo:
            return 0
        d = lo - self._lo
        bits = self._bits >> d if d >= 0 else self._bits << -d
        return bits & ((1 << (hi - lo + 1)) - 1)

    def missing_in(self, lo: int, hi: int) -> list[int]:
        """Integers of ``[lo, hi]`` that are not members, ascending."""
        if hi < lo:
            return []
        full = (1 << (hi - lo + 1)) - 1
        return [lo + i for i in _bit_positions(full & ~self.window(lo, hi))]


@dataclass(frozen=True)
class LinearForm:
    """``A + ... + A - A - ... - A`` with ``j1`` plus terms and ``j2`` minus terms."""

    j1: int
    j2: int

    def __post_init__(self):
        if self.j1 < 0 or self.j2 < 0:
            raise ValueError("form term counts must be non-negative")
        if self.j1 + self.j2 < 1:
            raise ValueError("form order j1 + j2 must be at least 1")

    @property
    def order(self) -> int:
        return self.j1 + self.j2

    def mirrored(self) -> "LinearForm":
        return LinearForm(self.j2, self.j1)

    def span(self, lo: int, hi: int) -> tuple[int, int]:
        """Smallest and largest possible values for a set with extremes lo, hi."""
        return self.j1 * lo - self.j2 * hi, self.j1 * hi - self.j2 * lo

    def __str__(self) -> str:
        return "+".join(["A"] * self.j1) + "-A" * self.j2


def forms_of_order(j: int, canonical: bool = False) -> list[LinearForm]:
    """All forms with ``j1 + j2 == j``; with ``canonical`` only those with ``j1 >= j2``."""
    return [LinearForm(j - j2, j2) for j2 in range(j + 1) if not canonical or j - j2 >= j2]


def make_set(elements: Iterable[int]) -> IntSet:
    return IntSet(elements)


def _degenerate(op: str) -> IntSet:
    warnings.warn(f"{op} of an empty set is empty", DegenerateSetWarning, stacklevel=3)
    return IntSet()


def sumset(A: IntSet, B: IntSet) -> IntSet:
    """``{a + b : a in A, b in B}``."""
    if not A or not B:
        return _degenerate("sumset")
    _check_window(A._lo + B._lo, A.width + B.width - 1)
    return IntSet.from_mask(A._lo + B._lo, _shift_or(A._bits, B._bits))


def diffset(A: IntSet, B: IntSet) -> IntSet:
    """``{a - b : a in A, b in B}``."""
    if not A or not B:
        return _degenerate("diffset")
    return sumset(A, -B)


def eval_form(form: LinearForm, A: IntSet) -> IntSet:
    """Evaluate ``f_{j1,j2}(A)`` by iterated sumsets."""
    if not A:
        return _degenerate("eval_form")
    if form.order > MAX_FORM_ORDER:
        raise SetOverflowError(f"form order {form.order} exceeds supported maximum {MAX_FORM_ORDER}")
    lo, hi = form.span(A.min(), A.max())
    _check_window(lo, hi - lo + 1)
    neg = -A
    out = A if form.j1 else neg
    for _ in range(form.j1 - 1):
        out = sumset(out, A)
    for _ in range(form.j2 - (0 if form.j1 else 1)):
        out = sumset(out, neg)
    return out


def affine(A: IntSet, alpha: int, beta: int) -> IntSet:
    """``{alpha*x + beta : x in A}``."""
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if not A:
        return A
    if alpha == 1:
        return A.shift(beta)
    if alpha == -1:
        return (-A).shift(beta)
    return IntSet(alpha * x + beta for x in A)


def contains_interval(A: IntSet, lo: int, hi: int) -> bool:
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    full = (1 << (hi - lo + 1)) - 1
    return A.window(lo, hi) == full


# text and JSON forms

_TOKEN = re.compile(r"^(-?\d+)(?:-(-?\d+))?$")


def parse_set(text: str) -> IntSet:
    """Parse a literal such as ``"1,2,3,5,8-9,13,15-16"``.

    Ranges are inclusive; negative bounds are allowed (``"-3--1"``).
    Surrounding braces are tolerated. Whitespace is ignored.
    """
    body = re.sub(r"\s+", "", text)
    if body[:1] in "{[" and body[-1:] in "}]":
        body = body[1:-1]
    if not body:
        return IntSet()
    elems: list[int] = []
    for tok in body.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"malformed set literal token {tok!r}")
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) is not None else a
        if b < a:
            raise ValueError(f"malformed set literal: descending range {tok!r}")
        _check_window(a, b - a + 1)
        elems.extend(range(a, b + 1))
    return IntSet(elems)


def format_set(A: IntSet) -> str:
    """Canonical literal: sorted, runs of two or more written as ``a-b``."""
    parts = []
    elems = A.to_list()
    i = 0
    while i < len(elems):
        j = i
        while j + 1 < len(elems) and elems[j + 1] == elems[j] + 1:
            j += 1
        parts.append(str(elems[i]) if i == j else f"{elems[i]}-{elems[j]}")
        i = j + 1
    return ",".join(parts)


def to_json_obj(A: IntSet) -> dict:
    return {"elements": A.to_list()}


def from_json_obj(obj: dict) -> IntSet:
    return IntSet(obj["elements"])
