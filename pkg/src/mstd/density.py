"""The density sum S(a,b,c;r) behind the C/r^4 family bound.

    S(a,b,c;r) = sum_{k=n}^{floor(r/4)} 2^(-a k) * (1 - 2^(-b k))^(r/(c k))

Summands are evaluated in log space, with log1p for the second factor, and
summed with ``math.fsum``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class DensityParams:
    a: float
    b: float
    c: float
    n: int
    r: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.c > 0):
            raise ValueError("a, b, c must be positive")
        if self.n < 1:
            raise ValueError("sum start n must be a positive integer")
        if self.r < 4 * self.n:
            raise ValueError(f"need r >= 4n so the range [n, r/4] is nonempty (r={self.r}, n={self.n})")

    @property
    def k_max(self) -> int:
        return int(math.floor(self.r / 4))

    def ks(self) -> range:
        return range(self.n, self.k_max + 1)

    @classmethod
    def family(cls, n: int, r: float) -> "DensityParams":
        """Parameters of the MSTD family count: a=2, b=c=1/2."""
        return cls(2.0, 0.5, 0.5, n, r)


def log_summand(p: DensityParams, k: int) -> float:
    return -p.a * k * LOG2 + (p.r / (p.c * k)) * math.log1p(-(2.0 ** (-p.b * k)))


def summand(p: DensityParams, k: int) -> float:
    return math.exp(log_summand(p, k))


def eval_S(p: DensityParams) -> float:
    return math.fsum(summand(p, k) for k in p.ks())


def bound_envelope(p: DensityParams, epsilon: float) -> tuple[float, float]:
    """Shapes r^(-a/b) and (log r)^(2a+eps) r^(-a/b) of the two-sided bound, no constants."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    lower = p.r ** (-p.a / p.b)
    return lower, math.log(p.r) ** (2 * p.a + epsilon) * lower


def refined_lower_shape(p: DensityParams) -> float:
    """(log r / r)^(a/b), the size of the largest summand up to a constant."""
    return (math.log(p.r) / p.r) ** (p.a / p.b)


def argmax_summand(p: DensityParams) -> tuple[int, float]:
    """Largest summand over [n, floor(r/4)]; ties go to the smallest k."""
    best_k = p.n
    best = log_summand(p, best_k)
    for k in p.ks():
        v = log_summand(p, k)
        if v > best:
            best_k, best = k, v
    return best_k, math.exp(best)


def predicted_umax(p: DensityParams) -> float:
    """First-order solution u = (C r b / log(C r))^(1/b) of u^b log u = C r, C = b log 2/(a c).

    The summand's maximizing k is roughly log2 of this.
    """
    C = p.b * LOG2 / (p.a * p.c)
    cr = C * p.r
    if cr <= 1:
        raise ValueError(f"C*r = {cr:.4g} must exceed 1")
    return (cr * p.b / math.log(cr)) ** (1.0 / p.b)


def density_rows(n: int, exponents, a=2.0, b=0.5, c=0.5, epsilon=0.1) -> list[dict]:
    """One row per r = 2^e, for plotting S against its bound shapes."""
    rows = []
    for e in exponents:
        p = DensityParams(a, b, c, n, 2**e)
        lo, hi = bound_envelope(p, epsilon)
        k_star, _ = argmax_summand(p)
        try:
            umax = math.log2(predicted_umax(p))
        except ValueError:
            umax = float("nan")
        rows.append(
            {
                "r": p.r,
                "S": eval_S(p),
                "lower_shape": lo,
                "upper_shape": hi,
                "k_star": k_star,
                "predicted_log2_umax": umax,
            }
        )
    return rows
