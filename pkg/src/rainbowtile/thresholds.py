"""Exact threshold coefficients for perfect rainbow K_r tilings.

The r = 4 coefficient (2 + sqrt(13/2))/5 is irrational; it is carried as a
surd and compared by squaring integers, never through floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass(frozen=True)
class Surd:
    """Value ``(a + b*sqrt(c)) / d`` with rational coefficients and d > 0."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __str__(self):
        return f"({self.a}+{self.b}*sqrt({self.c}))/{self.d}"

    def decimal(self, places: int) -> str:
        """Exact rounding (half up) to ``places`` decimals."""
        scale = 10 ** (places + 10)
        # floor(b*sqrt(c)*scale) via integer square root
        c = self.c
        inner = (self.b * self.b * c * scale * scale)
        root = isqrt(inner.numerator // inner.denominator)
        val = (Fraction(self.a) * scale + root) / self.d
        q = int(val) // 10 ** 10
        rem = int(val) % 10 ** 10
        if rem >= 5 * 10 ** 9:
            q += 1
        s = str(q).rjust(places + 1, "0")
        return f"{s[:-places]}.{s[-places:]}"

    def le_ratio(self, num: int, den: int) -> bool:
        """True if this value <= num/den (b >= 0 assumed)."""
        # (a + b sqrt c)/d <= x  <=>  b sqrt c <= x d - a
        rhs = Fraction(num, den) * self.d - self.a
        if rhs < 0:
            return False
        return self.b * self.b * self.c <= rhs * rhs


R4 = Surd(Fraction(2), Fraction(1), Fraction(13, 2), Fraction(5))


def tiling_coefficient(r: int):
    """Colour-degree coefficient above which perfect rainbow K_r tilings exist
    (asymptotically): 5/6, (2+sqrt(13/2))/5, or 1 - 1/((2r-3)r)."""
    if r < 3:
        raise ValueError("r must be at least 3")
    if r == 3:
        return Fraction(5, 6)
    if r == 4:
        return R4
    return 1 - Fraction(1, (2 * r - 3) * r)


def conjecture_coefficient(r: int) -> Fraction:
    if r < 3:
        raise ValueError("r must be at least 3")
    return 1 - Fraction(r - 1, r * r - 2)


def meets(coef, degree: int, n: int) -> bool:
    """degree >= coef * n, exactly."""
    if isinstance(coef, Surd):
        return coef.le_ratio(degree, n)
    return Fraction(degree) >= coef * n


def min_out_degree_threshold(r: int, n: int) -> int:
    """Smallest integer degree d with d >= coefficient(r) * n."""
    coef = tiling_coefficient(r)
    return next(d for d in range(n + 1) if meets(coef, d, n)) if n else 0


def min_degree_for(coef, n: int) -> int:
    return next(d for d in range(n + 2) if meets(coef, d, n))
