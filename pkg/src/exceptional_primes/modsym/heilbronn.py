"""Sets of integer matrices of determinant n that realise Hecke operators on Manin symbols.

Matrices are tuples (a, b, c, d) for [[a, b], [c, d]]; a Manin symbol
(u : v) maps to (u*a + v*c : u*b + v*d).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import floor


@lru_cache(maxsize=None)
def merel(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Merel's set: ad - bc = n, a > b >= 0, d > c >= 0. Valid for every n, including n | N."""
    out = []
    for a in range(1, n + 1):
        q = n // a
        if q * a == n:
            d = q
            out.extend((a, b, 0, d) for b in range(a))
            out.extend((a, 0, c, d) for c in range(1, d))
        for d in range(q + 1, n + 1):
            bc = a * d - n
            for c in range(bc // a + 1, d):
                if bc % c == 0:
                    out.append((a, bc // c, c, d))
    return tuple(out)


def _round_half_away(num: int, den: int) -> int:
    """Nearest integer to num/den, ties rounded away from zero."""
    x = Fraction(num, den)
    f = floor(x)
    frac = x - f
    if frac > Fraction(1, 2) or (frac == Fraction(1, 2) and x > 0):
        return f + 1
    return f


@lru_cache(maxsize=None)
def cremona(p: int) -> tuple[tuple[int, int, int, int], ...]:
    """Cremona's continued-fraction set for a prime p; O(p log p) matrices.

    Only valid for T_p with p not dividing the level.
    """
    if p == 2:
        return ((1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2))
    out = [(1, 0, 0, p)]
    half = (p - 1) // 2
    for r in range(-half, half + 1):
        x1, x2, y1, y2, a, b = p, -r, 0, 1, -p, r
        out.append((x1, x2, y1, y2))
        while b != 0:
            q = _round_half_away(a, b)
            c = a - b * q
            a, b = -b, c
            x1, x2 = x2, q * x2 - x1
            y1, y2 = y2, q * y2 - y1
            out.append((x1, x2, y1, y2))
    return tuple(out)
