"""The projective line P^1(Z/N), the index set of Manin symbols."""

from __future__ import annotations

from array import array
from collections import namedtuple
from functools import lru_cache
from math import gcd

P1Point = namedtuple("P1Point", "c d")


class P1List:
    """All points (c : d) of P^1(Z/N) with a constant-time lookup table.

    Two pairs are equivalent when they differ by a unit of Z/N; the
    canonical representative of a class is its lexicographically least
    pair. Points are indexed in sorted order of representatives.
    """

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("level must be >= 1")
        self.N = N
        units = [u for u in range(1, N + 1) if gcd(u, N) == 1] if N > 1 else [1]
        table = array("i", [-1]) * (N * N)
        orbits = []
        for c in range(N):
            for d in range(N):
                if table[c * N + d] != -1 or gcd(gcd(c, d), N) != 1:
                    continue
                members = {((u * c) % N, (u * d) % N) for u in units}
                tag = len(orbits)
                for cc, dd in members:
                    table[cc * N + dd] = tag
                orbits.append(min(members))
        order = sorted(range(len(orbits)), key=lambda i: orbits[i])
        relabel = [0] * len(orbits)
        for new, old in enumerate(order):
            relabel[old] = new
        for i in range(N * N):
            if table[i] >= 0:
                table[i] = relabel[table[i]]
        self._table = table
        self._points = [P1Point(*orbits[i]) for i in order]

    def __len__(self):
        return len(self._points)

    def __getitem__(self, i) -> P1Point:
        return self._points[i]

    def __iter__(self):
        return iter(self._points)

    def index(self, c: int, d: int) -> int:
        """Index of the class of (c : d), or -1 if gcd(c, d, N) > 1."""
        N = self.N
        return self._table[(c % N) * N + (d % N)]

    def normalize(self, c: int, d: int) -> P1Point:
        i = self.index(c, d)
        if i < 0:
            raise ValueError(f"({c} : {d}) is not a point of P^1(Z/{self.N})")
        return self._points[i]


@lru_cache(maxsize=16)
def p1_list(N: int) -> P1List:
    return P1List(N)


def lift_to_sl2z(c: int, d: int, N: int) -> tuple[int, int, int, int]:
    """A matrix (a, b, c', d') in SL2(Z) whose bottom row is congruent to (c, d) mod N."""
    if N == 1:
        return (1, 0, 0, 1)
    c %= N
    d %= N
    if c == 0:
        c = N
    if d == 0:
        d = N
    while gcd(c, d) != 1:
        d += N
    g, x, y = _xgcd(c, d)
    # x*c + y*d = 1, so (y)(d) - (-x)(c) = 1
    return (y, -x, c, d)


def _xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0
