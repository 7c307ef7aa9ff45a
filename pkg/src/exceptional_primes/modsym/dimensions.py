"""Closed-form invariants of Gamma_0(N): index, elliptic points, cusps, genus, Sturm bound.

These are computed from the factorization of N alone and serve as
independent oracles for the linear-algebra side of the engine.
"""

from __future__ import annotations

from math import ceil, gcd

from ..numth import divisors, euler_phi, factorize


def index_gamma0(N: int) -> int:
    """[SL2(Z) : Gamma_0(N)] = N * prod_{p | N} (1 + 1/p)."""
    out = N
    for p, _ in factorize(N).factors:
        out = out // p * (p + 1)
    return out


def _kronecker_minus4(p: int) -> int:
    return 0 if p == 2 else (1 if p % 4 == 1 else -1)


def _kronecker_minus3(p: int) -> int:
    if p == 3:
        return 0
    if p == 2:
        return -1
    return 1 if p % 3 == 1 else -1


def elliptic_points(N: int) -> tuple[int, int]:
    """(nu_2, nu_3): numbers of elliptic points of order 2 and 3."""
    fac = factorize(N).factors
    nu2 = 0 if N % 4 == 0 else _prod(1 + _kronecker_minus4(p) for p, _ in fac)
    nu3 = 0 if N % 9 == 0 else _prod(1 + _kronecker_minus3(p) for p, _ in fac)
    return nu2, nu3


def cusp_count(N: int) -> int:
    return sum(euler_phi(gcd(d, N // d)) for d in divisors(N))


def genus_X0(N: int) -> int:
    """g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2."""
    if N < 1:
        raise ValueError("level must be >= 1")
    mu = index_gamma0(N)
    nu2, nu3 = elliptic_points(N)
    twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusp_count(N)
    assert twelve_g % 12 == 0
    return twelve_g // 12


def sturm_bound(N: int, weight: int = 2) -> int:
    """ceil(k * mu / 12); for weight 2 this is ceil(mu / 6)."""
    return max(ceil(weight * index_gamma0(N) / 12), 1)


def newform_dimension(N: int) -> int:
    """dim S_2^new(Gamma_0(N)), by inverting dim S_2(N) = sum_{M | N} new(M) * sigma_0(N/M)."""
    new: dict[int, int] = {}
    for M in divisors(N):
        old = sum(new[L] * len(divisors(M // L)) for L in divisors(M) if L != M)
        new[M] = genus_X0(M) - old
    return new[N]


def _prod(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out
