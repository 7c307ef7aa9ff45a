"""Integer arithmetic: primality, factorization, orders and residue symbols."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from ..errors import InvalidInputError

TRIAL_DIVISION_LIMIT = 10**6
RHO_ITERATION_BUDGET = 2_000_000
MILLER_RABIN_ROUNDS = 64

# First 12 primes are a deterministic witness set for n < 3.3e24 > 2^64.
_DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=8)
def primes_up_to(limit: int) -> tuple[int, ...]:
    """Sieve of Eratosthenes; returns all primes <= limit."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n: int) -> str:
    """Classify ``n`` as ``"prime"``, ``"probable-prime"`` or ``"composite"``.

    Below 2^64 the Miller-Rabin test with a fixed witness set is a proof.
    Above it, 64 rounds with witnesses drawn from an RNG seeded by ``n``
    (so the answer is reproducible) only give a probable prime.
    """
    if n < 2:
        return "composite"
    for p in _DETERMINISTIC_WITNESSES:
        if n == p:
            return "prime"
        if n % p == 0:
            return "composite"
    if n < 2**64:
        ok = all(_strong_probable_prime(n, a) for a in _DETERMINISTIC_WITNESSES)
        return "prime" if ok else "composite"
    rng = random.Random(n)
    for _ in range(MILLER_RABIN_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1)):
            return "composite"
    return "probable-prime"


def is_prime(n: int) -> bool:
    return primality(n) != "composite"


def next_prime(n: int) -> int:
    n = max(n + 1, 2)
    while not is_prime(n):
        n += 1
    return n


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``n``, possibly incomplete.

    ``factors`` are (prime, exponent) pairs sorted by prime; ``cofactors``
    holds composite parts that resisted factoring within the budget, and
    ``probable`` lists the primes only certified as probable primes.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    cofactors: tuple[int, ...] = ()
    probable: tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.cofactors

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        for c in self.cofactors:
            out *= c
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __str__(self):
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        parts += [f"[composite {c}]" for c in self.cofactors]
        return " * ".join(parts) or "1"


def _pollard_brent(n: int, c: int, budget: int, seed: int) -> int | None:
    """Brent's cycle-finding variant of Pollard rho. Returns a proper factor or None."""
    rng = random.Random(seed)
    y, m, g, r, q = rng.randrange(1, n), 128, 1, 1, 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > budget:
            return None
    if g == n:
        # Backtrack one step at a time from the saved position.
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g if 1 < g < n else None


def _split(n: int, budget: int) -> int | None:
    for c in range(1, 9):
        f = _pollard_brent(n, c, budget // 8, seed=n ^ c)
        if f:
            return f
    return None


def factorize(n: int, *, rho_budget: int = RHO_ITERATION_BUDGET) -> Factorization:
    """Factor ``n`` by trial division to 10^6 followed by Pollard-Brent rho.

    Composite parts that survive the rho budget are returned as cofactors
    instead of looping forever; check ``Factorization.complete``.
    """
    if n < 1:
        raise InvalidInputError(f"factorize expects a positive integer, got {n}")
    counts: dict[int, int] = {}
    m = n
    for p in primes_up_to(TRIAL_DIVISION_LIMIT):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    probable: set[int] = set()
    cofactors: list[int] = []
    stack = [m] if m > 1 else []
    while stack:
        x = stack.pop()
        kind = primality(x)
        if kind != "composite":
            counts[x] = counts.get(x, 0) + 1
            if kind == "probable-prime":
                probable.add(x)
            continue
        r = isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        f = _split(x, rho_budget)
        if f is None:
            cofactors.append(x)
        else:
            stack += [f, x // f]
    return Factorization(
        n=n,
        factors=tuple(sorted(counts.items())),
        cofactors=tuple(sorted(cofactors)),
        probable=tuple(sorted(probable)),
    )


def mod_pow(base: int, exp: int, m: int) -> int:
    if m < 2:
        raise InvalidInputError("modulus must be at least 2")
    if exp < 0:
        raise InvalidInputError("exponent must be non-negative")
    return pow(base, exp, m)


def euler_phi(m: int) -> int:
    if m < 1:
        raise InvalidInputError("euler_phi expects m >= 1")
    out = m
    for p, _ in factorize(m).factors:
        out = out // p * (p - 1)
    return out


def carmichael_lambda(m: int) -> int:
    from math import lcm

    out = 1
    for p, e in factorize(m).factors:
        if p == 2 and e >= 3:
            out = lcm(out, 2 ** (e - 2))
        else:
            out = lcm(out, (p - 1) * p ** (e - 1))
    return out


def multiplicative_order(a: int, m: int) -> int:
    """Least e >= 1 with a^e = 1 (mod m)."""
    if m < 1:
        raise InvalidInputError("modulus must be positive")
    if gcd(a, m) != 1:
        raise InvalidInputError(f"{a} is not a unit modulo {m}")
    if m == 1:
        return 1
    e = carmichael_lambda(m)
    for p, _ in factorize(e).factors:
        while e % p == 0 and pow(a, e // p, m) == 1:
            e //= p
    return e


def _has_cyclic_units(m: int) -> bool:
    if m in (1, 2, 4):
        return True
    fac = factorize(m).factors
    odd = [(p, k) for p, k in fac if p != 2]
    two = dict(fac).get(2, 0)
    return len(odd) == 1 and two <= 1


def is_primitive_root(a: int, m: int) -> bool:
    if not _has_cyclic_units(m):
        raise InvalidInputError(f"(Z/{m})^* is not cyclic")
    if gcd(a, m) != 1:
        raise InvalidInputError(f"{a} is not a unit modulo {m}")
    return multiplicative_order(a, m) == euler_phi(m)


def smallest_primitive_root(m: int) -> int:
    for g in range(1, m + 1):
        if gcd(g, m) == 1 and is_primitive_root(g, m):
            return g
    raise InvalidInputError(f"no primitive root modulo {m}")


def quadratic_residue_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise InvalidInputError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def prime_power_decomposition(m: int) -> tuple[int, int] | None:
    """Return (p, k) when m = p^k with k >= 1, else None."""
    fac = factorize(m).factors if m > 1 else ()
    return fac[0] if len(fac) == 1 else None


def discrete_log(a: int, g: int, m: int, order: int) -> int:
    """Solve g^x = a (mod m), where ``g`` has multiplicative order ``order``.

    Pohlig-Hellman over the prime-power parts of ``order``; each prime-power
    step is brute force, which is fine for the small primes dividing
    phi(t^u) here.
    """
    a %= m
    x, modulus = 0, 1
    for q, e in factorize(order).factors:
        qe = q**e
        gq = pow(g, order // qe, m)  # generator of the order-q^e subgroup
        aq = pow(a, order // qe, m)
        gamma = pow(gq, qe // q, m)  # order q
        xq = 0
        for k in range(e):
            h = pow(aq * pow(gq, -xq, m), qe // q ** (k + 1), m)
            d, cur = 0, 1
            while cur != h:
                cur = cur * gamma % m
                d += 1
                if d >= q:
                    raise InvalidInputError(f"{a} is not a power of {g} modulo {m}")
            xq += d * q**k
        # combine x = xq mod qe with accumulated solution by CRT
        t = ((xq - x) * pow(modulus, -1, qe)) % qe
        x += modulus * t
        modulus *= qe
    return x % order


def cyclotomic_value(d: int, x: int) -> int:
    """Evaluate the d-th cyclotomic polynomial at the integer x (|x| >= 2)."""
    num, den = 1, 1
    for e in divisors(d):
        mu = mobius(d // e)
        if mu == 1:
            num *= x**e - 1
        elif mu == -1:
            den *= x**e - 1
    q, r = divmod(num, den)
    assert r == 0
    return q


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def mobius(n: int) -> int:
    fac = factorize(n).factors
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1
