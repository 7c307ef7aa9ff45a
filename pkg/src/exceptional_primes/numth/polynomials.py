"""Dense univariate polynomials over a finite field.

A polynomial is a list of raw field elements, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial. Every routine takes the
field ``K`` explicitly (a ``PrimeField`` or ``ExtensionField``), which
supplies ``add``/``sub``/``mul``/``inv`` on raw elements.
"""

from __future__ import annotations

import random

from .integers import factorize


def trim(f, K):
    f = list(f)
    while f and K.is_zero(f[-1]):
        f.pop()
    return f


def degree(f) -> int:
    return len(f) - 1


def add(f, g, K):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = K.add(out[i], c)
    return trim(out, K)


def sub(f, g, K):
    return add(f, [K.neg(c) for c in g], K)


def scale(f, c, K):
    if K.is_zero(c):
        return []
    return [K.mul(a, c) for a in f]


def mul(f, g, K):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if K.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(out, K)


def divmod_(f, g, K):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv_lead = K.inv(g[-1])
    q = [K.zero] * max(len(f) - dg, 0)
    while len(r) - 1 >= dg and r:
        c = K.mul(r[-1], inv_lead)
        shift = len(r) - 1 - dg
        q[shift] = c
        for j, b in enumerate(g):
            r[shift + j] = K.sub(r[shift + j], K.mul(c, b))
        r = trim(r, K)
    return trim(q, K), r


def mod(f, g, K):
    return divmod_(f, g, K)[1]


def monic(f, K):
    if not f:
        return []
    return scale(f, K.inv(f[-1]), K)


def gcd(f, g, K):
    while g:
        f, g = g, mod(f, g, K)
    return monic(f, K)


def powmod(f, e: int, m, K):
    result = [K.one]
    base = mod(f, m, K)
    while e:
        if e & 1:
            result = mod(mul(result, base, K), m, K)
        e >>= 1
        if e:
            base = mod(mul(base, base, K), m, K)
    return result


def derivative(f, K):
    return trim([K.mul(K.from_int(i), c) for i, c in enumerate(f)][1:], K)


def evaluate(f, x, K):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def x_poly(K):
    return [K.zero, K.one]


def _frobenius_power(m, K, times: int):
    """x^(q^times) mod m."""
    x = x_poly(K)
    h = mod(x, m, K)
    for _ in range(times):
        h = powmod(h, K.order, m, K)
    return h


def is_irreducible(f, K) -> bool:
    """Rabin's test: f of degree n is irreducible iff x^(q^n) = x mod f and
    gcd(x^(q^(n/r)) - x, f) = 1 for each prime r dividing n."""
    f = monic(trim(f, K), K)
    n = degree(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = x_poly(K)
    for r, _ in factorize(n).factors:
        h = _frobenius_power(f, K, n // r)
        if degree(gcd(sub(h, x, K), f, K)) > 0:
            return False
    return mod(sub(_frobenius_power(f, K, n), x, K), f, K) == []


def _pth_root(f, K):
    # f is a polynomial in x^p; take p-th roots of coefficients.
    p = K.characteristic
    e = K.order // p
    return trim([K.pow(f[i], e) for i in range(0, len(f), p)], K)


def squarefree_decomposition(f, K):
    """Return [(g, m)] with f = lc * prod g^m and each g squarefree, coprime."""
    f = monic(f, K)
    out: list = []
    if degree(f) < 1:
        return out
    p = K.characteristic
    df = derivative(f, K)
    if not df:
        for g, m in squarefree_decomposition(_pth_root(f, K), K):
            out.append((g, m * p))
        return out
    c = gcd(f, df, K)
    w = divmod_(f, c, K)[0]
    i = 1
    while degree(w) > 0:
        y = gcd(w, c, K)
        z = divmod_(w, y, K)[0]
        if degree(z) > 0:
            out.append((z, i))
        i += 1
        w, c = y, divmod_(c, y, K)[0]
    if degree(c) > 0:
        for g, m in squarefree_decomposition(_pth_root(c, K), K):
            out.append((g, m * p))
    return out


def distinct_degree(f, K):
    """Split a monic squarefree f into [(g_d, d)], g_d the product of its degree-d factors."""
    out = []
    x = x_poly(K)
    h = mod(x, f, K)
    d = 0
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, K.order, f, K)
        g = gcd(sub(h, x, K), f, K)
        if degree(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, K)[0]
            h = mod(h, f, K)
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def _random_poly(deg: int, K, rng):
    return trim([K.random(rng) for _ in range(deg)], K)


def equal_degree(f, d: int, K, rng):
    """Cantor-Zassenhaus splitting of f, a product of distinct degree-d irreducibles."""
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = _random_poly(n, K, rng)
        if degree(a) < 1:
            continue
        if K.characteristic == 2:
            # absolute trace map a + a^2 + ... + a^(2^(m-1)), q^d = 2^m
            m = (K.order**d).bit_length() - 1
            t, b = a, mod(a, f, K)
            for _ in range(m - 1):
                t = mod(mul(t, t, K), f, K)
                b = add(b, t, K)
        else:
            b = sub(powmod(a, (K.order**d - 1) // 2, f, K), [K.one], K)
        g = gcd(b, f, K)
        if 0 < degree(g) < n:
            return equal_degree(g, d, K, rng) + equal_degree(divmod_(f, g, K)[0], d, K, rng)


def factor(f, K, seed: int = 0):
    """Factor f into monic irreducibles; returns [(g, multiplicity)] in sorted order."""
    f = trim(f, K)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out: dict[tuple, int] = {}
    for sf, m in squarefree_decomposition(f, K):
        for g, d in distinct_degree(sf, K):
            for h in equal_degree(g, d, K, rng):
                key = tuple(h)
                out[key] = out.get(key, 0) + m
    return sorted(((list(g), m) for g, m in out.items()), key=lambda gm: (len(gm[0]), K.sort_key_poly(gm[0])))


def roots(f, K, seed: int = 0):
    """All roots of f in K, sorted by the field's element order."""
    f = monic(trim(f, K), K)
    if degree(f) < 1:
        return []
    x = x_poly(K)
    lin = gcd(sub(powmod(x, K.order, f, K), x, K), f, K)
    if degree(lin) < 1:
        return []
    rng = random.Random(seed)
    facs = equal_degree(lin, 1, K, rng)
    return sorted((K.neg(g[0]) for g in facs), key=K.sort_key)


def product(polys, K):
    out = [K.one]
    for g in polys:
        out = mul(out, g, K)
    return out
