"""Weight-2 modular symbols for Gamma_0(N) with trivial character.

The ambient space is the Q-vector space on Manin symbols (c : d) in
P^1(Z/N) modulo the 2-term relations x + x*S = 0 and the 3-term relations
x + x*T + x*T^2 = 0, where (c : d)*S = (d : -c) and (c : d)*T = (d : -c-d).
Both signs are kept, so dim(cuspidal) = 2 * genus(X_0(N)).

Structure (bases, cuspidal and new subspaces) is always computed over Q.
Mod-ell data comes from :meth:`ModularSymbolSpace.mod_ell`, which reduces
the ell-saturated integral lattice of a rational subspace. All coefficients
of Manin symbols in the ambient basis have denominators built from 2 and
3 only, so any ell > 3 reduces cleanly.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from ..errors import InvalidInputError
from ..numth import factorize, is_prime, primes_up_to
from . import linalg as LA
from .dimensions import sturm_bound
from .heilbronn import cremona, merel
from .p1 import P1List, lift_to_sl2z, p1_list


class Cusps:
    """Gamma_0(N)-classes of cusps, found on demand.

    p1/q1 ~ p2/q2 iff s1*q2 = s2*q1 mod gcd(q1*q2, N), where p_i*s_i = 1 mod q_i.
    """

    def __init__(self, N: int):
        self.N = N
        self.reps: list[tuple[int, int, int]] = []
        self._by_gcd: dict[int, list[int]] = defaultdict(list)
        self._cache: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.reps)

    def index(self, p: int, q: int) -> int:
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0:
            p, q = -p, -q
        if q == 0:
            p = 1
        key = (p, q)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        N = self.N
        s = 1 if q == 0 else (pow(p, -1, q) if q > 1 else 0)
        d = gcd(q, N)
        for i in self._by_gcd[d]:
            _, q2, s2 = self.reps[i]
            if (s * q2 - s2 * q) % gcd(q * q2, N) == 0:
                self._cache[key] = i
                return i
        i = len(self.reps)
        self.reps.append((p, q, s))
        self._by_gcd[d].append(i)
        self._cache[key] = i
        return i


class Subspace:
    """A subspace in reduced row echelon form over Q (or Z/p)."""

    def __init__(self, rows, pivots, ambient_dim: int):
        self.rows = rows
        self.pivots = pivots
        self.ambient_dim = ambient_dim

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)


class ModularSymbolSpace:
    """Full weight-2 modular symbols space for Gamma_0(N) over Q."""

    def __init__(self, N: int):
        if N < 1:
            raise InvalidInputError("level must be >= 1")
        self.N = N
        self.p1: P1List = p1_list(N)
        self._solve_relations()
        self._hecke_cache: dict[int, list[dict]] = {}

    def __repr__(self):
        return f"ModularSymbolSpace(N={self.N}, dim={self.dimension})"

    # ---------------------------------------------------------- relations

    def _solve_relations(self):
        p1 = self.p1
        n = len(p1)
        zero = (-1, 0)
        two_term: list = [None] * n
        free: list[int] = []
        for i, (c, d) in enumerate(p1):
            if two_term[i] is not None:
                continue
            j = p1.index(d, -c)
            if j == i:
                two_term[i] = zero
                continue
            two_term[i] = (len(free), 1)
            two_term[j] = (len(free), -1)
            free.append(i)

        ech = LA.SparseEchelon(LA.QQ)
        seen = bytearray(n)
        for i, (c, d) in enumerate(p1):
            if seen[i]:
                continue
            j = p1.index(d, -c - d)
            k = p1.index(-c - d, c)
            seen[i] = seen[j] = seen[k] = 1
            row: dict[int, int] = defaultdict(int)
            for idx in (i, j, k):
                g, sign = two_term[idx]
                if sign:
                    row[g] += sign
            ech.add_row({g: v for g, v in row.items() if v})

        basis_gens = [g for g in range(len(free)) if g not in ech.pivots]
        position = {g: b for b, g in enumerate(basis_gens)}
        gen_vectors: list[dict] = []
        for g in range(len(free)):
            if g in position:
                gen_vectors.append({position[g]: 1})
            else:
                row = ech.pivots[g]
                gen_vectors.append({position[c]: -v for c, v in row.items() if c != g})
        vectors = []
        for g, sign in two_term:
            if sign == 0:
                vectors.append({})
            elif sign == 1:
                vectors.append(gen_vectors[g])
            else:
                vectors.append({b: -v for b, v in gen_vectors[g].items()})
        self.symbol_vectors: list[dict] = vectors
        self.basis_symbols: list[int] = [free[g] for g in basis_gens]

    @property
    def dimension(self) -> int:
        return len(self.basis_symbols)

    def symbol(self, c: int, d: int) -> dict:
        """Coordinates of the Manin symbol (c : d); {} if it is not a point of P^1."""
        i = self.p1.index(c, d)
        return self.symbol_vectors[i] if i >= 0 else {}

    @cached_property
    def denominator_primes(self) -> set[int]:
        primes: set[int] = set()
        for v in self.symbol_vectors:
            for x in v.values():
                if isinstance(x, Fraction) and x.denominator > 1:
                    primes.update(factorize(x.denominator).primes)
        return primes

    # ---------------------------------------------------------- boundary

    @cached_property
    def cusps(self) -> Cusps:
        self.boundary_rows  # populates the classifier
        return self._cusps

    @cached_property
    def boundary_rows(self) -> list[dict]:
        cusps = Cusps(self.N)
        rows = []
        for i in self.basis_symbols:
            c, d = self.p1[i]
            a, b, cc, dd = lift_to_sl2z(c, d, self.N)
            row: dict[int, int] = defaultdict(int)
            row[cusps.index(a, cc)] += 1
            row[cusps.index(b, dd)] -= 1
            rows.append({k: v for k, v in row.items() if v})
        self._cusps = cusps
        return rows

    # ---------------------------------------------------------- subspaces

    @cached_property
    def cuspidal(self) -> Subspace:
        kernel = LA.left_kernel(self.boundary_rows, len(self.cusps))
        rows, pivots = LA.dense_echelon(kernel, self.dimension)
        return Subspace(rows, pivots, self.dimension)

    def _zero_to(self, p: int, q: int) -> dict:
        """Coordinates of {0, p/q} via the convergents 0/1, 1/0, p_0/q_0, ..., p/q."""
        acc: dict = defaultdict(int)
        P0, Q0, P1, Q1 = 0, 1, 1, 0
        chain = []
        if q != 0:
            a, b = p, q
            if b < 0:
                a, b = -a, -b
            while b:
                k = a // b
                a, b = b, a - k * b
                P0, Q0, P1, Q1 = P1, Q1, k * P1 + P0, k * Q1 + Q0
                chain.append((P0, Q0, P1, Q1))
        pairs = [(0, 1, 1, 0)] + chain
        for pp, qq, pk, qk in pairs:
            D = pk * qq - pp * qk
            for k, x in self.symbol(D * qk, qq).items():
                acc[k] += x
        return acc

    def modular_symbol(self, alpha: tuple[int, int], beta: tuple[int, int]) -> dict:
        """Coordinates of {alpha, beta}, cusps given as (numerator, denominator)."""
        acc = self._zero_to(*beta)
        for k, x in self._zero_to(*alpha).items():
            acc[k] -= x
        return {k: LA.QQ.norm(x) for k, x in acc.items() if x != 0}

    def degeneracy_rows(self, M: int, t: int) -> list[dict]:
        """Map to level M induced by {a, b} -> {t a, t b}; needs M * t | N."""
        if self.N % (M * t):
            raise InvalidInputError(f"M*t = {M * t} must divide N = {self.N}")
        target = ambient(M)
        rows = []
        for i in self.basis_symbols:
            c, d = self.p1[i]
            if t == 1:
                rows.append(dict(target.symbol(c, d)))
                continue
            a, b, cc, dd = lift_to_sl2z(c, d, self.N)
            rows.append(target.modular_symbol((t * b, dd), (t * a, cc)))
        return rows

    @cached_property
    def new(self) -> Subspace:
        """Cuspidal subspace intersected with the kernels of both degeneracy maps to every N/q."""
        stacked = [dict(r) for r in self.boundary_rows]
        offset = len(self.cusps)
        for q in factorize(self.N).primes:
            M = self.N // q
            dimM = ambient(M).dimension
            for t in (1, q):
                for row, extra in zip(stacked, self.degeneracy_rows(M, t)):
                    for k, x in extra.items():
                        row[offset + k] = x
                offset += dimM
        kernel = LA.left_kernel(stacked, offset)
        rows, pivots = LA.dense_echelon(kernel, self.dimension)
        return Subspace(rows, pivots, self.dimension)

    def subspace(self, which: str) -> Subspace:
        if which == "ambient":
            return Subspace(LA.identity(self.dimension), list(range(self.dimension)), self.dimension)
        if which in ("cuspidal", "new"):
            return getattr(self, which)
        raise InvalidInputError(f"unknown subspace {which!r}")

    # ---------------------------------------------------------- Hecke

    def heilbronn_set(self, p: int, convention: str = "auto"):
        if convention == "merel" or (convention == "auto" and self.N % p == 0):
            return merel(p)
        if convention in ("cremona", "auto"):
            if self.N % p == 0:
                raise InvalidInputError("Cremona's set only gives T_p for p not dividing N")
            return cremona(p)
        raise InvalidInputError(f"unknown convention {convention!r}")

    def hecke_ambient(self, p: int, convention: str = "auto") -> list[dict]:
        """Sparse rows of T_p (U_p when p | N) on the ambient basis."""
        if not is_prime(p):
            raise InvalidInputError(f"{p} is not prime")
        if convention == "auto" and p in self._hecke_cache:
            return self._hecke_cache[p]
        mats = self.heilbronn_set(p, convention)
        index, vectors = self.p1.index, self.symbol_vectors
        rows = []
        for i in self.basis_symbols:
            c, d = self.p1[i]
            acc: dict = defaultdict(int)
            for a, b, cc, dd in mats:
                j = index(c * a + d * cc, c * b + d * dd)
                if j >= 0:
                    for k, x in vectors[j].items():
                        acc[k] += x
            rows.append({k: LA.QQ.norm(x) for k, x in acc.items() if x != 0})
        if convention == "auto":
            self._hecke_cache[p] = rows
        return rows

    def hecke_matrix(self, p: int, which: str = "cuspidal", convention: str = "auto"):
        """Dense matrix of T_p on the echelon basis of a subspace (row-vector convention)."""
        V = self.subspace(which)
        T = self.hecke_ambient(p, convention)
        out = []
        for r in V.rows:
            w = LA.sparse_vec_matrix(r, T)
            dense = [w.get(j, 0) for j in range(self.dimension)]
            out.append(LA.solve_in_echelon(dense, V.rows, V.pivots))
        return out

    def sturm_bound(self) -> int:
        return sturm_bound(self.N)

    def mod_ell(self, ell: int, which: str = "new") -> "ReducedSpace":
        return ReducedSpace(self, ell, which)


@lru_cache(maxsize=32)
def ambient(N: int) -> ModularSymbolSpace:
    return ModularSymbolSpace(N)


def saturate(rows: list[list[int]], ell: int) -> list[list[int]]:
    """ell-saturate an integer lattice: the result spans (Q-span) cap Z_(ell)^n."""
    B = [list(r) for r in rows]
    while True:
        K = LA.left_kernel_mod([[x % ell for x in r] for r in B], ell)
        if not K:
            return B
        c = K[0]
        i = next(j for j, x in enumerate(c) if x)
        inv = pow(c[i], -1, ell)
        c = [x * inv % ell for x in c]
        combo = [sum(cj * B[j][k] for j, cj in enumerate(c) if cj) for k in range(len(B[0]))]
        assert all(x % ell == 0 for x in combo)
        B[i] = [x // ell for x in combo]


class ReducedSpace:
    """Reduction mod ell of the ell-saturated lattice in a rational subspace.

    Hecke operators are reduced from the rational ambient operators, so
    every mod-ell eigensystem found here is the reduction of a
    characteristic-zero eigensystem on that subspace.
    """

    def __init__(self, space: ModularSymbolSpace, ell: int, which: str = "new"):
        if not is_prime(ell) or (6 * space.N) % ell == 0:
            raise InvalidInputError(f"ell={ell} must be a prime not dividing 6N = {6 * space.N}")
        if not space.denominator_primes <= {2, 3}:
            raise AssertionError(f"unexpected denominators {space.denominator_primes}")
        self.space = space
        self.ell = ell
        self.which = which
        V = space.subspace(which)
        lattice = saturate([LA.clear_denominators(r) for r in V.rows], ell) if V.rows else []
        self.rows, self.pivots = LA.rref_mod([[x % ell for x in r] for r in lattice], ell)
        self._cache: dict[int, list[list[int]]] = {}

    @property
    def N(self) -> int:
        return self.space.N

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def hecke_matrix(self, p: int) -> list[list[int]]:
        if p in self._cache:
            return self._cache[p]
        ell = self.ell
        T = [{k: LA.reduce_rational(x, ell) for k, x in row.items()} for row in self.space.hecke_ambient(p)]
        out = []
        for r in self.rows:
            acc = [0] * self.space.dimension
            for i, coef in enumerate(r):
                if coef:
                    for k, x in T[i].items():
                        acc[k] += coef * x
            acc = [x % ell for x in acc]
            out.append(LA.solve_in_echelon(acc, self.rows, self.pivots, ell))
        self._cache[p] = out
        return out

    def hecke_primes(self, bound: int | None = None) -> list[int]:
        B = bound if bound is not None else sturm_bound(self.N)
        return [p for p in primes_up_to(B) if p != self.ell]


def build_space(N: int, ell: int | None = None, which: str = "new"):
    """Rational space at level N, or its reduction mod ``ell`` (requires ell not dividing 6N)."""
    space = ambient(N)
    if ell is None:
        return space
    return space.mod_ell(ell, which)


def p1_size(N: int) -> int:
    return len(p1_list(N))
