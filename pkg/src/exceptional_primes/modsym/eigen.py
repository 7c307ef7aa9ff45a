"""Hecke eigensystems mod ell on the reduced new subspace.

The space is cut into pieces that are primary for the whole Hecke algebra
by factoring characteristic polynomials of T_p (and of random linear
combinations of them). Over the field F = GF(ell^k) generated by the
eigenvalues of a piece, one joint eigenvector is found by nested
kernels. A piece is accepted only if k times the dimension of the joint
generalised eigenspace over F equals its dimension over F_ell; this
certifies that it holds exactly one Galois orbit of eigensystems.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import lcm

from ..errors import DecompositionError
from ..numth import GF, FFElement
from ..numth import polynomials as P
from . import linalg as LA
from .space import ReducedSpace, build_space


@dataclass
class Eigensystem:
    """One Galois orbit representative of a mod-ell Hecke eigensystem."""

    level: int
    ell: int
    degree: int
    ap: dict[int, FFElement]
    sturm_bound: int
    dimension: int
    semisimple: bool
    index: int = 0
    charpolys: dict[int, list[int]] = field(default_factory=dict, repr=False)

    @property
    def field(self):
        return GF(self.ell, self.degree)

    @property
    def multiplicity(self) -> int:
        return self.dimension // self.degree

    def __getitem__(self, p: int) -> FFElement:
        return self.ap[p]

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "ell": self.ell,
            "index": self.index,
            "degree": self.degree,
            "dimension": self.dimension,
            "semisimple": self.semisimple,
            "sturm_bound": self.sturm_bound,
            "ap": {str(p): a.to_json() for p, a in sorted(self.ap.items())},
        }


# ------------------------------------------------------------ splitting over F_ell


def _primary_split(W, A_full, ell):
    """Split the invariant subspace W (rows) by the primary factors of A_full restricted to W."""
    Wr, A = LA.restrict(W, A_full, ell)
    K = GF(ell)
    f = LA.charpoly_mod(A, ell)
    facs = P.factor(P.trim(list(f), K), K)
    if len(facs) <= 1:
        return [Wr], facs
    out = []
    for g, e in facs:
        h = P.product([g] * e, K)
        ker = LA.left_kernel_mod(LA.poly_of_matrix(h, A, ell), ell)
        out.append(LA.mat_mul(ker, Wr, ell))
    return out, facs


def _split_all(pieces, mats, ell):
    changed = True
    while changed:
        changed = False
        nxt = []
        for W in pieces:
            parts = [W]
            for A in mats:
                split = []
                for X in parts:
                    sub, _ = _primary_split(X, A, ell)
                    split.extend(sub)
                parts = split
            if len(parts) > 1:
                changed = True
            nxt.extend(parts)
        pieces = nxt
    return pieces


# ------------------------------------------------------------ work over GF(ell^k)


def _shift(A, beta, F):
    return [[F.sub(x, beta) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A)]


def _mat_pow_field(A, e, F):
    R = None
    B = A
    while e:
        if e & 1:
            R = B if R is None else LA.mat_mul_field(R, B, F)
        e >>= 1
        if e:
            B = LA.mat_mul_field(B, B, F)
    return R


def _kernel_in(V, M, F):
    """Rows spanning {v in span(V) : v M = 0}, with V in echelon form."""
    coords = LA.left_kernel_field(LA.mat_mul_field(V, M, F), F)
    if not coords:
        return []
    rows = LA.mat_mul_field(coords, V, F)
    return LA.rref_field(rows, F)[0]


def _lift_matrix(A, F):
    return [[F.from_int(x) for x in row] for row in A]


def eigensystems_mod_ell(
    space: ReducedSpace, bound: int | None = None, seed: int = 0, random_rounds: int = 3
) -> list[Eigensystem]:
    """All Galois orbits of Hecke eigensystems on a reduced space, with eigenvalues for p <= bound."""
    ell = space.ell
    primes = space.hecke_primes(bound)
    B = bound if bound is not None else space.space.sturm_bound()
    d = space.dimension
    if d == 0:
        return []
    mats = {p: space.hecke_matrix(p) for p in primes}
    pieces = _split_all([LA.identity(d)], [mats[p] for p in primes], ell)
    rng = random.Random(seed)
    for _ in range(random_rounds):
        combo = [[0] * d for _ in range(d)]
        for p in primes:
            c = rng.randrange(ell)
            for i in range(d):
                row, src = combo[i], mats[p][i]
                for j in range(d):
                    row[j] = (row[j] + c * src[j]) % ell
        pieces = _split_all(pieces, [combo], ell)

    found: list[Eigensystem] = []
    K = GF(ell)
    for W in pieces:
        m = len(W)
        restricted = {}
        minpolys = {}
        charpolys = {}
        for p in primes:
            Wr, A = LA.restrict(W, mats[p], ell)
            restricted[p] = A
            f = LA.charpoly_mod(A, ell)
            charpolys[p] = f
            facs = P.factor(P.trim(list(f), K), K)
            if len(facs) != 1:
                raise DecompositionError(f"piece of dimension {m} is not primary for T_{p}", piece=Wr)
            minpolys[p] = facs[0][0]
        k = lcm(*(len(g) - 1 for g in minpolys.values()))
        F = GF(ell, k)
        lifted = {p: _lift_matrix(A, F) for p, A in restricted.items()}
        V = [[F.one if i == j else F.zero for j in range(m)] for i in range(m)]
        gen = [row[:] for row in V]
        ap: dict[int, FFElement] = {}
        semisimple = True
        for p in primes:
            g = [F.from_int(c) for c in minpolys[p]]
            rts = P.roots(g, F)
            chosen = None
            for beta in rts:
                ker = _kernel_in(V, _shift(lifted[p], beta, F), F)
                if ker:
                    chosen = beta
                    V = ker
                    break
            if chosen is None:
                raise DecompositionError(f"no eigenvector for T_{p} on a piece", piece=W, partial=ap)
            ap[p] = FFElement(F, chosen)
            gen = _kernel_in(gen, _mat_pow_field(_shift(lifted[p], chosen, F), m, F), F)
            if any(any(row) for row in LA.poly_of_matrix(minpolys[p], restricted[p], ell)):
                semisimple = False
        if k * len(gen) != m:
            raise DecompositionError(
                f"piece of dimension {m} over F_{ell} is not a single Galois orbit "
                f"(degree {k}, generalised eigenspace {len(gen)})",
                piece=W,
                partial=ap,
            )
        found.append(
            Eigensystem(
                level=space.N,
                ell=ell,
                degree=k,
                ap=ap,
                sturm_bound=B,
                dimension=m,
                semisimple=semisimple,
                charpolys=charpolys,
            )
        )
    found.sort(key=lambda e: (e.degree, [e.field.sort_key(e.ap[p].embed(e.field).raw) for p in primes]))
    for i, e in enumerate(found):
        e.index = i
    return found


def eigensystems(N: int, ell: int, bound: int | None = None) -> list[Eigensystem]:
    """Eigensystems mod ell on the new subspace at level N."""
    return eigensystems_mod_ell(build_space(N, ell), bound)
