"""Exact linear algebra for the modular symbols engine.

Two flavours:

* sparse rows (``dict`` column -> value) over Q or Z/p, for relation
  solving and kernels of the large, very sparse structural maps;
* dense ``list[list[int]]`` matrices mod a prime, plus a generic dense
  layer over any finite field ``K`` for the small eigenvector problems.

Matrices act on row vectors throughout: a vector v maps to v * A.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd, lcm


class Rationals:
    """Coefficient ring Q, elements are ``int`` or ``Fraction``."""

    characteristic = 0

    def norm(self, x):
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        return Fraction(1, 1) / x

    def __repr__(self):
        return "QQ"


class IntegersMod:
    """Coefficient ring Z/p for a prime p, elements are ``int`` in [0, p)."""

    def __init__(self, p: int):
        self.characteristic = p

    def norm(self, x):
        return x % self.characteristic

    def inv(self, x):
        return pow(x, -1, self.characteristic)

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = Rationals()


def reduce_rational(x, p: int) -> int:
    """Image of a p-integral rational in Z/p."""
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} is not {p}-integral")
        return x.numerator * pow(x.denominator, -1, p) % p
    return x % p


class SparseEchelon:
    """Incremental Gauss-Jordan elimination on sparse rows.

    Pivot rows are kept fully reduced: each contains exactly one pivot
    column (with coefficient 1). New pivots are chosen to minimise
    fill-in, i.e. the candidate column occurring in the fewest stored rows.
    """

    def __init__(self, ring=QQ):
        self.ring = ring
        self.pivots: dict[int, dict] = {}
        self._occurs: dict[int, set[int]] = defaultdict(set)

    def _axpy(self, target: dict, target_key, source: dict, coef):
        """target -= coef * source, maintaining the occurrence index."""
        norm = self.ring.norm
        for c, v in source.items():
            new = norm(target.get(c, 0) - coef * v)
            if new == 0:
                if c in target:
                    del target[c]
                    if target_key is not None:
                        self._occurs[c].discard(target_key)
            else:
                if c not in target and target_key is not None:
                    self._occurs[c].add(target_key)
                target[c] = new

    def reduce(self, row: dict) -> dict:
        r = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in r if c in self.pivots]:
            coef = r.get(c, 0)
            if coef:
                self._axpy(r, None, self.pivots[c], coef)
        return r

    def add_row(self, row: dict) -> int | None:
        """Insert a row; returns the new pivot column, or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        occurs = self._occurs
        p = min(r, key=lambda c: (len(occurs.get(c, ())), c))
        inv = self.ring.inv(r[p])
        norm = self.ring.norm
        r = {c: norm(v * inv) for c, v in r.items()}
        for q in list(occurs.get(p, ())):
            prow = self.pivots[q]
            self._axpy(prow, q, r, prow[p])
        occurs.pop(p, None)
        self.pivots[p] = r
        for c in r:
            if c != p:
                occurs[c].add(p)
        return p

    @property
    def rank(self) -> int:
        return len(self.pivots)


def nullspace(rows, ncols: int, ring=QQ) -> list[dict]:
    """Basis of {x : A x = 0} for A given by sparse ``rows``; vectors as sparse dicts."""
    ech = SparseEchelon(ring)
    for row in rows:
        ech.add_row(row)
    free = [c for c in range(ncols) if c not in ech.pivots]
    col_to_pivots: dict[int, list[int]] = defaultdict(list)
    for p, r in ech.pivots.items():
        for c in r:
            if c != p:
                col_to_pivots[c].append(p)
    basis = []
    norm = ring.norm
    for f in free:
        v = {f: 1}
        for p in col_to_pivots.get(f, ()):
            v[p] = norm(-ech.pivots[p][f])
        basis.append(v)
    return basis


def transpose(rows, nrows_out: int | None = None) -> list[dict]:
    out: dict[int, dict] = defaultdict(dict)
    for i, r in enumerate(rows):
        for c, v in r.items():
            out[c][i] = v
    n = nrows_out if nrows_out is not None else (max(out) + 1 if out else 0)
    return [out.get(j, {}) for j in range(n)]


def left_kernel(rows, ncols: int, ring=QQ) -> list[dict]:
    """Basis of {v : v A = 0} where A has the given sparse rows and ``ncols`` columns."""
    return nullspace(transpose(rows, ncols), len(rows), ring)


def dense_echelon(vectors: list[dict], dim: int, ring=QQ):
    """Reduced row echelon basis (dense lists) of the span of sparse ``vectors``.

    Returns (rows, pivot_columns) with rows sorted by pivot.
    """
    ech = SparseEchelon(ring)
    for v in vectors:
        ech.add_row(v)
    pivots = sorted(ech.pivots)
    rows = []
    for p in pivots:
        r = [0] * dim
        for c, v in ech.pivots[p].items():
            r[c] = v
        rows.append(r)
    return rows, pivots


def sparse_vec_matrix(v, rows_of_matrix, ring=QQ) -> dict:
    """v * A for dense or sparse vector v and sparse matrix rows."""
    out: dict = defaultdict(int)
    items = v.items() if isinstance(v, dict) else enumerate(v)
    for i, coef in items:
        if coef:
            for c, a in rows_of_matrix[i].items():
                out[c] += coef * a
    norm = ring.norm
    return {c: norm(x) for c, x in out.items() if norm(x) != 0}


def clear_denominators(row) -> list[int]:
    """Scale a rational row to a primitive integer row."""
    den = lcm(*(x.denominator if isinstance(x, Fraction) else 1 for x in row)) if row else 1
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


# ---------------------------------------------------------------- dense mod p


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B, p: int):
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]


def mat_sub_scalar(A, c: int, p: int):
    return [[(x - c) % p if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A)]


def rref_mod(A, p: int):
    """Reduced row echelon form mod p; returns (rows, pivots) with zero rows dropped."""
    M = [list(r) for r in A]
    pivots = []
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                Mi, Mr = M[i], M[rank]
                M[i] = [(x - f * y) % p for x, y in zip(Mi, Mr)]
        pivots.append(c)
        rank += 1
    return M[:rank], pivots


def left_kernel_mod(A, p: int):
    """Basis of {v : v A = 0 mod p} for a dense n x m matrix A."""
    n = len(A)
    if n == 0:
        return []
    At = [list(col) for col in zip(*A)] if A[0] else []
    R, pivots = rref_mod(At, p)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, pc in zip(R, pivots):
            v[pc] = -r[f] % p
        basis.append(v)
    return basis


def solve_in_echelon(v, rows, pivots, p: int | None = None):
    """Coordinates of v in the basis ``rows`` (reduced echelon, ``pivots``).

    Raises ValueError if v is not in the span.
    """
    coords = [v[c] for c in pivots]
    # verify membership
    for j in range(len(v)):
        s = sum(a * r[j] for a, r in zip(coords, rows))
        if (s - v[j]) % p if p else s != v[j]:
            raise ValueError("vector is not in the span of the subspace")
    return coords


def charpoly_mod(A, p: int) -> list[int]:
    """Characteristic polynomial det(xI - A) mod p, lowest degree first.

    Reduction to upper Hessenberg form by similarity, then the standard
    recurrence on leading principal minors.
    """
    n = len(A)
    H = [[x % p for x in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            f = H[i][m - 1] * inv % p
            if f:
                Hi, Hm = H[i], H[m]
                for j in range(n):
                    Hi[j] = (Hi[j] - f * Hm[j]) % p
                for row in H:
                    row[m] = (row[m] + f * row[i]) % p
    # polys[k] = charpoly of leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        # x * polys[k-1] - H[k-1][k-1] * polys[k-1]
        prev = polys[k - 1]
        cur = [0] + prev
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - H[k - 1][k - 1] * c) % p
        prod = 1
        for i in range(1, k):
            prod = prod * H[k - i][k - i - 1] % p
            coef = prod * H[k - i - 1][k - 1] % p
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def poly_of_matrix(f, A, p: int):
    """f(A) mod p by Horner's rule; f lowest degree first."""
    n = len(A)
    R = [[0] * n for _ in range(n)]
    for c in reversed(f):
        R = mat_mul(R, A, p) if any(any(r) for r in R) else R
        for i in range(n):
            R[i][i] = (R[i][i] + c) % p
    return R


def restrict(W, T, p: int):
    """Matrix of v -> v T on the invariant subspace with echelon basis W (rows), mod p."""
    Wr, pivots = rref_mod(W, p)
    images = mat_mul(Wr, T, p)
    return Wr, [solve_in_echelon(v, Wr, pivots, p) for v in images]


# ------------------------------------------------------- dense over any field K


def rref_field(A, K):
    M = [list(r) for r in A]
    pivots = []
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if not K.is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = K.inv(M[rank][c])
        M[rank] = [K.mul(x, inv) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and not K.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(M[i], M[rank])]
        pivots.append(c)
        rank += 1
    return M[:rank], pivots


def left_kernel_field(A, K):
    n = len(A)
    if n == 0:
        return []
    At = [list(col) for col in zip(*A)]
    R, pivots = rref_field(At, K)
    basis = []
    for f in (j for j in range(n) if j not in pivots):
        v = [K.zero] * n
        v[f] = K.one
        for r, pc in zip(R, pivots):
            v[pc] = K.neg(r[f])
        basis.append(v)
    return basis


def mat_mul_field(A, B, K):
    if not A:
        return []
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = K.zero
            for a, b in zip(row, col):
                if not K.is_zero(a) and not K.is_zero(b):
                    acc = K.add(acc, K.mul(a, b))
            new.append(acc)
        out.append(new)
    return out
