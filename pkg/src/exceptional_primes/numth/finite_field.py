"""Finite fields F_q, q = p^k.

Fields are built by :func:`GF`, which fixes F_{p^k} = F_p[x]/(m(x)) with
m the lexicographically least monic irreducible polynomial of degree k
(coefficients compared from x^(k-1) down to x^0). Any two runs, and any
two implementations following the same rule, therefore agree on the
representation of every element.

Algorithms work on *raw* elements (``int`` for prime fields, a k-tuple of
ints, lowest degree first, for extensions) through the field's methods.
:class:`FFElement` wraps a raw element with its field for the public API.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property, lru_cache
from math import gcd

from ..errors import InvalidInputError
from . import polynomials as P
from .integers import factorize, is_prime


class _FieldBase:
    characteristic: int
    degree: int
    order: int

    def __call__(self, value) -> "FFElement":
        if isinstance(value, FFElement):
            if value.field is not self:
                raise InvalidInputError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FFElement(self, self.from_int(value))
        return FFElement(self, self.from_coeffs(value))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def random(self, rng: random.Random):
        return self.from_coeffs([rng.randrange(self.characteristic) for _ in range(self.degree)])

    def element_order(self, a, multiple: int | None = None) -> int:
        """Multiplicative order of a; ``multiple`` is any known exponent with a^multiple = 1."""
        if self.is_zero(a):
            raise InvalidInputError("zero has no multiplicative order")
        e = self.order - 1 if multiple is None else multiple
        if self.pow(a, e) != self.one:
            raise InvalidInputError(f"element order does not divide {e}")
        fac = factorize(e)
        if not fac.complete:
            raise InvalidInputError(f"cannot certify an element order: {e} is not fully factored")
        for r, _ in fac.factors:
            while e % r == 0 and self.pow(a, e // r) == self.one:
                e //= r
        return e

    @cached_property
    def primitive_element(self):
        """Least generator of the multiplicative group, in :meth:`sort_key` order."""
        for a in self.elements():
            if not self.is_zero(a) and self.element_order(a) == self.order - 1:
                return a
        raise AssertionError("multiplicative group of a finite field is cyclic")

    def roots_of_unity(self, n: int):
        """All elements of exact multiplicative order n, sorted.

        Only n is factored: the first element x (in sort order) for which
        x^((q-1)/n) has order n generates them all.
        """
        q1 = self.order - 1
        if n < 1 or q1 % n:
            return []
        primes = factorize(n).primes
        for x in self.elements():
            if self.is_zero(x):
                continue
            z = self.pow(x, q1 // n)
            if all(self.pow(z, n // r) != self.one for r in primes):
                break
        return sorted((self.pow(z, j) for j in range(1, n + 1) if gcd(j, n) == 1), key=self.sort_key)

    def sort_key_poly(self, f):
        return tuple(self.sort_key(c) for c in reversed(f))

    def embedding_into(self, other: "_FieldBase"):
        """Deterministic field embedding self -> other as a function on raw elements."""
        return _embedding(self, other)


class PrimeField(_FieldBase):
    def __init__(self, p: int):
        if not is_prime(p):
            raise InvalidInputError(f"{p} is not prime")
        self.characteristic = self.order = p
        self.degree = 1
        self.modulus = (0, 1)
        self.zero, self.one = 0, 1

    def __repr__(self):
        return f"GF({self.characteristic})"

    def from_int(self, n: int):
        return n % self.characteristic

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > 1 and any(c % self.characteristic for c in coeffs[1:]):
            raise InvalidInputError("prime field elements have a single coefficient")
        return coeffs[0] % self.characteristic if coeffs else 0

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def neg(self, a):
        return -a % self.characteristic

    def mul(self, a, b):
        return a * b % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.characteristic)

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.characteristic)
        return pow(a, e, self.characteristic)

    def elements(self):
        return iter(range(self.characteristic))

    def sort_key(self, a):
        return a

    def coeffs(self, a):
        return (a,)


class ExtensionField(_FieldBase):
    def __init__(self, p: int, modulus):
        base = PrimeField(p)
        modulus = tuple(c % p for c in modulus)
        if modulus[-1] != 1 or not P.is_irreducible(list(modulus), base):
            raise InvalidInputError(f"{modulus} is not a monic irreducible polynomial mod {p}")
        self.base = base
        self.characteristic = p
        self.degree = len(modulus) - 1
        self.order = p**self.degree
        self.modulus = modulus
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)

    def __repr__(self):
        return f"GF({self.characteristic}^{self.degree})"

    @property
    def gen(self):
        return (0, 1) + (0,) * (self.degree - 2)

    def from_int(self, n: int):
        return (n % self.characteristic,) + (0,) * (self.degree - 1)

    def from_coeffs(self, coeffs):
        p, k = self.characteristic, self.degree
        coeffs = [c % p for c in coeffs]
        if len(coeffs) > k:
            rem = P.mod(P.trim(coeffs, self.base), list(self.modulus), self.base)
            coeffs = rem
        return tuple(coeffs) + (0,) * (k - len(coeffs))

    def add(self, a, b):
        p = self.characteristic
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.characteristic
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.characteristic
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k, m = self.characteristic, self.degree, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * m[j]
        return tuple(c % p for c in prod[:k])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def elements(self):
        p, k = self.characteristic, self.degree
        for digits in itertools.product(range(p), repeat=k):
            yield tuple(reversed(digits))

    def sort_key(self, a):
        return tuple(reversed(a))

    def coeffs(self, a):
        return a


@lru_cache(maxsize=None)
def lex_least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k over F_p, ordered by (c_{k-1}, ..., c_0)."""
    base = PrimeField(p)
    for digits in itertools.product(range(p), repeat=k):
        poly = list(reversed(digits)) + [1]
        if P.is_irreducible(poly, base):
            return tuple(poly)
    raise AssertionError("irreducible polynomials exist in every degree")


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> _FieldBase:
    """The canonical field with p^k elements (cached, so fields compare by identity)."""
    if k < 1:
        raise InvalidInputError("extension degree must be >= 1")
    if k == 1:
        return PrimeField(p)
    return ExtensionField(p, lex_least_irreducible(p, k))


@lru_cache(maxsize=None)
def _embedding_image(src: _FieldBase, dst: _FieldBase):
    if src.characteristic != dst.characteristic or dst.degree % src.degree:
        raise InvalidInputError(f"{src} does not embed in {dst}")
    if src.degree == 1:
        return None
    rts = P.roots([dst.from_int(c) for c in src.modulus], dst)
    return rts[0]


def _embedding(src, dst):
    root = _embedding_image(src, dst)
    if root is None:
        return lambda a: dst.from_int(a)

    def embed(a):
        return P.evaluate([dst.from_int(c) for c in src.coeffs(a)], root, dst)

    return embed


class FFElement:
    """An element of a finite field with arithmetic operators."""

    __slots__ = ("field", "raw")

    def __init__(self, field: _FieldBase, raw):
        self.field = field
        self.raw = raw

    def _binary(self, other, op):
        if isinstance(other, int):
            other = FFElement(self.field, self.field.from_int(other))
        elif not isinstance(other, FFElement):
            return NotImplemented
        a, b = (self, other) if other.field is self.field else common_field_pair(self, other)
        return FFElement(a.field, getattr(a.field, op)(a.raw, b.raw))

    def __add__(self, other):
        return self._binary(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, "sub")

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binary(other, "mul")

    __rmul__ = __mul__

    def __neg__(self):
        return FFElement(self.field, self.field.neg(self.raw))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return FFElement(self.field, self.field.pow(self.raw, e))

    def inverse(self) -> "FFElement":
        return FFElement(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def order(self) -> int:
        return self.field.element_order(self.raw)

    def embed(self, field: _FieldBase) -> "FFElement":
        if field is self.field:
            return self
        return FFElement(field, self.field.embedding_into(field)(self.raw))

    def coefficients(self) -> tuple[int, ...]:
        return tuple(self.field.coeffs(self.raw))

    def to_int(self) -> int:
        if self.field.degree != 1:
            c = self.coefficients()
            if any(c[1:]):
                raise InvalidInputError(f"{self} is not in the prime field")
            return c[0]
        return self.raw

    def in_prime_field(self) -> bool:
        return not any(self.coefficients()[1:])

    def __eq__(self, other):
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        if not isinstance(other, FFElement):
            return NotImplemented
        a, b = (self, other) if other.field is self.field else common_field_pair(self, other)
        return a.raw == b.raw

    def __hash__(self):
        # Elements of the prime subfield hash alike in every extension.
        if self.in_prime_field():
            return hash((self.field.characteristic, self.coefficients()[0]))
        return hash((self.field.characteristic, self.field.degree, self.raw))

    def __repr__(self):
        return f"FFElement({self})"

    def __str__(self):
        if self.field.degree == 1:
            return str(self.raw)
        terms = []
        for i, c in reversed(list(enumerate(self.raw))):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(f"{coef}*{mono}" if coef and mono else coef or mono)
        return " + ".join(terms) or "0"

    def to_json(self):
        """Integer for prime-field values, otherwise the coefficient list (lowest degree first)."""
        if self.in_prime_field():
            return self.coefficients()[0]
        return list(self.coefficients())


def common_field(*fields: _FieldBase) -> _FieldBase:
    from math import lcm

    p = {f.characteristic for f in fields}
    if len(p) != 1:
        raise InvalidInputError("fields of different characteristic")
    return GF(p.pop(), lcm(*(f.degree for f in fields)))


def common_field_pair(a: FFElement, b: FFElement):
    F = common_field(a.field, b.field)
    return a.embed(F), b.embed(F)
