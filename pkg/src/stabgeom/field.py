"""Finite fields F_q, q = p^e, with elements encoded as integers 0..q-1.

For e > 1 an element is the base-p digit string of its polynomial
representative modulo the field's irreducible polynomial (lowest degree
digit first).  Multiplication goes through discrete log/exp tables built
from a primitive element.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .errors import NoModulusAvailable, NotPrime, UnsupportedSize

MAX_ORDER = 2**16

# Monic irreducible moduli, coefficients listed from x^0 up to x^e.
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (2, 1, 1),        # x^2 + x + 2
    (3, 3): (1, 2, 0, 1),     # x^3 + 2x + 1
    (5, 2): (2, 1, 1),        # x^2 + x + 2
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q == p**e``; raise NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    # m monic
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for t in range(dm + 1):
                a[i - dm + t] = (a[i - dm + t] - c * m[t]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = tuple(low) + (1,)
            if not any(_poly_mod(list(modulus), divisor, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    q: int
    modulus: tuple[int, ...] = ()
    _add: tuple = field(default=(), repr=False, compare=False)
    _mul: tuple = field(default=(), repr=False, compare=False)
    _neg: tuple = field(default=(), repr=False, compare=False)
    _inv: tuple = field(default=(), repr=False, compare=False)

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def __str__(self) -> str:
        return f"GF({self.q})"


def _build_tables(p: int, e: int, modulus: tuple[int, ...]):
    q = p**e

    def digits(a: int) -> list[int]:
        out = []
        for _ in range(e):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def encode(ds) -> int:
        return sum(d * p**i for i, d in enumerate(ds))

    add = tuple(
        tuple(encode((x + y) % p for x, y in zip(digits(a), digits(b)))
              for b in range(q))
        for a in range(q)
    )
    neg = tuple(encode(-x % p for x in digits(a)) for a in range(q))

    def slow_mul(a: int, b: int) -> int:
        da, db = digits(a), digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        return encode(_poly_mod(prod, modulus, p))

    # find a primitive element, then fill log/exp tables
    for g in range(2, q):
        exp = [1]
        while len(exp) < q - 1:
            exp.append(slow_mul(exp[-1], g))
        if len(set(exp)) == q - 1:
            break
    else:  # pragma: no cover - every finite field has a primitive element
        raise AssertionError("no primitive element found")
    log = {v: i for i, v in enumerate(exp)}
    mul = tuple(
        tuple(0 if a == 0 or b == 0 else exp[(log[a] + log[b]) % (q - 1)]
              for b in range(q))
        for a in range(q)
    )
    inv = (0,) + tuple(exp[-log[a] % (q - 1)] for a in range(1, q))
    return add, mul, neg, inv


@functools.lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> FieldSpec:
    """Return the field with ``p**e`` elements.

    Extension fields are only available for the built-in moduli
    (q in {4, 8, 9, 16, 25, 27}).
    """
    if not is_prime(p):
        raise NotPrime(f"characteristic {p} is not prime")
    if e < 1:
        raise UnsupportedSize(f"extension degree must be >= 1, got {e}")
    q = p**e
    if q > MAX_ORDER:
        raise UnsupportedSize(f"q = {q} exceeds the limit {MAX_ORDER}")
    if e == 1:
        return FieldSpec(p, 1, p)
    modulus = BUILTIN_MODULI.get((p, e))
    if modulus is None:
        raise NoModulusAvailable(f"no built-in irreducible polynomial for GF({p}^{e})")
    if not is_irreducible(modulus, p):  # pragma: no cover - table is fixed
        raise NoModulusAvailable(f"built-in modulus for GF({p}^{e}) is reducible")
    add, mul, neg, inv = _build_tables(p, e, modulus)
    return FieldSpec(p, e, q, modulus, add, mul, neg, inv)


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return field_make(p, e)


GF2 = field_make(2)
