"""Finite field arithmetic for the tower F_p < F_q < F_{q^h}.

F_q = F_p[x]/(f) has its elements coded as integers ``sum(d_i * p**i)``
where ``(d_0, ..., d_{e-1})`` are the coefficients over F_p.  Arithmetic in
F_q goes through precomputed ``q x q`` tables, which keeps numpy
vectorisation available for the linear algebra layer.

F_{q^h} = F_q[y]/(g) is kept as dense coefficient tuples of length h over
F_q, i.e. coordinates over the basis 1, xi, ..., xi^(h-1) with xi the class
of y.  Expansion to F_q coordinates is therefore the identity on tuples.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# polynomials over a field given by scalar callables; coefficient lists are
# ascending and carry no trailing zeros (the zero polynomial is []).


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(F: "GF", a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([F.sub_(x, y) for x, y in zip(a, b)])


def _poly_mul(F: "GF", a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add_(out[i + j], F.mul_(x, y))
    return _trim(out)


def _poly_divmod(F: "GF", a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = F.inv_(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F.mul_(a[-1], inv_lead)
        shift = len(a) - len(b)
        quot[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = F.sub_(a[shift + j], F.mul_(c, y))
        _trim(a)
    return _trim(quot), a


def _poly_mod(F: "GF", a: list[int], b: list[int]) -> list[int]:
    return _poly_divmod(F, a, b)[1]


def _poly_gcd(F: "GF", a: list[int], b: list[int]) -> list[int]:
    while b:
        a, b = b, _poly_mod(F, a, b)
    return a


def _poly_powmod(F: "GF", a: list[int], n: int, m: list[int]) -> list[int]:
    result = [1]
    base = _poly_mod(F, a, m)
    while n:
        if n & 1:
            result = _poly_mod(F, _poly_mul(F, result, base), m)
        base = _poly_mod(F, _poly_mul(F, base, base), m)
        n >>= 1
    return result


def is_irreducible(F: "GF", poly: Sequence[int]) -> bool:
    """Irreducibility of a monic polynomial over F.

    A degree-d polynomial is irreducible iff it has no factor of degree
    <= d/2, i.e. ``gcd(poly, x^(q^i) - x) == 1`` for ``i = 1..d//2``.
    """
    poly = _trim(list(poly))
    d = len(poly) - 1
    if d < 1:
        return False
    xpow = [0, 1]
    for _ in range(d // 2):
        xpow = _poly_powmod(F, xpow, F.q, poly)
        if len(_poly_gcd(F, poly, _poly_sub(F, xpow, [0, 1]))) > 1:
            return False
    return True


def first_irreducible(F: "GF", degree: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of ``degree`` over F.

    Candidates are ordered by their ascending coefficient tuple
    ``(c_0, ..., c_{d-1})`` compared element-code-wise.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for low in itertools.product(range(F.q), repeat=degree):
        poly = list(low) + [1]
        if is_irreducible(F, poly):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class GF:
    """The field F_q = F_p[x]/(f) with integer-coded elements.

    Tables ``add``, ``sub``, ``mul`` (q x q) and ``neg``, ``inv`` (q,) are
    numpy arrays so they can be indexed with whole arrays at once.
    ``inv[0]`` is 0 and must never be used as an inverse.
    """

    def __init__(self, p: int, f: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        self.p = p
        if f is None:
            f = (0, 1)
        self.f = tuple(int(c) for c in f)
        self.e = len(self.f) - 1
        if self.e < 1 or self.f[-1] != 1:
            raise ValueError(f"f={self.f} must be monic of degree >= 1")
        self.q = p**self.e
        self._build_tables()

    @classmethod
    def of_order(cls, q: int) -> "GF":
        p, e = prime_power(q)
        f = first_irreducible(cls(p), e) if e > 1 else (0, 1)
        return cls(p, f)

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        if e == 1:
            a = np.arange(p)
            self.add = (a[:, None] + a[None, :]) % p
            self.sub = (a[:, None] - a[None, :]) % p
            self.mul = (a[:, None] * a[None, :]) % p
        else:
            prime = GF(p)
            if not is_irreducible(prime, self.f):
                raise ValueError(f"f={self.f} is not irreducible over F_{p}")
            digits = np.array([self.digits(a) for a in range(q)])
            weights = p ** np.arange(e)
            self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            self.sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights
            self.mul = np.zeros((q, q), dtype=np.int64)
            f = list(self.f)
            for a in range(q):
                pa = _trim(list(digits[a]))
                for b in range(a, q):
                    prod = _poly_mod(prime, _poly_mul(prime, pa, _trim(list(digits[b]))), f)
                    c = self.from_digits(prod)
                    self.mul[a, b] = self.mul[b, a] = c
        self.add = self.add.astype(np.int64)
        self.sub = self.sub.astype(np.int64)
        self.mul = self.mul.astype(np.int64)
        self.neg = self.sub[0].copy()
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.nonzero(self.mul[a] == 1)[0][0])
        for tab in (self.add, self.sub, self.mul, self.neg, self.inv):
            tab.setflags(write=False)

    # scalar helpers used by the polynomial code
    def add_(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def sub_(self, a: int, b: int) -> int:
        return int(self.sub[a, b])

    def mul_(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inv_(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return int(self.inv[a])

    def digits(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.e))

    def from_digits(self, ds: Sequence[int]) -> int:
        ds = list(ds) + [0] * (self.e - len(ds))
        return sum(int(d) % self.p * self.p**i for i, d in enumerate(ds))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self) -> int:
        return hash((self.p, self.f))

    def __repr__(self) -> str:
        return f"GF(p={self.p}, f={self.f})"

    def __getstate__(self) -> dict:
        return {"p": self.p, "f": self.f}

    def __setstate__(self, state: dict) -> None:
        self.__init__(state["p"], state["f"])


Elem = tuple[int, ...]


class FieldTower:
    """F_{q^h} = F_q[y]/(g) over the coded base field ``base``.

    Elements are length-h tuples of base-field codes (coordinates over
    1, xi, ..., xi^(h-1)).  Instances are immutable.
    """

    def __init__(self, base: GF, g: Sequence[int]):
        self.base = base
        self.g = tuple(int(c) for c in g)
        self.h = len(self.g) - 1
        if self.h < 1 or self.g[-1] != 1:
            raise ValueError(f"g={self.g} must be monic of degree >= 1")
        if not is_irreducible(base, self.g):
            raise ValueError(f"g={self.g} is not irreducible over F_{base.q}")

    # pass-throughs
    @property
    def p(self) -> int:
        return self.base.p

    @property
    def e(self) -> int:
        return self.base.e

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def f(self) -> tuple[int, ...]:
        return self.base.f

    @property
    def order(self) -> int:
        return self.q**self.h

    @property
    def zero(self) -> Elem:
        return (0,) * self.h

    @property
    def one(self) -> Elem:
        return (1,) + (0,) * (self.h - 1)

    @property
    def xi(self) -> Elem:
        if self.h == 1:
            # y = -g_0 in the degree-one case
            return (int(self.base.neg[self.g[0]]),)
        return tuple(1 if i == 1 else 0 for i in range(self.h))

    def basis(self) -> list[Elem]:
        return [tuple(1 if i == j else 0 for i in range(self.h)) for j in range(self.h)]

    def check(self, a: Sequence[int]) -> Elem:
        if len(a) != self.h:
            raise ValueError(f"expected {self.h} coordinates, got {len(a)}")
        if any(not 0 <= int(c) < self.q for c in a):
            raise ValueError(f"coordinate out of range in {tuple(a)}")
        return tuple(int(c) for c in a)

    def elements(self) -> Iterator[Elem]:
        """All q^h elements, last coordinate varying slowest."""
        for t in itertools.product(range(self.q), repeat=self.h):
            yield tuple(reversed(t))

    def from_base(self, c: int) -> Elem:
        return (int(c),) + (0,) * (self.h - 1)

    # arithmetic
    def add(self, a: Elem, b: Elem) -> Elem:
        t = self.base.add
        return tuple(int(t[x, y]) for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        t = self.base.sub
        return tuple(int(t[x, y]) for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        return tuple(int(self.base.neg[x]) for x in a)

    def scale(self, c: int, a: Elem) -> Elem:
        """Multiply by the base-field scalar ``c``."""
        row = self.base.mul[c]
        return tuple(int(row[x]) for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        prod = _poly_mul(self.base, _trim(list(a)), _trim(list(b)))
        return self._pad(_poly_mod(self.base, prod, list(self.g)))

    def _pad(self, coeffs: list[int]) -> Elem:
        return tuple(coeffs) + (0,) * (self.h - len(coeffs))

    def inv(self, a: Elem) -> Elem:
        """Inverse by the extended Euclidean algorithm on representatives."""
        if not any(a):
            raise ZeroDivisionError("inverse of zero in F_{q^h}")
        F = self.base
        r0, r1 = list(self.g), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(F, r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(F, s0, _poly_mul(F, quot, s1))
        # r0 is a nonzero constant
        c = F.inv_(r0[0])
        return self._pad(_poly_mod(F, [F.mul_(c, x) for x in s0], list(self.g)))

    def pow(self, a: Elem, n: int) -> Elem:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a: Elem) -> Elem:
        return self.pow(a, self.q)

    def trace(self, a: Elem) -> int:
        """Tr_{q^h/q}(a) = a + a^q + ... + a^(q^(h-1)), returned as a base code."""
        total, cur = self.zero, tuple(a)
        for _ in range(self.h):
            total = self.add(total, cur)
            cur = self.frobenius(cur)
        if any(total[1:]):
            raise ArithmeticError(f"trace {total} left the base field")  # defensive
        return total[0]

    def expand(self, a: Sequence[int]) -> Elem:
        return self.check(a)

    def contract(self, coords: Sequence[int]) -> Elem:
        return self.check(coords)

    def mul_matrix(self, a: Elem) -> np.ndarray:
        """h x h matrix over F_q whose column j holds the coordinates of a*xi^j."""
        cols, cur = [], tuple(a)
        x = self.xi
        for _ in range(self.h):
            cols.append(cur)
            cur = self.mul(cur, x)
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def trace_gram(self) -> np.ndarray:
        """The h x h matrix T[a][b] = Tr(xi^a * xi^b)."""
        pows = [self.pow(self.xi, i) for i in range(2 * self.h - 1)]
        tr = [self.trace(x) for x in pows]
        return np.array([[tr[a + b] for b in range(self.h)] for a in range(self.h)], dtype=np.int64)

    def multiplicative_order(self, a: Elem) -> int:
        if not any(a):
            raise ZeroDivisionError("zero has no multiplicative order")
        n, cur = 1, tuple(a)
        while cur != self.one:
            cur = self.mul(cur, a)
            n += 1
        return n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldTower) and (self.base, self.g) == (other.base, other.g)

    def __hash__(self) -> int:
        return hash((self.base, self.g))

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, f={self.f}, h={self.h}, g={self.g})"


def make_tower(p: int, e: int = 1, h: int = 1) -> FieldTower:
    """Build F_{p^e} and its degree-h extension with canonical moduli."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1 or h < 1:
        raise ValueError("e and h must be >= 1")
    base = GF(p, first_irreducible(GF(p), e)) if e > 1 else GF(p)
    return extend(base, h)


def extend(base: GF, h: int) -> FieldTower:
    """Canonical degree-h extension of an existing base field."""
    return FieldTower(base, first_irreducible(base, h))


def tower_for(q: int, h: int) -> FieldTower:
    p, e = prime_power(q)
    return make_tower(p, e, h)
