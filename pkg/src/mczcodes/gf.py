"""Prime-power finite fields GF(p^e) with integer-encoded elements.

An element is stored as the integer whose base-p digits are the coefficients
of its polynomial representative, constant term first.  All array operations
accept Python ints or integer numpy arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeMismatch, DivisionByZero, NonPrime, ReducibleModulus, SpecMismatch

# full q x q add/mul tables are built only up to this order
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over GF(p), little-endian coefficient lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int) -> Iterable[list[int]]:
    for v in range(p**degree):
        coeffs = [(v // p**i) % p for i in range(degree)]
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p) by trial division with monic divisors."""
    mod = _trim([c % p for c in modulus])
    e = len(mod) - 1
    if e < 1:
        return False
    for d in range(1, e // 2 + 1):
        for div in _monic_polys(d, p):
            if not _poly_mod(mod, div, p):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``e``, ordered by integer encoding."""
    if e == 1:
        return (0, 1)
    for cand in _monic_polys(e, p):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) defined by a monic irreducible ``modulus`` (little-endian)."""

    p: int
    e: int
    modulus: tuple[int, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- construction helpers ------------------------------------------------

    def _digits_of(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _from_digits(self, d: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(d))

    def _mulmod_scalar(self, a: int, b: int) -> int:
        """Schoolbook polynomial product reduced by the modulus."""
        p, e = self.p, self.e
        da, db = self._digits_of(a), self._digits_of(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod(prod, self.modulus, p) if len(_trim(list(prod))) > e else prod
        return self._from_digits(red[:e])

    def _powmod_scalar(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mulmod_scalar(result, base)
            base = self._mulmod_scalar(base, base)
            n >>= 1
        return result

    def _tables(self) -> dict:
        c = self._cache
        if "exp" in c:
            return c
        q, order = self.q, self.q - 1
        factors = _prime_factors(order) if order > 1 else []
        gen = 1
        for cand in range(1, q):
            if all(self._powmod_scalar(cand, order // r) != 1 for r in factors):
                gen = cand
                break
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mulmod_scalar(x, gen)
        exp[order:] = exp[:order]
        digits = np.array([self._digits_of(a) for a in range(q)], dtype=np.int64).reshape(q, self.e)
        powers = self.p ** np.arange(self.e, dtype=np.int64)
        c.update(gen=gen, exp=exp, log=log, digits=digits, powers=powers)
        if q <= TABLE_LIMIT:
            a = np.arange(q)
            c["add"] = ((digits[:, None, :] + digits[None, :, :]) % self.p) @ powers
            mul = np.zeros((q, q), dtype=np.int64)
            nz = a[1:]
            mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % order]
            c["mul"] = mul
        neg = ((-digits) % self.p) @ powers
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(order - log[1:]) % order] if order else 1
        c.update(neg=neg, inv=inv)
        # trace: sum of conjugates a^(p^j)
        tr = np.zeros(q, dtype=np.int64)
        conj = np.arange(q, dtype=np.int64)
        for _ in range(self.e):
            tr = self._add_raw(tr, conj)
            conj = self.pow(conj, self.p)
        c["trace"] = tr
        return c

    # -- tables ---------------------------------------------------------------

    @property
    def has_tables(self) -> bool:
        return self.q <= TABLE_LIMIT

    @property
    def add_table(self) -> np.ndarray:
        return self._tables()["add"]

    @property
    def mul_table(self) -> np.ndarray:
        return self._tables()["mul"]

    @property
    def trace_table(self) -> np.ndarray:
        return self._tables()["trace"]

    @property
    def generator(self) -> int:
        """A primitive element (generator of the multiplicative group)."""
        return int(self._tables()["gen"])

    # -- vectorised arithmetic -----------------------------------------------

    def _add_raw(self, a, b):
        c = self._cache
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if "add" in c:
            return c["add"][a, b]
        d = (c["digits"][a] + c["digits"][b]) % self.p
        return d @ c["powers"]

    def add(self, a, b):
        self._tables()
        return self._add_raw(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def neg(self, a):
        return self._tables()["neg"][a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        c = self._tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if "mul" in c:
            return c["mul"][a, b]
        out = c["exp"][c["log"][a] + c["log"][b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("zero has no multiplicative inverse")
        return self._tables()["inv"][a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        c = self._tables()
        a = np.asarray(a, dtype=np.int64)
        order = self.q - 1
        if n == 0:
            return np.ones_like(a)
        if n < 0:
            a, n = self.inv(a), -n
        out = c["exp"][(c["log"][a] * n) % order] if order else np.ones_like(a)
        return np.where(a == 0, 0, out)

    def frob(self, a, j: int = 1):
        return self.pow(a, self.p ** (j % self.e))

    def trace(self, a):
        return self._tables()["trace"][a]

    def sum(self, a, axis=None):
        """Field sum along ``axis`` (all entries when ``axis`` is None)."""
        a = np.asarray(a, dtype=np.int64)
        if axis is None:
            a = a.reshape(-1)
            axis = 0
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self.add(acc, row)
        return acc

    def dot(self, a, b):
        """Standard bilinear form sum_i a_i b_i along the last axis."""
        prod = self.mul(a, b)
        return self.sum(prod, axis=-1)

    def matmul(self, a, b):
        """Matrix product over the field; ``a`` is (r, k), ``b`` is (k, n)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for j in range(a.shape[1]):
            acc = self.add(acc, self.mul(a[:, j, None], b[j][None, :]))
        return acc

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def random(self, rng: np.random.Generator, size=None, nonzero: bool = False):
        low = 1 if nonzero else 0
        return rng.integers(low, self.q, size=size, dtype=np.int64)

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(self, value)


def field_create(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Create GF(p^e).

    Without ``modulus`` the first monic irreducible polynomial of degree ``e``
    (ordered by its integer encoding) is used, so GF(16) gets x^4 + x + 1.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {e}")
    if modulus is None:
        mod = default_modulus(p, e)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(_trim(list(mod))) != e + 1 or len(mod) != e + 1:
            raise DegreeMismatch(f"modulus {list(modulus)} does not have degree {e}")
        if mod[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not is_irreducible(mod, p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
    return _cached_field(p, e, mod)


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, e: int, mod: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, e, mod)


# ---------------------------------------------------------------------------
# scalar element wrapper


class FieldElem:
    """A single field element; supports the usual arithmetic operators."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        value = int(value)
        if not 0 <= value < spec.q:
            raise ValueError(f"{value} is not a canonical element of {spec!r}")
        self.spec = spec
        self.value = value

    def _check(self, other) -> "FieldElem":
        if isinstance(other, int):
            other = FieldElem(self.spec, other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec!r} vs {other.spec!r}")
        return other

    def __add__(self, other):
        o = self._check(other)
        return FieldElem(self.spec, self.spec.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return FieldElem(self.spec, self.spec.sub(self.value, o.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return FieldElem(self.spec, self.spec.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        return FieldElem(self.spec, self.spec.div(self.value, o.value))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.value))

    def __pow__(self, n: int):
        return FieldElem(self.spec, self.spec.pow(self.value, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other
        return isinstance(other, FieldElem) and other.spec == self.spec and other.value == self.value

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.spec!r}({self.value})"


def arith(a: FieldElem, b: FieldElem, kind: str) -> FieldElem:
    """Binary field operation; ``kind`` is one of add, sub, mul, div."""
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec!r} vs {b.spec!r}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def frobenius(a: FieldElem, j: int = 1) -> FieldElem:
    """Return a^(p^j)."""
    if j < 0:
        raise ValueError("iteration count must be non-negative")
    return FieldElem(a.spec, a.spec.frob(a.value, j))


def trace(a: FieldElem) -> FieldElem:
    """Absolute trace to the prime subfield, returned as an element of GF(p^e)."""
    return FieldElem(a.spec, a.spec.trace(a.value))


def enumerate_elements(spec: FieldSpec) -> list[FieldElem]:
    return [FieldElem(spec, v) for v in range(spec.q)]
