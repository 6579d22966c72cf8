"""Slow reference implementations used as test oracles.

They share no code with the package: field elements are handled as
coefficient lists and multiplied by schoolbook polynomial arithmetic.
"""

from __future__ import annotations

import itertools


def to_poly(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(v % p)
        v //= p
    return out


def from_poly(c, p: int) -> int:
    return sum(int(x) * p**i for i, x in enumerate(c))


def poly_mulmod(a, b, modulus, p):
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    # reduce with the monic modulus
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for t in range(e + 1):
                prod[d - e + t] = (prod[d - e + t] - c * modulus[t]) % p
    return (prod + [0] * e)[:e]


class SlowField:
    def __init__(self, p, e, modulus):
        self.p, self.e, self.mod = p, e, list(modulus)
        self.q = p**e

    def add(self, a, b):
        pa, pb = to_poly(a, self.p, self.e), to_poly(b, self.p, self.e)
        return from_poly([(x + y) % self.p for x, y in zip(pa, pb)], self.p)

    def neg(self, a):
        return from_poly([(-x) % self.p for x in to_poly(a, self.p, self.e)], self.p)

    def mul(self, a, b):
        r = poly_mulmod(to_poly(a, self.p, self.e), to_poly(b, self.p, self.e), self.mod, self.p)
        return from_poly(r, self.p)

    def pow(self, a, n):
        r = 1
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def trace(self, a):
        t, x = 0, a
        for _ in range(self.e):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    def dot(self, u, v):
        acc = 0
        for x, y in zip(u, v):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def lin_comb(self, coeffs, rows):
        n = len(rows[0])
        out = [0] * n
        for c, r in zip(coeffs, rows):
            for i in range(n):
                out[i] = self.add(out[i], self.mul(c, r[i]))
        return out


def brute_min_weight(Fs: SlowField, rows, predicate=lambda msg: any(msg)):
    """Minimum weight over all q^K messages accepted by ``predicate``."""
    rows = [list(map(int, r)) for r in rows]
    best = None
    for msg in itertools.product(range(Fs.q), repeat=len(rows)):
        if not predicate(msg):
            continue
        w = sum(1 for x in Fs.lin_comb(msg, rows) if x)
        best = w if best is None else min(best, w)
    return best


def span_set(Fs: SlowField, rows, n):
    if len(rows) == 0:
        return {tuple([0] * n)}
    return {tuple(Fs.lin_comb(msg, rows)) for msg in itertools.product(range(Fs.q), repeat=len(rows))}
