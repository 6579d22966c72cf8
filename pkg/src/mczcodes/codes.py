"""Linear codes over GF(q): duals, Schur powers, twists, distances, automorphisms."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    AllOnesMissing,
    BudgetExceeded,
    DegenerateCodeWarning,
    LengthMismatch,
    NotAutomorphism,
)
from .gf import FieldSpec
from .linalg import as_matrix, in_rowspace, nullspace, rank, rref

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Row space of a full-rank generator matrix ``gens`` (K x n).

    Zero-dimensional codes are allowed (K = 0) so that the dual of the full
    space is representable.
    """

    field: FieldSpec
    n: int
    gens: np.ndarray

    def __post_init__(self):
        g = as_matrix(self.gens, self.n)
        if g.ndim != 2 or g.shape[1] != self.n:
            raise LengthMismatch(f"generator rows must have length {self.n}, got shape {g.shape}")
        if np.any((g < 0) | (g >= self.field.q)):
            raise ValueError("generator entries must be canonical field elements")
        g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "gens", g)
        if g.shape[0] and rank(self.field, g) != g.shape[0]:
            raise ValueError("generator rows are linearly dependent")

    @classmethod
    def from_span(cls, field: FieldSpec, n: int, rows) -> "LinearCode":
        """Code spanned by arbitrary (possibly dependent) rows."""
        rows = as_matrix(rows, n)
        if rows.shape[0] == 0:
            return cls(field, n, np.zeros((0, n), dtype=np.int64))
        if rows.shape[1] != n:
            raise LengthMismatch(f"rows must have length {n}")
        R, _ = rref(field, rows)
        return cls(field, n, R)

    @property
    def dim(self) -> int:
        return self.gens.shape[0]

    @cached_property
    def _rref(self) -> tuple[np.ndarray, list[int]]:
        if self.dim == 0:
            return np.zeros((0, self.n), dtype=np.int64), []
        return rref(self.field, self.gens)

    def contains_vectors(self, vecs) -> np.ndarray:
        vecs = as_matrix(vecs, self.n)
        if vecs.shape[1] != self.n:
            raise LengthMismatch(f"vectors must have length {self.n}")
        R, piv = self._rref
        return in_rowspace(self.field, R, piv, vecs)

    def same_space(self, other: "LinearCode") -> bool:
        return self.dim == other.dim and contains(self, other)

    def encode(self, msg) -> np.ndarray:
        msg = np.atleast_2d(np.asarray(msg, dtype=np.int64))
        return self.field.matmul(msg, self.gens)

    def __repr__(self) -> str:
        return f"LinearCode({self.field!r}, n={self.n}, K={self.dim})"


def _check_lengths(a: LinearCode, b: LinearCode) -> None:
    if a.n != b.n:
        raise LengthMismatch(f"code lengths differ: {a.n} vs {b.n}")
    if a.field != b.field:
        raise LengthMismatch(f"codes over different fields: {a.field!r} vs {b.field!r}")


def reed_solomon(field: FieldSpec, k: int, points: Sequence[int] | None = None) -> LinearCode:
    """Evaluations of polynomials of degree < k; rows are the monomials x^0..x^(k-1).

    ``points`` defaults to every field element in canonical order.
    """
    pts = field.elements() if points is None else np.asarray(points, dtype=np.int64)
    rows = np.stack([field.pow(pts, j) for j in range(k)]) if k else np.zeros((0, len(pts)), dtype=np.int64)
    return LinearCode(field, len(pts), rows)


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(field, n, np.zeros((0, n), dtype=np.int64))


def full_space(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(field, n, np.eye(n, dtype=np.int64))


def dual(c: LinearCode) -> LinearCode:
    """Orthogonal complement under the standard bilinear form.

    The dual of the full space is the zero code; a :class:`DegenerateCodeWarning`
    flags that case.
    """
    if c.dim == c.n:
        warnings.warn(f"dual of full space {c!r} is the zero code", DegenerateCodeWarning, stacklevel=2)
        return zero_code(c.field, c.n)
    return LinearCode(c.field, c.n, nullspace(c.field, c.gens, c.n))


def schur_product(F: FieldSpec, *vecs) -> np.ndarray:
    out = np.asarray(vecs[0], dtype=np.int64)
    for v in vecs[1:]:
        out = F.mul(out, v)
    return out


def schur_power(c: LinearCode, m: int) -> LinearCode:
    """Span of all m-fold coordinatewise products of codewords."""
    if m < 1:
        raise ValueError("m must be >= 1")
    F = c.field
    cur = c
    for _ in range(m - 1):
        if cur.dim == 0 or c.dim == 0:
            return zero_code(F, c.n)
        prods = F.mul(cur.gens[:, None, :], c.gens[None, :, :]).reshape(-1, c.n)
        cur = LinearCode.from_span(F, c.n, prods)
    return cur


def twist(u, c: LinearCode) -> LinearCode:
    """Scale every coordinate i by the nonzero ``u[i]``."""
    u = np.asarray(u, dtype=np.int64)
    if u.shape != (c.n,):
        raise LengthMismatch(f"twist of length {u.shape} for code length {c.n}")
    if np.any(u == 0):
        raise ValueError("twist vector entries must be nonzero")
    return LinearCode(c.field, c.n, c.field.mul(c.gens, u[None, :]))


def contains(outer: LinearCode, inner: LinearCode) -> bool:
    """Whether ``inner`` is a subspace of ``outer``."""
    _check_lengths(outer, inner)
    if inner.dim == 0:
        return True
    if inner.dim > outer.dim:
        return False
    return bool(np.all(outer.contains_vectors(inner.gens)))


def min_distance(c: LinearCode, budget: int = DEFAULT_BUDGET, backend: str | None = None) -> int:
    """Exact minimum distance by enumerating messages, one per scalar class.

    Raises :class:`BudgetExceeded` when the (q^K - 1)/(q - 1) messages exceed
    ``budget``.
    """
    if c.dim == 0:
        raise ValueError("the zero code has no nonzero codewords")
    needed = kernels.message_count(c.field.q, c.dim, c.dim)
    if needed > budget:
        raise BudgetExceeded(needed, budget, "message enumeration")
    w, _ = kernels.min_weight(c.field, c.gens, backend=backend)
    return w


def min_weight_word(c: LinearCode, budget: int = DEFAULT_BUDGET, backend: str | None = None) -> np.ndarray:
    """A nonzero codeword of minimum weight (first in message order)."""
    needed = kernels.message_count(c.field.q, c.dim, c.dim)
    if needed > budget:
        raise BudgetExceeded(needed, budget, "message enumeration")
    _, msg = kernels.min_weight(c.field, c.gens, backend=backend)
    return c.encode(msg)[0]


def all_ones(F: FieldSpec, n: int) -> np.ndarray:
    return np.ones(n, dtype=np.int64)


def mult_property_check(c: LinearCode, u, m: int) -> bool:
    """``u * C^{*m}`` lies inside ``C^perp``."""
    u = np.asarray(u, dtype=np.int64)
    if u.shape != (c.n,):
        raise LengthMismatch(f"twist of length {u.shape} for code length {c.n}")
    if c.dim == c.n:
        # dual is zero; containment holds only for the zero code
        return schur_power(c, m).dim == 0
    return contains(dual(c), twist(u, schur_power(c, m)))


def mult_property_orthogonality(c: LinearCode, u, m: int, backend: str | None = None) -> bool:
    """Same predicate as :func:`mult_property_check`, decided by direct sums.

    Every sum_i u_i a1_i ... am_i b_i over generator rows must vanish.
    """
    blocks = [c.gens] * (m + 1)
    sums = kernels.tuple_sums(c.field, blocks, np.asarray(u, dtype=np.int64), backend=backend)
    return not np.any(sums)


def mult_downgrade_check(c: LinearCode, u, m: int) -> bool:
    """Multiplication property at every order 1..m (requires the all-ones word)."""
    if not c.contains_vectors(all_ones(c.field, c.n))[0]:
        raise AllOnesMissing("the all-ones vector is not a codeword")
    return all(mult_property_check(c, u, mt) for mt in range(1, m + 1))


def permute(vecs, perm) -> np.ndarray:
    """Apply a coordinate permutation: ``out[..., i] = vecs[..., perm[i]]``."""
    return np.asarray(vecs)[..., np.asarray(perm)]


def _check_perm(perm, n: int) -> np.ndarray:
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise ValueError(f"not a permutation of range({n})")
    return perm


def is_invariant_under(c: LinearCode, perm) -> bool:
    perm = _check_perm(perm, c.n)
    if c.dim == 0:
        return True
    return bool(np.all(c.contains_vectors(permute(c.gens, perm))))


def orbit(group, start: int) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for g in group:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def is_transitive(c: LinearCode, group) -> bool:
    """Whether the given automorphisms reach every coordinate from coordinate 0."""
    for i, g in enumerate(group):
        if not is_invariant_under(c, g):
            raise NotAutomorphism(i)
    return len(orbit([np.asarray(g) for g in group], 0)) == c.n
