"""Row reduction over GF(q)."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .gf import FieldSpec


def as_matrix(rows, n: int | None = None) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else np.zeros((0, n or 0), dtype=np.int64)
    if m.size == 0:
        m = m.reshape(0, n if n is not None else (m.shape[1] if m.ndim == 2 else 0))
    return m


def rref(F: FieldSpec, mat, column_order: Sequence[int] | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Columns are scanned in ``column_order`` (default left to right) and the
    first row with a nonzero entry becomes the pivot.  Returns the nonzero
    rows of the reduced matrix and the pivot columns, in pivot order.
    """
    A = np.array(mat, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = A.shape
    order = range(cols) if column_order is None else column_order
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul(F.inv(A[r, c]), A[r])
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            A[hit] = F.sub(A[hit], F.mul(factors[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: FieldSpec, mat) -> int:
    A = np.asarray(mat, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: FieldSpec, mat, n: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x = 0}."""
    A = as_matrix(mat, n)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(R[r, f])
    return basis


def in_rowspace(F: FieldSpec, basis_rref: np.ndarray, pivots: Sequence[int], vecs) -> np.ndarray:
    """Boolean mask: which rows of ``vecs`` lie in the span of an RREF basis."""
    V = np.array(vecs, dtype=np.int64, copy=True)
    if V.ndim == 1:
        V = V[None, :]
    for r, c in enumerate(pivots):
        coef = V[:, c].copy()
        hit = np.nonzero(coef)[0]
        if hit.size:
            V[hit] = F.sub(V[hit], F.mul(coef[hit, None], basis_rref[r][None, :]))
    return ~V.any(axis=1)


def solve_left(F: FieldSpec, basis, vec) -> np.ndarray | None:
    """Coefficients c with c @ basis = vec, or None if vec is outside the span."""
    B = np.asarray(basis, dtype=np.int64)
    k = B.shape[0]
    aug = np.concatenate([B.T, np.asarray(vec, dtype=np.int64)[:, None]], axis=1)
    R, pivots = rref(F, aug)
    if k in pivots:
        return None
    sol = np.zeros(k, dtype=np.int64)
    for r, c in enumerate(pivots):
        sol[c] = R[r, k]
    return sol
