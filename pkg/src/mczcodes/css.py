"""Standard form, puncturing of the logical block, and the resulting CSS code."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from . import codes, kernels
from .codes import LinearCode
from .errors import BudgetExceeded, IndependenceViolated, LogicalColumnsDependent, NoLogicalQudits
from .family import FamilyInstance, quantum_bounds
from .gf import FieldSpec
from .linalg import nullspace, rank


@dataclass(frozen=True, eq=False)
class StandardForm:
    """Generator matrix ``[I_k | G1 ; 0 | G0]`` with the logical columns first.

    ``g_tilde`` is in standard-form column order; ``column_order[c]`` is the
    instance coordinate shown in column c.  ``rows`` holds the same rows in
    instance coordinate order, so ``rows[i]`` evaluated at logical label
    ``logical_labels[j]`` is the Kronecker delta for i, j < k.
    """

    g_tilde: np.ndarray
    k: int
    column_order: tuple[int, ...]
    rows: np.ndarray
    logical_labels: tuple[int, ...]
    physical_labels: tuple[int, ...]

    @property
    def K(self) -> int:
        return self.g_tilde.shape[0]


def standard_form(inst: FamilyInstance) -> StandardForm:
    """Gauss-Jordan elimination on the logical columns only.

    For each logical column in block order the first row with a nonzero entry
    is the pivot.  The remaining rows are left as they come out of the
    elimination, so an input already in standard form is returned unchanged.
    """
    F = inst.field
    L = list(inst.logical_block)
    phys = list(inst.physical)
    order = L + phys
    A = np.array(inst.code.gens[:, order], dtype=np.int64)
    K = A.shape[0]
    k = len(L)
    for r, c in enumerate(range(k)):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            # first logical column dependent on the earlier ones
            raise LogicalColumnsDependent(tuple(L[: c + 1]))
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul(F.inv(A[r, c]), A[r])
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            A[hit] = F.sub(A[hit], F.mul(factors[hit, None], A[r][None, :]))
    rows = np.zeros_like(A)
    rows[:, order] = A
    for arr in (A, rows):
        arr.setflags(write=False)
    assert K >= k
    return StandardForm(A, k, tuple(order), rows, tuple(L), tuple(phys))


@dataclass(frozen=True, eq=False)
class CssCode:
    """CSS(C0, C1) with C1 = rowspan([g1; g0]) and C0 = ker(g0).

    Physical coordinates are the instance coordinates outside the logical
    block, in increasing order; ``physical_labels[i]`` names column i.
    """

    field: FieldSpec
    g1: np.ndarray
    g0: np.ndarray
    u: np.ndarray
    logical_labels: tuple[int, ...]
    physical_labels: tuple[int, ...]
    instance: FamilyInstance | None = None

    @property
    def k(self) -> int:
        return self.g1.shape[0]

    @property
    def n(self) -> int:
        return self.g1.shape[1]

    @property
    def K(self) -> int:
        return self.g1.shape[0] + self.g0.shape[0]

    @property
    def u_phys(self) -> np.ndarray:
        return self.u[list(self.physical_labels)]

    @property
    def u_log(self) -> np.ndarray:
        return self.u[list(self.logical_labels)]

    @property
    def generator(self) -> np.ndarray:
        return np.concatenate([self.g1, self.g0], axis=0)

    @property
    def C1(self) -> LinearCode:
        return LinearCode(self.field, self.n, self.generator)

    @property
    def C0_perp(self) -> LinearCode:
        return LinearCode(self.field, self.n, self.g0)

    @property
    def C0(self) -> LinearCode:
        return LinearCode(self.field, self.n, nullspace(self.field, self.g0, self.n))

    def physical_position(self, label: int) -> int:
        return self.physical_labels.index(label)

    def logical_position(self, label: int) -> int:
        return self.logical_labels.index(label)

    def __repr__(self) -> str:
        return f"CssCode([[{self.n}, {self.k}]]_{self.field.q})"


def independence_table(css: CssCode) -> np.ndarray:
    """``T[a, b] = <G_a, u_phys * G_b>`` over the rows of ``[g1; g0]``."""
    F = css.field
    G = css.generator
    return F.sum(F.mul(G[:, None, :], F.mul(css.u_phys, G)[None, :, :]), axis=-1)


def build_css(sf: StandardForm, inst: FamilyInstance) -> CssCode:
    """Puncture the logical columns and verify the block-independence table.

    Every off-diagonal entry and every g0 diagonal entry of
    :func:`independence_table` must vanish and every g1 diagonal entry must
    be nonzero; that pattern forces rowspan(g0) and rowspan(g1) to meet only
    in zero and g1 to have full rank.
    """
    k = sf.k
    g1 = np.array(sf.g_tilde[:k, k:])
    g0 = np.array(sf.g_tilde[k:, k:])
    css = CssCode(inst.field, g1, g0, np.asarray(inst.u), sf.logical_labels, sf.physical_labels, inst)
    T = independence_table(css)
    K = T.shape[0]
    for a in range(K):
        for b in range(K):
            v = int(T[a, b])
            want_nonzero = a == b and a < k
            if (v != 0) != want_nonzero:
                raise IndependenceViolated(
                    f"<G[{a}], u*G[{b}]> = {v}, expected {'nonzero' if want_nonzero else 'zero'}")
    return css


def logical_basis(css: CssCode, x, budget: int = codes.DEFAULT_BUDGET) -> np.ndarray:
    """All q^(K-k) strings  sum_Q x_Q g_Q + g,  g in rowspan(g0), one per row.

    Rows follow the little-endian enumeration of g0 coefficients, so row 0 is
    the offset itself.
    """
    F = css.field
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    if x.shape != (css.k,):
        raise ValueError(f"logical vector must have length {css.k}")
    r = css.g0.shape[0]
    count = F.q**r
    if count > budget:
        raise BudgetExceeded(count, budget, "logical basis expansion")
    offset = F.matmul(x[None, :], css.g1)[0]
    if r == 0:
        return offset[None, :].copy()
    idx = np.arange(count, dtype=np.int64)
    digits = (idx[:, None] // (F.q ** np.arange(r, dtype=np.int64))[None, :]) % F.q
    return F.add(F.matmul(digits, css.g0), offset[None, :])


def _support_search(F: FieldSpec, big: np.ndarray, small: np.ndarray, n: int, budget: int):
    """Smallest support S with rank(big[:, S]) > rank(small[:, S]).

    That inequality says some vector supported inside S is killed by
    ``small`` but not by ``big``; the smallest such |S| is the minimum weight
    of ker(small) minus ker(big).  Returns (weight, witness) or (None, None).
    """
    spent = 0
    for w in range(1, n + 1):
        spent += comb(n, w)
        if spent > budget:
            raise BudgetExceeded(spent, budget, "support search")
        for S in itertools.combinations(range(n), w):
            cols = list(S)
            bS = big[:, cols]
            sS = small[:, cols] if small.shape[0] else np.zeros((0, w), dtype=np.int64)
            if rank(F, bS) > rank(F, sS):
                for y in nullspace(F, sS, w):
                    if np.any(F.matmul(bS, y[:, None])):
                        full = np.zeros(n, dtype=np.int64)
                        full[cols] = y
                        return w, full
    return None, None


@dataclass(frozen=True)
class CssDistance:
    dX: int | None
    dZ: int | None
    d: int | None
    exact: bool
    bound: int | None
    witness_x: np.ndarray | None = None
    witness_z: np.ndarray | None = None
    D: int | None = None
    Dperp: int | None = None

    @property
    def meets_bound(self) -> bool | None:
        if self.d is None or self.bound is None:
            return None
        return self.d >= self.bound


def prepuncture_bound(inst: FamilyInstance, budget: int = codes.DEFAULT_BUDGET):
    """(D, D_perp, max(0, min(D, D_perp) - k)) for the instance code, or Nones if unknown."""
    c = inst.code
    try:
        D = codes.min_distance(c, budget)
    except BudgetExceeded:
        D = None
    Dperp = None
    if c.dim < c.n and kernels.message_count(c.field.q, c.n - c.dim, c.n - c.dim) <= budget:
        Dperp = codes.min_distance(codes.dual(c), budget)
    elif inst.dual_distance is not None:
        Dperp = inst.dual_distance
    bound = quantum_bounds(D, Dperp, inst.k) if D is not None and Dperp is not None else None
    return D, Dperp, bound


def css_distance(css: CssCode, budget: int = codes.DEFAULT_BUDGET, backend: str | None = None) -> CssDistance:
    """Exact dX, dZ and d = min(dX, dZ), or a bound-only report over budget.

    dX is the minimum weight of C1 minus rowspan(g0), found by enumerating
    the messages of ``[g1; g0]`` with a nonzero g1 part, one per scalar class
    (falls back to a support search over budget).  dZ is the minimum weight of C0 minus C1^perp,
    found by a support search: the smallest column subset on which
    ``[g1; g0]`` has larger rank than ``g0``.
    """
    if css.k == 0:
        raise NoLogicalQudits("C0^perp equals C1: the code encodes no logical qudits")
    F = css.field
    G = css.generator
    D = Dperp = bound = None
    if css.instance is not None:
        D, Dperp, bound = prepuncture_bound(css.instance, budget)
    try:
        if kernels.message_count(F.q, css.K, css.k) <= budget:
            dX, msg = kernels.min_weight(F, G, lead=css.k, backend=backend)
            wx = F.matmul(msg[None, :], G)[0]
        else:
            C0_basis = nullspace(F, css.g0, css.n)
            C1_perp = nullspace(F, G, css.n)
            dX, wx = _support_search(F, C0_basis, C1_perp, css.n, budget)
        dZ, wz = _support_search(F, G, css.g0, css.n, budget)
    except BudgetExceeded:
        return CssDistance(None, None, None, False, bound, D=D, Dperp=Dperp)
    return CssDistance(dX, dZ, min(dX, dZ), True, bound, wx, wz, D, Dperp)
