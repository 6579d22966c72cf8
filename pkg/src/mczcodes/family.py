"""Code instances with a regular logical-block group action, and closed-form bounds.

A :class:`FamilyInstance` bundles everything the gate constructions consume:
a code containing the all-ones word, a nonzero twist ``u`` with the
multiplication property up to ``m_max``, a group of coordinate permutations
that are code automorphisms, and a logical block on which the group acts
regularly.  Generalized Reed-Solomon codes over the full field, with the
translation action of an additive subgroup, are the concrete members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import codes, kernels
from .codes import LinearCode
from .errors import BlockNotCoset, BudgetExceeded, DualDistanceTooSmall, HypothesisViolated, MultiplicationTooWeak
from .gf import FieldSpec, field_create
from .linalg import rank

MAX_ORDER = 8


@dataclass(frozen=True, eq=False)
class FamilyInstance:
    code: LinearCode
    u: np.ndarray
    group: tuple[np.ndarray, ...]
    logical_block: tuple[int, ...]
    m_max: int
    name: str = ""
    # known dual distance (e.g. from the MDS property); None means unknown
    dual_distance: int | None = None

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.int64).copy()
        u.setflags(write=False)
        object.__setattr__(self, "u", u)
        grp = []
        for g in self.group:
            g = np.asarray(g, dtype=np.int64).copy()
            g.setflags(write=False)
            grp.append(g)
        object.__setattr__(self, "group", tuple(grp))
        object.__setattr__(self, "logical_block", tuple(int(x) for x in self.logical_block))

    @property
    def field(self) -> FieldSpec:
        return self.code.field

    @property
    def N(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        """Number of logical qudits, |L|."""
        return len(self.logical_block)

    @property
    def physical(self) -> tuple[int, ...]:
        block = set(self.logical_block)
        return tuple(i for i in range(self.N) if i not in block)

    def group_index(self, perm) -> int:
        key = tuple(int(x) for x in perm)
        for i, g in enumerate(self.group):
            if tuple(g.tolist()) == key:
                return i
        raise KeyError("permutation is not in the group")

    def __repr__(self) -> str:
        return f"FamilyInstance({self.name or '?'}, N={self.N}, K={self.code.dim}, k={self.k}, m_max={self.m_max})"


# ---------------------------------------------------------------------------
# validation


@dataclass
class Check:
    name: str
    passed: bool | None  # None: not evaluated / informational
    claim: str
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _is_perm(g, n: int) -> bool:
    return g.shape == (n,) and np.array_equal(np.sort(g), np.arange(n))


def validate(inst: FamilyInstance, budget: int = codes.DEFAULT_BUDGET) -> ValidationReport:
    """Re-verify every instance invariant from scratch; failures are itemised, not raised."""
    rep = ValidationReport()
    add = rep.checks.append
    c, F, N = inst.code, inst.field, inst.N
    L = inst.logical_block
    Lset = set(L)

    u_ok = inst.u.shape == (N,) and bool(np.all(inst.u != 0))
    add(Check("twist_nonzero", u_ok, "twist vector u has only nonzero entries"))

    ones_in = bool(c.contains_vectors(np.ones(N, dtype=np.int64))[0])
    add(Check("all_ones", ones_in, "the all-ones vector is a codeword"))

    perms_ok = [i for i, g in enumerate(inst.group) if not _is_perm(g, N)]
    add(Check("permutations", not perms_ok, "group elements are permutations of the coordinates",
              f"bad indices {perms_ok}" if perms_ok else ""))
    if perms_ok:
        return rep

    ident = bool(inst.group) and np.array_equal(inst.group[0], np.arange(N))
    add(Check("identity_first", ident, "the identity is listed first in the group"))

    in_block = bool(Lset) and len(Lset) == len(L) and all(0 <= x < N for x in L)
    add(Check("logical_block", in_block, "logical block is a nonempty set of distinct coordinates"))

    unstable = [i for i, g in enumerate(inst.group) if {int(g[x]) for x in L} != Lset]
    add(Check("block_stable", not unstable,
              "every group element fixes the logical block and its complement setwise",
              f"indices {unstable}" if unstable else ""))

    # sigma acting on evaluations f -> (f(sigma(P)))_P must land back in the code
    not_auto = [i for i, g in enumerate(inst.group) if not codes.is_invariant_under(c, g)]
    add(Check("automorphism", not not_auto,
              "group elements are code automorphisms (f(sigma(P)) is again a codeword)",
              f"indices {not_auto}" if not_auto else ""))

    keys = {tuple(g.tolist()): i for i, g in enumerate(inst.group)}
    missing = []
    for i, a in enumerate(inst.group):
        for j, b in enumerate(inst.group):
            if tuple(a[b].tolist()) not in keys:
                missing.append((i, j))
    add(Check("closure", not missing, "the group is closed under composition",
              f"pairs {missing[:5]}" if missing else ""))

    add(Check("block_size", len(L) == len(inst.group), "|logical block| equals |group|",
              f"{len(L)} vs {len(inst.group)}"))

    bad_pairs = []
    for a in L:
        for b in L:
            hits = sum(1 for g in inst.group if int(g[a]) == b)
            if hits != 1:
                bad_pairs.append((a, b, hits))
    add(Check("regular", not bad_pairs,
              "for every pair of logical coordinates exactly one group element maps one to the other",
              f"(from, to, count) {bad_pairs[:5]}" if bad_pairs else ""))

    if u_ok:
        mult = codes.mult_property_check(c, inst.u, inst.m_max)
        add(Check("multiplication", mult, f"u * C^(*{inst.m_max}) is contained in the dual code"))
        if ones_in:
            down = codes.mult_downgrade_check(c, inst.u, inst.m_max)
            add(Check("downgrade", down == mult,
                      "with the all-ones word, order-m multiplication implies every lower order",
                      f"single check {mult}, all orders {down}"))

    cols_rank = rank(F, c.gens[:, list(L)]) if in_block else 0
    add(Check("logical_columns_independent", cols_rank == len(L),
              "the logical columns of the generator matrix are linearly independent",
              f"rank {cols_rank} of {len(L)}"))

    dual_dim = N - c.dim
    if dual_dim == 0:
        add(Check("dual_distance", None, "dual distance exceeds the logical block size", "dual is the zero code"))
    elif kernels.message_count(F.q, dual_dim, dual_dim) <= budget:
        dd = codes.min_distance(codes.dual(c), budget)
        add(Check("dual_distance", dd > len(L), "dual distance exceeds the logical block size",
                  f"dual distance {dd} (enumerated), block {len(L)}"))
    elif inst.dual_distance is not None:
        add(Check("dual_distance", inst.dual_distance > len(L), "dual distance exceeds the logical block size",
                  f"dual distance {inst.dual_distance} (declared), block {len(L)}"))
    else:
        add(Check("dual_distance", None, "dual distance exceeds the logical block size",
                  "not enumerated: over budget"))

    if u_ok:
        inv = all(np.array_equal(codes.permute(inst.u, g), inst.u) for g in inst.group)
        add(Check("u_invariant", None, "whether u itself is group invariant (informational)", str(inv)))
    return rep


def check_dual_relation(c: LinearCode, u, complement: LinearCode) -> bool:
    """Whether ``u * complement`` equals the dual of ``c``."""
    return codes.dual(c).same_space(codes.twist(u, complement))


# ---------------------------------------------------------------------------
# constructors


def largest_mult_order(c: LinearCode, u, cap: int = MAX_ORDER) -> int:
    """Largest m <= cap with the multiplication property at every order 1..m (0 if none)."""
    best = 0
    for m in range(1, cap + 1):
        if not codes.mult_property_check(c, u, m):
            break
        best = m
    return best


def build_instance(code: LinearCode, u, group, logical_block, m_max: int, name: str = "",
                   dual_distance: int | None = None, budget: int = codes.DEFAULT_BUDGET) -> FamilyInstance:
    """Generic constructor; raises ValueError listing every failed invariant."""
    inst = FamilyInstance(code, u, tuple(group), tuple(logical_block), m_max, name, dual_distance)
    rep = validate(inst, budget)
    if not rep.ok:
        names = ", ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in rep.failures)
        raise ValueError(f"invalid instance: {names}")
    return inst


def grs_build(F: FieldSpec, k: int, subgroup_size: int, coset_rep: int = 0,
              m_max: int | None = None, name: str = "") -> FamilyInstance:
    """Reed-Solomon instance over all of GF(q) with a translation group.

    The code is RS(q, k) on the canonical element order with ``u`` all ones.
    ``V`` is the additive subgroup spanned by the first log_p|V| canonical basis
    elements (the integers below |V|); the group is ``x -> x + v`` for v in V
    and the logical block is the coset ``coset_rep + V``.  Without ``m_max``
    the largest verified order (up to :data:`MAX_ORDER`) is used.
    """
    q = F.q
    t = round(math.log(subgroup_size, F.p)) if subgroup_size >= 1 else -1
    if subgroup_size < 1 or F.p**t != subgroup_size or subgroup_size > q:
        raise BlockNotCoset(f"|V| = {subgroup_size} is not a power of {F.p} at most {q}")
    if not 0 <= coset_rep < q:
        raise BlockNotCoset(f"coset representative {coset_rep} is not a field element")
    if not 1 <= k <= q:
        raise ValueError(f"dimension k must lie in [1, {q}]")
    dual_dist = k + 1  # MDS: dual of RS(q, k) is RS(q, q - k)
    if k < q and dual_dist <= subgroup_size:
        raise DualDistanceTooSmall(f"dual distance {dual_dist} <= block size {subgroup_size}")

    code = codes.reed_solomon(F, k)
    u = np.ones(q, dtype=np.int64)
    if m_max is None:
        m_max = largest_mult_order(code, u)
        if m_max < 1:
            raise MultiplicationTooWeak(1)
    else:
        for mt in range(1, m_max + 1):
            if not codes.mult_property_check(code, u, mt):
                raise MultiplicationTooWeak(mt)

    elems = F.elements()
    V = list(range(subgroup_size))
    group = [F.add(elems, v) for v in V]
    block = [int(F.add(coset_rep, v)) for v in V]
    return build_instance(code, u, group, block, m_max, name or f"rs{q}-k{k}-v{subgroup_size}",
                          dual_distance=dual_dist if k < q else None)


PRESETS: dict[str, dict] = {
    "rs16-ccz": dict(p=2, e=4, k=4, subgroup_size=2, coset_rep=0),
    "rs8-cz": dict(p=2, e=3, k=3, subgroup_size=2, coset_rep=0),
    "rs25-cz": dict(p=5, e=2, k=6, subgroup_size=5, coset_rep=0),
}


def preset(name: str) -> FamilyInstance:
    try:
        cfg = dict(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    F = field_create(cfg.pop("p"), cfg.pop("e"))
    return grs_build(F, name=name, **cfg)


# ---------------------------------------------------------------------------
# closed-form bounds


@dataclass(frozen=True)
class BoundReport:
    ell: int
    s: int
    N: int
    K_lb: Fraction
    D_lb: Fraction
    Dperp_lb: Fraction
    k: int | None = None
    d_lb: Fraction | None = None
    depth_ub: int | None = None
    m: int | None = None

    @property
    def floors(self) -> dict[str, int]:
        out = {"K_lb": math.floor(self.K_lb), "D_lb": math.floor(self.D_lb), "Dperp_lb": math.floor(self.Dperp_lb)}
        if self.d_lb is not None:
            out["d_lb"] = math.floor(self.d_lb)
        return out


def classical_bounds(ell: int, s: int, N: int) -> BoundReport:
    """Lower bounds on dimension, distance and dual distance for length N.

    K >= (ell + 1 - s) / (s (ell - 1)) N,  D >= (1 - 3 / (s (ell - 1))) N,
    D_perp >= (ell + 1) / (s (ell - 1)) N, valid for ell >= 4 and ell >= 2s - 1.
    """
    if s < 1:
        raise HypothesisViolated(f"s >= 1 required, got s={s}")
    if ell < 4:
        raise HypothesisViolated(f"ell >= 4 required, got ell={ell}")
    if ell < 2 * s - 1:
        raise HypothesisViolated(f"ell >= 2s - 1 required, got ell={ell} < {2 * s - 1}")
    if N < 0:
        raise ValueError("N must be non-negative")
    den = s * (ell - 1)
    return BoundReport(
        ell=ell, s=s, N=N,
        K_lb=Fraction(ell + 1 - s, den) * N,
        D_lb=(1 - Fraction(3, den)) * N,
        Dperp_lb=Fraction(ell + 1, den) * N,
    )


def quantum_bounds(D, Dperp, k):
    """Distance lower bound max(0, min(D, D_perp) - k) for the punctured CSS code."""
    if min(D, Dperp, k) < 0:
        raise ValueError("inputs must be non-negative")
    return max(0, min(D, Dperp) - k)


def depth_bound(k: int, m: int) -> int:
    """Depth upper bound k^(m-1) for m-block multi-control-Z circuits."""
    if k < 1 or m < 2:
        raise ValueError("need k >= 1 and m >= 2")
    return k ** (m - 1)


def bound_report(ell: int, s: int, N: int, k: int | None = None, m: int | None = None) -> BoundReport:
    base = classical_bounds(ell, s, N)
    d_lb = quantum_bounds(base.D_lb, base.Dperp_lb, k) if k is not None else None
    depth = depth_bound(k, m) if k is not None and m is not None else None
    return BoundReport(base.ell, base.s, base.N, base.K_lb, base.D_lb, base.Dperp_lb, k, d_lb, depth, m)
