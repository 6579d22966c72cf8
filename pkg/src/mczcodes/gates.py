"""Diagonal multi-control-Z circuits as phase polynomials over GF(q).

A gate with coefficient beta on digits x_0..x_{m-1} contributes the phase
exponent tr(beta x_0 ... x_{m-1}) in Z_p, i.e. the phase exp(2 pi i e / p).
Phases are always kept as exponents so every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import codes, kernels
from .css import CssCode, StandardForm, logical_basis
from .errors import BlockMismatch, BudgetExceeded, UnknownLabel
from .family import FamilyInstance


@dataclass(frozen=True)
class LogicalGate:
    """Logical C^{m-1}Z^gamma; ``targets[j]`` is a logical label in code block j."""

    gamma: int
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gamma", int(self.gamma))
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if len(self.targets) < 2:
            raise ValueError("a multi-control-Z gate acts on at least two blocks")

    @property
    def m(self) -> int:
        return len(self.targets)


@dataclass(frozen=True)
class PhysicalGate:
    """Physical C^{m-1}Z^exponent; ``targets[j]`` is a physical label in block j."""

    exponent: int
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponent", int(self.exponent))
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))

    @property
    def m(self) -> int:
        return len(self.targets)


@dataclass(frozen=True, eq=False)
class ModulationSpec:
    """Target set S, coefficients gamma on S, and the full-length vector
    M = sum_{Q in S} gamma_Q u_Q^{-1} g~_Q in instance coordinate order."""

    S: tuple[int, ...]
    gamma: Mapping[int, int]
    m_vector: np.ndarray


def _labels_check(labels: Sequence[int], allowed: Sequence[int], kind: str) -> None:
    allowed = set(allowed)
    for t in labels:
        if t not in allowed:
            raise UnknownLabel(f"{t} is not a {kind} label")


def modulation_build(css: CssCode, sf: StandardForm, S: Sequence[int], gamma) -> ModulationSpec:
    """Modulation vector for targets ``S`` with coefficients ``gamma``.

    ``gamma`` is a mapping label -> coefficient or a sequence aligned with
    ``S``.  The result is checked to be a codeword of the instance code.
    """
    F = css.field
    S = tuple(int(s) for s in S)
    _labels_check(S, sf.logical_labels, "logical")
    if len(set(S)) != len(S):
        raise ValueError("target set has repeated labels")
    if isinstance(gamma, Mapping):
        gam = {int(Q): int(gamma[Q]) for Q in S}
    else:
        gamma = list(gamma)
        if len(gamma) != len(S):
            raise ValueError("gamma must have one coefficient per target")
        gam = {Q: int(g) for Q, g in zip(S, gamma)}
    N = sf.rows.shape[1]
    M = np.zeros(N, dtype=np.int64)
    for Q in S:
        row = sf.rows[sf.logical_labels.index(Q)]
        coef = F.mul(gam[Q], F.inv(css.u[Q]))
        M = F.add(M, F.mul(coef, row))
    if css.instance is not None:
        ok = css.instance.code.contains_vectors(M)[0]
    else:
        ok = codes.LinearCode(F, N, sf.rows).contains_vectors(M)[0]
    if not ok:  # pragma: no cover - rows span the code by construction
        raise AssertionError("modulation vector left the code")
    M.setflags(write=False)
    return ModulationSpec(S, gam, M)


def physical_layer(css: CssCode, mod: ModulationSpec, sigmas: Sequence[np.ndarray]) -> list[PhysicalGate]:
    """Depth-one layer  prod_P C^{m-1}Z^{-u_P M(P)}[P, s_1(P), ..., s_{m-1}(P)].

    ``sigmas`` are coordinate permutations with ``sigma[P]`` the image of P.
    Gates with a zero exponent are dropped.
    """
    F = css.field
    out = []
    for P in css.physical_labels:
        beta = int(F.neg(F.mul(css.u[P], mod.m_vector[P])))
        if beta:
            out.append(PhysicalGate(beta, (P,) + tuple(int(s[P]) for s in sigmas)))
    return out


def layer_is_depth_one(gates: Sequence[PhysicalGate]) -> bool:
    """No qudit of any block is touched twice."""
    if not gates:
        return True
    m = gates[0].m
    for j in range(m):
        col = [g.targets[j] for g in gates]
        if len(set(col)) != len(col):
            return False
    return True


def _arity(gates, m: int) -> None:
    for g in gates:
        if g.m != m:
            raise BlockMismatch(f"gate on {g.m} blocks but {m} input blocks were given")


def logical_phase(css: CssCode, gates: Sequence[LogicalGate], x) -> int:
    """Exponent in Z_p of the logical circuit on basis vectors x^0..x^{m-1}."""
    F = css.field
    x = [np.asarray(v, dtype=np.int64) for v in x]
    _arity(gates, len(x))
    total = 0
    for g in gates:
        v = g.gamma
        for j, Q in enumerate(g.targets):
            if Q not in css.logical_labels:
                raise UnknownLabel(f"{Q} is not a logical label")
            v = int(F.mul(v, x[j][css.logical_position(Q)]))
        total += int(F.trace(v))
    return total % F.p


def physical_phase(css: CssCode, gates: Sequence[PhysicalGate], strings) -> int:
    """Exponent in Z_p of a physical circuit on computational strings (one per block)."""
    F = css.field
    strings = [np.asarray(s, dtype=np.int64) for s in strings]
    _arity(gates, len(strings))
    pos = {P: i for i, P in enumerate(css.physical_labels)}
    total = 0
    for g in gates:
        v = g.exponent
        for j, P in enumerate(g.targets):
            try:
                v = int(F.mul(v, strings[j][pos[P]]))
            except KeyError:
                raise UnknownLabel(f"{P} is not a physical label") from None
        total += int(F.trace(v))
    return total % F.p


def gate_arrays(css: CssCode, gates: Sequence[PhysicalGate]) -> tuple[np.ndarray, np.ndarray]:
    """(positions, exponents) arrays for the phase kernel."""
    pos = {P: i for i, P in enumerate(css.physical_labels)}
    m = gates[0].m if gates else 1
    positions = np.array([[pos[P] for P in g.targets] for g in gates], dtype=np.int64).reshape(-1, m)
    betas = np.array([g.exponent for g in gates], dtype=np.int64)
    return positions, betas


def source_gates(mod: ModulationSpec, sigmas: Sequence[np.ndarray]) -> list[LogicalGate]:
    """Logical gates C^{m-1}Z^{gamma_Q}[Q, s_1(Q), ...] that a modulated layer implements."""
    return [LogicalGate(mod.gamma[Q], (Q,) + tuple(int(s[Q]) for s in sigmas))
            for Q in mod.S if mod.gamma[Q]]


# ---------------------------------------------------------------------------
# verification


@dataclass
class IdentityCheck:
    passed: bool
    witness: tuple[int, ...] | None = None
    lhs: int | None = None
    rhs: int | None = None
    checked: int = 0
    detail: str = ""


def verify_main_theorem(css: CssCode, sf: StandardForm, mod: ModulationSpec, sigmas: Sequence[np.ndarray],
                        samples: int = 0, rng: np.random.Generator | None = None,
                        backend: str | None = None) -> IdentityCheck:
    """Check the pre-trace field identity behind a compiled layer.

    For every tuple (b^0, ..., b^{m-1}) of rows of the standard-form generator
    matrix:

        sum_{P physical} u_P M(P) b^0(P) prod_j b^j(s_j(P))
            == - sum_{Q in S} gamma_Q b^0(Q) prod_j b^j(s_j(Q)).

    By multilinearity this covers every tuple of codewords, hence every tuple
    of logical basis states.  With ``samples > 0`` random logical inputs are
    also pushed through the traced phases as a sanity layer.
    """
    F = css.field
    rows = np.asarray(sf.rows)
    N = rows.shape[1]
    blocks = [rows] + [codes.permute(rows, s) for s in sigmas]
    mask = np.zeros(N, dtype=np.int64)
    mask[list(css.physical_labels)] = 1
    weight = F.mul(F.mul(css.u, mod.m_vector), mask)
    lhs = kernels.tuple_sums(F, blocks, weight, backend=backend)

    m = len(blocks)
    rhs = np.zeros(lhs.shape, dtype=np.int64)
    for Q in mod.S:
        term = np.full((1,) * m, mod.gamma[Q], dtype=np.int64)
        for j, B in enumerate(blocks):
            shape = [1] * m
            shape[j] = B.shape[0]
            term = F.mul(term, B[:, Q].reshape(shape))
        rhs = F.add(rhs, term)
    rhs = F.neg(rhs)

    bad = np.argwhere(lhs != rhs)
    if bad.size:
        t = tuple(int(i) for i in bad[0])
        return IdentityCheck(False, t, int(lhs[t]), int(rhs[t]), lhs.size,
                             "pre-trace identity fails on a generator tuple")
    res = IdentityCheck(True, checked=lhs.size)
    if samples:
        rng = rng or np.random.default_rng(0)
        layer = physical_layer(css, mod, sigmas)
        logical = source_gates(mod, sigmas)
        for _ in range(samples):
            xs = [F.random(rng, css.k) for _ in range(m)]
            strings = []
            for x in xs:
                coeff = F.random(rng, css.g0.shape[0])
                s = F.matmul(x[None, :], css.g1)[0]
                if coeff.size:
                    s = F.add(s, F.matmul(coeff[None, :], css.g0)[0])
                strings.append(s)
            a = physical_phase(css, layer, strings)
            b = logical_phase(css, logical, xs)
            if a != b:
                return IdentityCheck(False, None, a, b, res.checked, "traced phases disagree on a sampled input")
    return res


def corollary_sum_check(inst: FamilyInstance, m: int, backend: str | None = None) -> IdentityCheck:
    """All (m+1)-tuples of generator rows satisfy sum_i u_i f^0(i)...f^m(i) = 0.

    The sum is evaluated split into physical and logical coordinates and the
    two halves must be negatives of each other.
    """
    F = inst.field
    rows = inst.code.gens
    blocks = [rows] * (m + 1)
    mask = np.zeros(inst.N, dtype=np.int64)
    mask[list(inst.logical_block)] = 1
    log_w = F.mul(inst.u, mask)
    phys_w = F.sub(inst.u, log_w)
    phys = kernels.tuple_sums(F, blocks, phys_w, backend=backend)
    log = kernels.tuple_sums(F, blocks, log_w, backend=backend)
    bad = np.argwhere(phys != F.neg(log))
    if bad.size:
        t = tuple(int(i) for i in bad[0])
        return IdentityCheck(False, t, int(phys[t]), int(F.neg(log[t])), phys.size,
                             f"order-{m} sum is nonzero on a generator tuple")
    return IdentityCheck(True, checked=phys.size)


@dataclass
class SparseApplyResult:
    phases: np.ndarray
    uniform: bool
    exponent: int | None


def sparse_apply(css: CssCode, gates: Sequence[PhysicalGate], logical_states, budget: int = codes.DEFAULT_BUDGET,
                 backend: str | None = None) -> SparseApplyResult:
    """Accumulated phase exponent for every tuple of terms of sparse states.

    ``logical_states[j]`` is a 2-d array of strings (one per row) for block j,
    e.g. the output of :func:`logical_basis`.  The verdict is uniform when all
    term tuples pick up the same exponent.
    """
    states = [np.asarray(s, dtype=np.int64) for s in logical_states]
    _arity(gates, len(states))
    total = int(np.prod([s.shape[0] for s in states]))
    if total > budget:
        raise BudgetExceeded(total, budget, "sparse application")
    positions, betas = gate_arrays(css, gates)
    if not gates:
        positions = np.zeros((0, len(states)), dtype=np.int64)
    phases = kernels.phase_table(css.field, states, positions, betas, backend=backend)
    first = int(phases.flat[0]) if phases.size else 0
    uniform = bool(np.all(phases == first))
    return SparseApplyResult(phases, uniform, first if uniform else None)


def basis_states(css: CssCode, xs, budget: int = codes.DEFAULT_BUDGET) -> list[np.ndarray]:
    return [logical_basis(css, x, budget) for x in xs]
