"""Compile inter-block logical multi-control-Z circuits into depth-one physical layers.

Each logical gate on (Q_0, ..., Q_{m-1}) is filed under the sigma-tuple
(s_1, ..., s_{m-1}) with s_j(Q_0) = Q_j.  Regularity of the group action makes
that key unique, and all gates sharing a key become one modulated layer, so
the layer count never exceeds |group|^(m-1).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .css import CssCode, StandardForm
from .errors import ArityMismatch, NonRegular, UnknownLabel
from .family import FamilyInstance, depth_bound
from .gates import LogicalGate, ModulationSpec, PhysicalGate, modulation_build, physical_layer


@dataclass(frozen=True, eq=False)
class Layer:
    sigmas: tuple[int, ...]
    mod: ModulationSpec
    physical: tuple[PhysicalGate, ...]


@dataclass(frozen=True, eq=False)
class GateSchedule:
    m: int
    layers: tuple[Layer, ...]
    source: tuple[LogicalGate, ...]

    def physical_gates(self) -> list[PhysicalGate]:
        return [g for layer in self.layers for g in layer.physical]

    def key(self) -> tuple:
        """Hashable canonical content (sigmas, S, gamma, physical gates) for comparisons."""
        return (self.m, tuple(
            (l.sigmas, l.mod.S, tuple(sorted(l.mod.gamma.items())), l.physical) for l in self.layers))


def sigma_lookup(inst: FamilyInstance, q_from: int, q_to: int) -> int:
    """Index of the unique group element sending logical label ``q_from`` to ``q_to``."""
    L = inst.logical_block
    for lab in (q_from, q_to):
        if lab not in L:
            raise UnknownLabel(f"{lab} is not a logical label")
    hits = [i for i, g in enumerate(inst.group) if int(g[q_from]) == q_to]
    if len(hits) != 1:
        raise NonRegular(f"{len(hits)} group elements map {q_from} to {q_to}")
    return hits[0]


def compile_circuit(inst: FamilyInstance, css: CssCode, sf: StandardForm,
                    circuit: Sequence[LogicalGate], m: int | None = None) -> GateSchedule:
    """Bucket gates by sigma-tuple, merge coefficients, emit one layer per bucket.

    Gates in a bucket with the same block-0 target have their coefficients
    summed in GF(q); zero sums and empty buckets are dropped.  Layers come in
    lexicographic order of group indices.
    """
    F = inst.field
    circuit = list(circuit)
    if m is None:
        if not circuit:
            raise ArityMismatch("arity is required for an empty circuit")
        m = circuit[0].m
    buckets: dict[tuple[int, ...], dict[int, int]] = defaultdict(dict)
    for g in circuit:
        if g.m != m:
            raise ArityMismatch(f"gate {g} has arity {g.m}, expected {m}")
        Q0 = g.targets[0]
        key = tuple(sigma_lookup(inst, Q0, Qj) for Qj in g.targets[1:])
        b = buckets[key]
        b[Q0] = int(F.add(b.get(Q0, 0), g.gamma))
    layers = []
    for key in sorted(buckets):
        coeffs = {Q: c for Q, c in buckets[key].items() if c}
        if not coeffs:
            continue
        S = tuple(sorted(coeffs, key=sf.logical_labels.index))
        mod = modulation_build(css, sf, S, coeffs)
        sigmas = [inst.group[i] for i in key]
        layers.append(Layer(key, mod, tuple(physical_layer(css, mod, sigmas))))
    sched = GateSchedule(m, tuple(layers), tuple(circuit))
    assert schedule_depth(sched) <= depth_bound(len(inst.group), m)
    return sched


def schedule_depth(s: GateSchedule) -> int:
    return len(s.layers)


def flatten(inst: FamilyInstance, s: GateSchedule) -> list[LogicalGate]:
    """Logical reading of a schedule: one gate per (layer, target) pair."""
    out = []
    for layer in s.layers:
        sig = [inst.group[i] for i in layer.sigmas]
        for Q in layer.mod.S:
            out.append(LogicalGate(layer.mod.gamma[Q], (Q,) + tuple(int(g[Q]) for g in sig)))
    return out


def all_to_all(inst: FamilyInstance, m: int, gamma: int = 1) -> list[LogicalGate]:
    """Every inter-block gate on m blocks, in lexicographic target order."""
    return [LogicalGate(gamma, t) for t in itertools.product(inst.logical_block, repeat=m)]


def random_circuit(inst: FamilyInstance, m: int, size: int, rng: np.random.Generator,
                   gamma_one: bool = False) -> list[LogicalGate]:
    L = np.asarray(inst.logical_block)
    q = inst.field.q
    out = []
    for _ in range(size):
        t = tuple(int(x) for x in rng.choice(L, size=m))
        gam = 1 if gamma_one else int(rng.integers(1, q))
        out.append(LogicalGate(gam, t))
    return out
