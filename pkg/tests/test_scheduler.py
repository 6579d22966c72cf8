import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mczcodes import kernels
from mczcodes.errors import ArityMismatch, UnknownLabel
from mczcodes.family import depth_bound
from mczcodes.gates import LogicalGate, gate_arrays, layer_is_depth_one, logical_phase, physical_phase
from mczcodes.scheduler import all_to_all, compile_circuit, flatten, random_circuit, schedule_depth, sigma_lookup


def compile_(p, circuit, m=None):
    return compile_circuit(p.inst, p.css, p.sf, circuit, m)


def phases_on_reps(p, sched, m):
    """Physical phases of the schedule on the offset strings of every x-tuple."""
    F = p.F
    xs = (np.arange(F.q**p.css.k)[:, None] // F.q ** np.arange(p.css.k)) % F.q
    reps = F.matmul(xs, p.css.g1)
    pos, betas = gate_arrays(p.css, sched.physical_gates())
    if not betas.size:
        pos = np.zeros((0, m), dtype=np.int64)
    return xs, kernels.phase_table(F, [reps] * m, pos, betas)


# --- sigma lookup -------------------------------------------------------------------------


def test_sigma_lookup_examples(rs8, rs16):
    for Q in rs8.inst.logical_block:
        assert sigma_lookup(rs8.inst, Q, Q) == 0
    i = sigma_lookup(rs8.inst, 0, 1)
    assert np.array_equal(rs8.inst.group[i], rs8.F.add(rs8.F.elements(), 1))
    with pytest.raises(UnknownLabel):
        sigma_lookup(rs16.inst, 0, 9)


@pytest.mark.parametrize("name", ["rs8", "rs16", "rs25"])
def test_sigma_lookup_unique(name, request):
    inst = request.getfixturevalue(name).inst
    L = inst.logical_block
    for a in L:
        got = [sigma_lookup(inst, a, b) for b in L]
        assert sorted(got) == list(range(len(inst.group)))


# --- compile examples ---------------------------------------------------------------------


def test_single_gate_single_layer(rs16):
    s = compile_(rs16, [LogicalGate(3, (1, 0, 1))])
    assert schedule_depth(s) == 1
    assert s.layers[0].mod.S == (1,)


def test_rs8_all_to_all(rs8):
    s = compile_(rs8, all_to_all(rs8.inst, 2))
    assert schedule_depth(s) == 2
    ident = s.layers[0]
    assert ident.sigmas == (0,) and ident.mod.S == (0, 1)
    assert s.layers[1].mod.S == (0, 1)


def test_rs16_all_to_all(rs16):
    s = compile_(rs16, all_to_all(rs16.inst, 3))
    assert schedule_depth(s) == 4 == depth_bound(2, 3)
    assert [l.sigmas for l in s.layers] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_rs25_all_to_all(rs25):
    assert schedule_depth(compile_(rs25, all_to_all(rs25.inst, 2))) == 5
    assert schedule_depth(compile_(rs25, all_to_all(rs25.inst, 3))) == 25


def test_empty_circuit(rs16):
    assert schedule_depth(compile_(rs16, [], m=3)) == 0
    with pytest.raises(ArityMismatch):
        compile_(rs16, [])


def test_mixed_arity_rejected(rs16):
    with pytest.raises(ArityMismatch):
        compile_(rs16, [LogicalGate(1, (0, 1)), LogicalGate(1, (0, 1, 0))])


def test_unknown_target(rs16):
    with pytest.raises(UnknownLabel):
        compile_(rs16, [LogicalGate(1, (0, 4, 1))])


def test_cancellation_char2(rs16):
    s = compile_(rs16, [LogicalGate(5, (0, 1, 1)), LogicalGate(5, (0, 1, 1))])
    assert schedule_depth(s) == 0


def test_cancellation_odd(rs25):
    F = rs25.F
    g = 7
    s = compile_(rs25, [LogicalGate(g, (2, 3)), LogicalGate(int(F.neg(g)), (2, 3))])
    assert schedule_depth(s) == 0
    # partial cancellation keeps the other target
    s = compile_(rs25, [LogicalGate(g, (2, 3)), LogicalGate(int(F.neg(g)), (2, 3)), LogicalGate(1, (0, 1))])
    assert schedule_depth(s) == 1 and s.layers[0].mod.S == (0,)


def test_merge_sums_coefficients(rs25):
    s = compile_(rs25, [LogicalGate(2, (1, 1)), LogicalGate(4, (1, 1))])
    assert s.layers[0].mod.gamma == {1: int(rs25.F.add(2, 4))}


# --- properties ----------------------------------------------------------------------------


@given(st.integers(0, 2**32 - 1), st.integers(0, 40), st.sampled_from([2, 3]))
def test_depth_bound_property(seed, size, m):
    p = _pipe("rs16-ccz")
    circ = random_circuit(p.inst, m, size, np.random.default_rng(seed))
    s = compile_(p, circ, m)
    assert schedule_depth(s) <= depth_bound(p.inst.k, m)
    assert len({l.sigmas for l in s.layers}) == len(s.layers)
    assert all(layer_is_depth_one(l.physical) for l in s.layers)


@given(st.integers(0, 2**32 - 1), st.integers(1, 50))
def test_depth_bound_property_rs25(seed, size):
    p = _pipe("rs25-cz")
    s = compile_(p, random_circuit(p.inst, 2, size, np.random.default_rng(seed)), 2)
    assert schedule_depth(s) <= 5


@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_idempotent(seed, size):
    p = _pipe("rs16-ccz")
    s = compile_(p, random_circuit(p.inst, 3, size, np.random.default_rng(seed)))
    again = compile_(p, flatten(p.inst, s), 3)
    assert again.key() == s.key()


@given(st.integers(0, 2**32 - 1), st.integers(1, 12), st.randoms(use_true_random=False))
def test_order_independent(seed, size, rnd):
    p = _pipe("rs25-cz")
    circ = random_circuit(p.inst, 2, size, np.random.default_rng(seed))
    shuffled = list(circ)
    rnd.shuffle(shuffled)
    assert compile_(p, circ).key() == compile_(p, shuffled).key()


def test_semantics_exhaustive_rs8(rs8):
    rng = np.random.default_rng(5)
    for trial in range(10):
        circ = random_circuit(rs8.inst, 2, int(rng.integers(1, 9)), rng)
        s = compile_(rs8, circ)
        xs, table = phases_on_reps(rs8, s, 2)
        for a, b in itertools.product(range(len(xs)), repeat=2):
            assert table[a, b] == logical_phase(rs8.css, circ, [xs[a], xs[b]])


def test_semantics_sampled_rs16(rs16):
    rng = np.random.default_rng(9)
    F = rs16.F
    for _ in range(5):
        circ = random_circuit(rs16.inst, 3, 10, rng)
        s = compile_(rs16, circ)
        phys = s.physical_gates()
        for _ in range(30):
            xs = [F.random(rng, 2) for _ in range(3)]
            strings = [F.add(F.matmul(x[None], rs16.css.g1)[0], F.matmul(F.random(rng, (1, 2)), rs16.css.g0)[0])
                       for x in xs]
            assert physical_phase(rs16.css, phys, strings) == logical_phase(rs16.css, circ, xs)


_PIPES = {}


def _pipe(name):
    if name not in _PIPES:
        from conftest import Pipeline
        _PIPES[name] = Pipeline(name)
    return _PIPES[name]
