import itertools

import numpy as np
import pytest

from mczcodes import codes
from mczcodes.codes import LinearCode
from mczcodes.css import (
    CssCode,
    _support_search,
    build_css,
    css_distance,
    independence_table,
    logical_basis,
    prepuncture_bound,
    standard_form,
)
from mczcodes.errors import BudgetExceeded, IndependenceViolated, LogicalColumnsDependent, NoLogicalQudits
from mczcodes.family import FamilyInstance, quantum_bounds
from mczcodes.gf import field_create
from mczcodes.linalg import nullspace, rank


def replace(inst, **kw):
    d = dict(code=inst.code, u=inst.u, group=inst.group, logical_block=inst.logical_block,
             m_max=inst.m_max, name=inst.name, dual_distance=inst.dual_distance)
    d.update(kw)
    return FamilyInstance(**d)


def all_vectors(F, n):
    idx = np.arange(F.q**n, dtype=np.int64)
    return (idx[:, None] // F.q ** np.arange(n)) % F.q


# --- standard form --------------------------------------------------------------------


@pytest.mark.parametrize("name", ["rs8", "rs16", "rs25"])
def test_delta_property(name, request):
    p = request.getfixturevalue(name)
    sf = p.sf
    k = sf.k
    assert np.array_equal(sf.g_tilde[:k, :k], np.eye(k, dtype=np.int64))
    assert not np.any(sf.g_tilde[k:, :k])
    for i, Q in enumerate(sf.logical_labels):
        for j, Q2 in enumerate(sf.logical_labels):
            assert sf.rows[i, Q2] == (1 if i == j else 0)
    # same row space as the instance code
    assert LinearCode(p.F, p.inst.N, sf.rows).same_space(p.inst.code)


def test_rs16_top_rows_are_interpolants(rs16):
    sf = rs16.sf
    assert sf.k == 2 and sf.K == 4
    c = rs16.inst.code
    assert np.all(c.contains_vectors(sf.rows[:2]))
    # each vanishes on the other logical point and is 1 on its own
    assert sf.rows[0, 0] == 1 and sf.rows[0, 1] == 0
    assert sf.rows[1, 1] == 1 and sf.rows[1, 0] == 0


def test_standard_form_fixed_point(rs16):
    inst = replace(rs16.inst, code=LinearCode(rs16.F, 16, rs16.sf.rows))
    again = standard_form(inst)
    assert np.array_equal(again.g_tilde, rs16.sf.g_tilde)
    assert np.array_equal(again.rows, rs16.sf.rows)


def test_logical_columns_dependent():
    F = field_create(2, 3)
    c = codes.reed_solomon(F, 2)  # dual distance 3 < |L| = 4
    el = F.elements()
    inst = FamilyInstance(c, np.ones(8, dtype=np.int64), tuple(F.add(el, v) for v in range(4)), (0, 1, 2, 3), 1)
    with pytest.raises(LogicalColumnsDependent) as exc:
        standard_form(inst)
    cols = list(exc.value.columns)
    assert rank(F, c.gens[:, cols]) < len(cols)


# --- CSS construction -------------------------------------------------------------------


def test_rs16_parameters(rs16):
    css = rs16.css
    assert (css.n, css.k, css.K) == (14, 2, 4)
    assert css.physical_labels == tuple(range(2, 16))


def test_rs8_parameters(rs8):
    css = rs8.css
    assert (css.n, css.k, css.K - css.k) == (6, 2, 1)


@pytest.mark.parametrize("name", ["rs8", "rs16", "rs25"])
def test_independence_table_pattern(name, request):
    p = request.getfixturevalue(name)
    css = p.css
    F = p.F
    T = independence_table(css)
    k = css.k
    want = np.zeros_like(T, dtype=bool)
    want[np.arange(k), np.arange(k)] = True
    assert np.array_equal(T != 0, want)
    # independent oracle: the g1 diagonal equals -u_Q, from the vanishing full-length sum
    for i, Q in enumerate(css.logical_labels):
        assert T[i, i] == F.neg(css.u[Q])
    # consequence: row spaces of g0 and g1 meet only in zero
    assert rank(F, css.generator) == css.K
    assert rank(F, css.g1) == k


def test_independence_violation_detected(rs8):
    u = np.array(rs8.inst.u)
    u[5] = 3
    inst = replace(rs8.inst, u=u)
    with pytest.raises(IndependenceViolated):
        build_css(standard_form(inst), inst)


def test_css_nesting(rs16):
    css = rs16.css
    assert codes.contains(css.C1, css.C0_perp)
    assert css.C0.dim == css.n - css.g0.shape[0]


# --- logical basis --------------------------------------------------------------------


def span(F, rows):
    rows = np.atleast_2d(rows)
    if rows.shape[0] == 0:
        return {()}
    msgs = all_vectors(F, rows.shape[0])
    return {tuple(v) for v in F.matmul(msgs, rows).tolist()}


def test_basis_zero_is_g0_span(rs8):
    css = rs8.css
    strings = logical_basis(css, [0, 0])
    assert {tuple(s) for s in strings.tolist()} == span(rs8.F, css.g0)
    assert not np.any(strings[0])


def test_basis_cosets(rs8):
    css, F = rs8.css, rs8.F
    strings = logical_basis(css, [1, 0])
    assert strings.shape == (8, 6)
    g0span = span(F, css.g0)
    for a, b in itertools.combinations(strings.tolist(), 2):
        assert tuple(F.sub(np.array(a), np.array(b)).tolist()) in g0span


def test_basis_disjoint_and_covering(rs8):
    css, F = rs8.css, rs8.F
    seen = set()
    for x in itertools.product(range(8), repeat=2):
        s = {tuple(r) for r in logical_basis(css, x).tolist()}
        assert len(s) == 8
        assert not (s & seen)
        seen |= s
    assert seen == span(F, css.generator)


def test_basis_depends_only_on_coset(rs16):
    css, F = rs16.css, rs16.F
    x = np.array([3, 9])
    base = {tuple(r) for r in logical_basis(css, x).tolist()}
    shift = F.matmul(np.array([[5, 11]]), css.g0)[0]
    offset = F.add(F.matmul(x[None, :], css.g1)[0], shift)
    g0 = F.matmul(all_vectors(F, 2), css.g0)
    shifted = {tuple(r) for r in F.add(g0, offset[None, :]).tolist()}
    assert shifted == base


def test_basis_budget(rs16):
    with pytest.raises(BudgetExceeded):
        logical_basis(rs16.css, [1, 0], budget=100)
    with pytest.raises(ValueError):
        logical_basis(rs16.css, [1, 0, 0])


# --- distance --------------------------------------------------------------------------


def oracle_distances(css):
    """dX over messages, dZ over the whole ambient space."""
    F = css.field
    G = css.generator
    msgs = all_vectors(F, css.K)
    msgs = msgs[np.any(msgs[:, : css.k] != 0, axis=1)]
    dX = int(np.count_nonzero(F.matmul(msgs, G), axis=1).min())
    V = all_vectors(F, css.n)[1:]
    in_C0 = ~np.any(F.matmul(V, css.g0.T), axis=1)
    out_C1perp = np.any(F.matmul(V, G.T), axis=1)
    dZ = int(np.count_nonzero(V[in_C0 & out_C1perp], axis=1).min())
    return dX, dZ


def test_rs8_distance_exact(rs8):
    r = css_distance(rs8.css)
    assert r.exact and (r.dX, r.dZ) == oracle_distances(rs8.css)
    assert r.d == 2 and r.bound == 2 and r.meets_bound
    assert (r.D, r.Dperp) == (6, 4)
    # witnesses realise the weights and lie where they should
    F = rs8.F
    assert np.count_nonzero(r.witness_x) == r.dX and css_member(rs8.css.C1, r.witness_x)
    assert np.count_nonzero(r.witness_z) == r.dZ
    assert not np.any(F.matmul(rs8.css.g0, r.witness_z[:, None]))
    assert np.any(F.matmul(rs8.css.generator, r.witness_z[:, None]))


def css_member(code, v):
    return bool(code.contains_vectors(v)[0])


def test_rs16_distance_meets_bound(rs16):
    r = css_distance(rs16.css)
    assert r.exact and r.bound == 3 == quantum_bounds(13, 5, 2)
    assert r.d >= 3 and r.meets_bound
    assert (r.dX, r.dZ) == (11, 3)


def test_rs25_distance_meets_bound(rs25):
    r = css_distance(rs25.css)
    assert r.exact and r.meets_bound
    assert r.bound == quantum_bounds(20, 7, 5) == 2


def test_support_search_matches_enumeration(rs8):
    css, F = rs8.css, rs8.F
    dX, w = _support_search(F, nullspace(F, css.g0, css.n), nullspace(F, css.generator, css.n), css.n, 10**6)
    assert dX == oracle_distances(css)[0]
    assert css.C1.contains_vectors(w)[0] and not css.C0_perp.contains_vectors(w)[0]


def test_distance_over_budget_reports_bound_only(rs16):
    r = css_distance(rs16.css, budget=50)
    assert not r.exact and r.d is None and r.meets_bound is None


def test_prepuncture_bound(rs8):
    assert prepuncture_bound(rs8.inst) == (6, 4, 2)


def test_no_logical_qudits():
    F = field_create(2)
    css = CssCode(F, np.zeros((0, 3), dtype=np.int64), np.array([[1, 1, 1]]), np.ones(3, dtype=np.int64), (), (0, 1, 2))
    with pytest.raises(NoLogicalQudits):
        css_distance(css)
