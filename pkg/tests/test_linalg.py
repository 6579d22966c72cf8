import numpy as np
from hypothesis import given, strategies as st

from mczcodes.gf import field_create
from mczcodes.linalg import in_rowspace, nullspace, rank, rref, solve_left
from oracles import SlowField, span_set

F3 = field_create(3)
F4 = field_create(2, 2)

mats = st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=1, max_size=4)


@given(mats)
def test_rref_preserves_rowspace(rows):
    A = np.array(rows)
    R, piv = rref(F4, A)
    slow = SlowField(2, 2, F4.modulus)
    assert span_set(slow, R[: len(piv)].tolist(), 4) == span_set(slow, A.tolist(), 4)
    assert rank(F4, A) == len(piv)
    for i, c in enumerate(piv):
        assert R[i, c] == 1 and np.count_nonzero(R[:, c]) == 1


@given(mats)
def test_nullspace_is_orthogonal_complement(rows):
    A = np.array(rows)
    N = nullspace(F4, A, 4)
    assert N.shape[0] == 4 - rank(F4, A)
    if N.size:
        assert not np.any(F4.matmul(A, N.T))


def test_in_rowspace_and_solve():
    A = np.array([[1, 2, 0], [0, 1, 1]])
    R, piv = rref(F3, A)
    v = F3.add(F3.mul(2, A[0]), A[1])
    assert in_rowspace(F3, R, piv, np.stack([v, [0, 0, 1]])).tolist() == [True, False]
    coeff = solve_left(F3, A, v)
    assert coeff.tolist() == [2, 1]
    assert solve_left(F3, A, [0, 0, 1]) is None


def test_rref_column_order():
    A = np.array([[1, 1, 0], [0, 1, 1]])
    R, piv = rref(field_create(2), A, column_order=[2, 1, 0])
    assert piv[0] == 2
