import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from descent_forge.errors import BudgetExceeded
from descent_forge.linalg import (PrimeField, Subspace, count_subspaces, enumerate_subspaces,
                                  gaussian_binomial, inverse, is_prime, matmul, rank, rref,
                                  solve_linear)

from oracles import all_subspaces, solutions, span_set

PRIMES = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    p = draw(PRIMES)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(flat, dtype=np.int64).reshape(r, c)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        PrimeField(4)


def test_solve_identity():
    sol = solve_linear(np.eye(2, dtype=np.int64), [1, 0], 2)
    assert sol.particular.tolist() == [1, 0] and sol.kernel_dim == 0


def test_solve_zero_map():
    sol = solve_linear(np.zeros((2, 2), dtype=np.int64), [0, 0], 2)
    assert sol.particular.tolist() == [0, 0] and sol.kernel_dim == 2


def test_solve_rank_one():
    a = np.array([[1, 1], [0, 0]])
    sol = solve_linear(a, [1, 0], 2)
    assert sol.particular.tolist() == [1, 0]
    assert Subspace.span(sol.kernel, 2, 2) == Subspace.span([[1, 1]], 2, 2)
    assert sorted(tuple(x) for x in sol.points(2)) == solutions(a, [1, 0], 2)


def test_solve_infeasible():
    assert solve_linear(np.array([[1, 1], [1, 1]]), [1, 0], 3) is None


@settings(max_examples=150, deadline=None)
@given(matrices(), st.data())
def test_solve_matches_enumeration(pm, data):
    p, a = pm
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[0], max_size=a.shape[0])))
    expected = solutions(a, b, p)
    sol = solve_linear(a, b, p)
    if not expected:
        assert sol is None
    else:
        assert sorted(tuple(int(v) for v in x) for x in sol.points(p)) == expected
        assert sol.count(p) == len(expected)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_is_log_of_image_size(pm):
    p, a = pm
    image = span_set(list(a.T), p)
    assert p ** rank(a, p) == len(image)
    r, piv = rref(a, p)
    assert len(piv) == rank(a, p)
    assert Subspace.span(r[: len(piv)], a.shape[1], p) == Subspace.span(a, a.shape[1], p)


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4))
def test_inverse_roundtrip(pm):
    p, a = pm
    if a.shape[0] != a.shape[1] or rank(a, p) < a.shape[0]:
        return
    n = a.shape[0]
    assert np.array_equal(matmul(a, inverse(a, p), p), np.eye(n, dtype=np.int64))


@pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_subspace_enumeration_against_closure(n, p):
    listed = list(enumerate_subspaces(n, p))
    assert len(listed) == count_subspaces(n, p) == len(all_subspaces(n, p))
    as_sets = {span_set(list(s.basis), p) or frozenset({tuple([0] * n)}) for s in listed}
    assert as_sets == all_subspaces(n, p)


def test_gaussian_binomial():
    assert [gaussian_binomial(4, k, 2) for k in range(5)] == [1, 15, 35, 15, 1]


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_subspaces(6, 2, budget=100))


def test_span_of_nothing():
    assert Subspace.span([], 3, 2).dim == 0
    assert Subspace.span([], 0, 2).dim == 0
