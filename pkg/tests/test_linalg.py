from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from f4solv.linalg import RatMatrix, nullspace, rank, solve, solve_with_rank


def fractions():
    return st.builds(
        F,
        st.integers(min_value=-6, max_value=6),
        st.integers(min_value=1, max_value=4),
    )


def matrices(max_dim=5):
    return st.integers(min_value=1, max_value=max_dim).flatmap(
        lambda rows: st.integers(min_value=1, max_value=max_dim).flatmap(
            lambda cols: st.lists(
                st.lists(fractions(), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            ).map(RatMatrix)
        )
    )


def test_identity_solve_returns_rhs():
    m = RatMatrix.identity(4)
    rhs = [F(3), F(-1, 2), F(0), F(7, 3)]
    assert solve(m, rhs) == rhs


def test_zero_matrix_nullspace_is_full():
    basis = nullspace(RatMatrix.zero(3, 3))
    assert len(basis) == 3


def test_inconsistent_system_signals_none():
    m = RatMatrix([[1, 1], [1, 1]])
    assert solve(m, [F(1), F(2)]) is None


def test_underdetermined_particular_solution():
    m = RatMatrix([[1, 1, 0], [0, 0, 1]])
    x = solve(m, [F(2), F(5)])
    assert m.mul_vector(x) == [F(2), F(5)]


def test_rank_reported():
    m = RatMatrix([[1, 2], [2, 4], [0, 1]])
    _, r = solve_with_rank(m, [F(0), F(0), F(0)])
    assert r == 2 == rank(m)


@settings(max_examples=60)
@given(m=matrices())
def test_nullspace_vectors_annihilate(m):
    basis = nullspace(m)
    for v in basis:
        assert all(val == 0 for val in m.mul_vector(v))
    assert len(basis) == m.cols - rank(m)


@settings(max_examples=60)
@given(m=matrices(), data=st.data())
def test_solutions_satisfy_system(m, data):
    rhs = data.draw(st.lists(fractions(), min_size=m.rows, max_size=m.rows))
    x = solve(m, rhs)
    if x is not None:
        assert m.mul_vector(x) == [F(v) for v in rhs]


@settings(max_examples=40)
@given(m=matrices(4), data=st.data())
def test_consistent_systems_are_solved(m, data):
    # build a consistent right-hand side from a known solution
    x = data.draw(st.lists(fractions(), min_size=m.cols, max_size=m.cols))
    rhs = m.mul_vector(x)
    got = solve(m, rhs)
    assert got is not None
    assert m.mul_vector(got) == rhs
