from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hftwo.linalg import IntegerLattice, gf2_kernel, gf2_rank, integer_kernel, nonneg_solution, rank

small = st.integers(-4, 4)


def matrices(rows=(1, 4), cols=(1, 5)):
    return st.integers(*cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=rows[0], max_size=rows[1]).map(
            lambda m: (m, n)
        )
    )


@given(matrices())
def test_integer_kernel_is_kernel(data):
    rows, n = data
    basis, _ = integer_kernel(rows, n)
    assert len(basis) == n - rank(rows, n)
    for v in basis:
        assert all(sum(r[j] * v[j] for j in range(n)) == 0 for r in rows)


@given(matrices(rows=(1, 4), cols=(1, 4)), st.lists(small, min_size=4, max_size=4))
def test_lattice_reduce_is_canonical(data, coeffs):
    gens, n = data
    lat = IntegerLattice(gens, n)
    member = [sum(c * g[j] for c, g in zip(coeffs, gens)) for j in range(n)]
    rem, coef = lat.reduce(member)
    assert not any(rem)
    assert [sum(c * g[j] for c, g in zip(coef, gens)) for j in range(n)] == member
    shift = [j + 1 for j in range(n)]
    a = lat.reduce(shift)[0]
    b = lat.reduce([s + m for s, m in zip(shift, member)])[0]
    assert a == b


def test_lattice_index_two():
    lat = IntegerLattice([[2, 0], [0, 1]], 2)
    assert lat.solve([1, 0]) is None
    assert lat.solve([4, 3]) == [2, 3]
    assert lat.reduce([3, 5])[0] == (1, 0)


@settings(max_examples=60)
@given(matrices(rows=(1, 3), cols=(1, 4)), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_nonneg_solution_feasible_instances(data, x0):
    A, n = data
    x0 = x0[:n]
    b = [sum(r[j] * x0[j] for j in range(n)) for r in A]
    x = nonneg_solution(A, b)
    assert x is not None and min(x) >= 0
    assert [sum(r[j] * x[j] for j in range(n)) for r in A] == b


@settings(max_examples=60)
@given(matrices(rows=(1, 2), cols=(1, 3)), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_nonneg_solution_agrees_with_grid_search(data, b):
    # an infeasible verdict must come with a Farkas certificate
    A, n = data
    b = b[: len(A)]
    x = nonneg_solution(A, b)
    if x is not None:
        assert min(x) >= 0
        assert [sum(r[j] * x[j] for j in range(n)) for r in A] == [Fraction(v) for v in b]
    else:
        # look for y with y A >= 0 and y b < 0
        found = False
        for y in itertools.product(range(-6, 7), repeat=len(A)):
            if all(sum(y[i] * A[i][j] for i in range(len(A))) >= 0 for j in range(n)):
                if sum(y[i] * b[i] for i in range(len(A))) < 0:
                    found = True
                    break
        assert found


def test_nonneg_solution_infeasible():
    assert nonneg_solution([[1, 1]], [-1]) is None
    assert nonneg_solution([[1, -1], [1, 1]], [0, 0]) == [0, 0]


@given(st.lists(st.integers(0, 255), max_size=10))
def test_gf2_rank_nullity(cols):
    kernel = gf2_kernel(cols)
    assert gf2_rank(cols) + len(kernel) == len(cols)
    for combo in kernel:
        acc = 0
        for j, v in enumerate(cols):
            if combo >> j & 1:
                acc ^= v
        assert acc == 0
    assert gf2_rank(kernel) == len(kernel)
