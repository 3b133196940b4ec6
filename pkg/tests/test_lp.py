import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from signrep.errors import InvalidInput, ResourceLimit
from signrep.lp import (Infeasible, LinearProgram, Optimal, Unbounded, check_farkas,
                        check_feasible, solve)


def test_trivial_infeasible_with_multipliers():
    lp = LinearProgram([[1], [-1]], [">=", ">="], [1, 0])
    out = solve(lp)
    assert isinstance(out, Infeasible)
    assert check_farkas(lp, out.farkas)
    assert check_farkas(lp, [1, 1])


def test_maximize_bounded_by_three():
    out = solve(LinearProgram([[1]], ["<="], [3], c=[1], sense="max"))
    assert isinstance(out, Optimal) and out.value == 3


def test_chebyshev_line_on_six_points():
    # minimise eps with |sign t - a t| <= eps on t in {+-1,+-2,+-3}
    A, rel, b = [], [], []
    for t in (-3, -2, -1, 1, 2, 3):
        s = 1 if t > 0 else -1
        A += [[t, 1], [-t, 1]]
        rel += [">=", ">="]
        b += [s, -s]
    out = solve(LinearProgram(A, rel, b, c=[0, 1], lower=[None, 0]))
    assert isinstance(out, Optimal)
    assert out.value == Fraction(1, 2) and out.x[0] == Fraction(1, 2)


def brute_chebyshev_line():
    # balance points: equalise the error at t=1 and t=3
    best = None
    for num in range(0, 201):
        a = Fraction(num, 200)
        e = max(abs(1 - a * t) for t in (1, 2, 3))
        best = e if best is None else min(best, e)
    return best


def test_chebyshev_matches_grid_oracle():
    assert brute_chebyshev_line() == Fraction(1, 2)


def test_unbounded_detected():
    out = solve(LinearProgram([[1]], [">="], [0], c=[1], sense="max"))
    assert isinstance(out, Unbounded)


def test_pivot_cap_is_explicit():
    A = [[1, 1, 1], [1, -1, 0], [0, 1, -1]]
    with pytest.raises(ResourceLimit):
        solve(LinearProgram(A, [">=", "<=", "<="], [1, 0, 0], c=[1, 2, 3]), max_pivots=0)


def test_rejects_malformed():
    with pytest.raises(InvalidInput):
        LinearProgram([[1, 2], [1]], [">=", ">="], [0, 0])
    with pytest.raises(InvalidInput):
        LinearProgram([[1]], ["<"], [0])


def _solve_square(M, r):
    # Gaussian elimination over Fractions; None if singular
    n = len(M)
    a = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(M, r)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def vertex_oracle(A, b, c, box):
    """max c.x over Ax <= b, 0 <= x <= box, by enumerating vertices."""
    n = len(c)
    rows = [(list(r), v) for r, v in zip(A, b)]
    rows += [([1 if j == i else 0 for j in range(n)], box) for i in range(n)]
    rows += [([-1 if j == i else 0 for j in range(n)], 0) for i in range(n)]
    best = None
    for pick in itertools.combinations(range(len(rows)), n):
        x = _solve_square([rows[i][0] for i in pick], [rows[i][1] for i in pick])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(r, x)) <= rhs for r, rhs in rows):
            val = sum(a * v for a, v in zip(c, x))
            best = val if best is None else max(best, val)
    return best


small = st.integers(-4, 4)


@given(st.integers(1, 4), st.integers(1, 6), st.data())
def test_solver_agrees_with_vertex_enumeration(n, m, data):
    A = [data.draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m)]
    b = data.draw(st.lists(st.integers(-6, 8), min_size=m, max_size=m))
    c = data.draw(st.lists(small, min_size=n, max_size=n))
    lp = LinearProgram(A, ["<="] * m, b, c=c, sense="max", lower=[0] * n, upper=[5] * n)
    out = solve(lp)
    ref = vertex_oracle(A, b, c, 5)
    if ref is None:
        assert isinstance(out, Infeasible) and check_farkas(lp, out.farkas)
    else:
        assert isinstance(out, Optimal)
        assert out.value == ref
        assert check_feasible(lp, out.x)


@given(st.integers(1, 4), st.integers(1, 7), st.data())
def test_outcomes_self_certify(n, m, data):
    A = [data.draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m)]
    rel = data.draw(st.lists(st.sampled_from(["<=", ">=", "="]), min_size=m, max_size=m))
    b = data.draw(st.lists(small, min_size=m, max_size=m))
    lp = LinearProgram(A, rel, b)
    out = solve(lp)
    if isinstance(out, Optimal):
        assert check_feasible(lp, out.x)
    else:
        assert isinstance(out, Infeasible) and check_farkas(lp, out.farkas)
