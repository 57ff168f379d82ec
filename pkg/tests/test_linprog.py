from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog as scipy_linprog

from jetmld.linprog import solve_lp


def test_small_known_optimum():
    # min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
    res = solve_lp([-1, -1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.ok
    assert res.x == (Fraction(8, 5), Fraction(6, 5))
    assert res.value == Fraction(-14, 5)


def test_infeasible_and_unbounded():
    assert solve_lp([1], A_ub=[[1], [-1]], b_ub=[1, -2]).status == "infeasible"
    assert solve_lp([-1], A_ub=[[-1]], b_ub=[0]).status == "unbounded"
    assert solve_lp([1], free=[0]).status == "unbounded"
    assert solve_lp([1, 2]).value == 0


def test_free_variables_and_equalities():
    # min t  s.t. t >= x - 3, t >= 3 - x, x = 1  ->  t = 2
    res = solve_lp([0, 1], A_ub=[[1, -1], [-1, -1]], b_ub=[3, -3], A_eq=[[1, 0]], b_eq=[1], free=[1])
    assert res.ok and res.value == 2


def test_degenerate_redundant_rows():
    res = solve_lp([1, 1], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert res.ok and res.value == 1


@pytest.mark.parametrize("seed", range(40))
def test_matches_scipy_on_random_bounded_problems(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 4), rng.randint(1, 5)
    A = [[rng.randint(-3, 5) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(-2, 10) for _ in range(m)]
    c = [rng.randint(-4, 4) for _ in range(n)]
    # box keeps the problem bounded
    A_box = A + [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    b_box = b + [7] * n
    ours = solve_lp(c, A_ub=A_box, b_ub=b_box)
    ref = scipy_linprog(c, A_ub=np.array(A_box, float), b_ub=np.array(b_box, float), bounds=[(0, None)] * n, method="highs")
    if ref.status == 2:
        assert ours.status == "infeasible"
    else:
        assert ours.ok
        assert float(ours.value) == pytest.approx(ref.fun, abs=1e-7)
        for row, bi in zip(A_box, b_box):
            assert sum(Fraction(a) * x for a, x in zip(row, ours.x)) <= bi
