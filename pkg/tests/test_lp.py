import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from delsarte.certificates import hamming_certificate
from delsarte.errors import DomainError, SizeCapExceeded
from delsarte.lp import simplex_max, solve_primal
from delsarte.params import hamming_parameters, johnson_parameters, SchemeParameters


def scipy_lp(params, d):
    n = params.n
    ts = list(range(d, n + 1))
    A = [[-float(params.q(i, t)) for t in ts] for i in range(n + 1)]
    b = [float(params.m[i]) for i in range(n + 1)]
    res = linprog(-np.ones(len(ts)), A_ub=A, b_ub=b, bounds=(0, None), method="highs")
    assert res.status == 0
    return 1 - res.fun


def test_examples(ham7):
    assert solve_primal(ham7, 3).value == 16
    for p in (ham7, johnson_parameters(6, 3), hamming_parameters(3, 3)):
        assert solve_primal(p, 1).value == p.size


@pytest.mark.parametrize(
    "params",
    [hamming_parameters(n, q) for n, q in [(9, 2), (12, 2), (6, 3), (5, 4)]]
    + [johnson_parameters(n, a) for n, a in [(10, 4), (12, 5)]],
    ids=lambda p: p.name,
)
def test_matches_scipy(params):
    for d in range(1, params.n + 1):
        exact = solve_primal(params, d)
        assert abs(float(exact.value) - scipy_lp(params, d)) < 1e-6
        assert exact.value <= hamming_certificate(params, d).bound


def test_known_values():
    # A_LP(n, d) for binary codes, e.g. A_LP(8,3) = 128/5 and A_LP(12,4) = 2^12/(1+12+66)... checked against scipy above
    assert solve_primal(hamming_parameters(8, 2), 3).value == Fraction(128, 5)
    assert solve_primal(hamming_parameters(8, 2), 4).value == 16


def test_solution_is_feasible(ham8):
    sol = solve_primal(ham8, 3)
    u = sol.u
    assert u[0] == 1 and u[1] == u[2] == 0
    assert all(x >= 0 for x in u)
    for i in range(9):
        assert sum(ham8.q(i, t) * u[t] for t in range(9)) >= 0
    assert sum(u) == sol.value


@given(st.integers(4, 14), st.data())
def test_row_order_invariance(n, data):
    p = hamming_parameters(n, 2)
    d = data.draw(st.integers(1, n))
    order = data.draw(st.permutations(range(n + 1)))
    assert solve_primal(p, d, row_order=order).value == solve_primal(p, d).value


def test_domain_errors(ham7):
    with pytest.raises(DomainError):
        solve_primal(ham7, 0)
    with pytest.raises(DomainError):
        solve_primal(ham7, 2, row_order=[0, 0, 1, 2, 3, 4, 5, 6])
    with pytest.raises(SizeCapExceeded):
        solve_primal(hamming_parameters(65, 2), 3)
    with pytest.raises(DomainError):
        simplex_max([[1]], [-1], [1])


def test_simplex_small():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    status, value, x, _ = simplex_max([[1, 2], [3, 1]], [4, 6], [1, 1])
    assert status == "optimal" and value == Fraction(14, 5)
    assert x == [Fraction(8, 5), Fraction(6, 5)]
    assert simplex_max([[-1]], [1], [1])[0] == "unbounded"


@given(st.integers(0, 10 ** 6))
def test_simplex_random_against_scipy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    A = [[rng.randint(-3, 6) for _ in range(cols)] for _ in range(rows)]
    A.append([1] * cols)  # keeps the program bounded
    b = [rng.randint(0, 9) for _ in range(rows + 1)]
    c = [rng.randint(-2, 5) for _ in range(cols)]
    status, value, x, _ = simplex_max(A, b, c)
    res = linprog(-np.array(c, float), A_ub=np.array(A, float), b_ub=np.array(b, float), bounds=(0, None), method="highs")
    assert status == "optimal"
    assert abs(float(value) + res.fun) < 1e-7
    assert all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b))
