"""Exact primal solver for Delsarte's linear program.

With ``u(0) = 1`` and ``u(t) = 0`` on ``[1, d-1]`` the remaining variables
``u(d..n) >= 0`` satisfy ``-sum_t q_i(t) u(t) <= m_i`` for every ``i``.  The
right-hand side is nonnegative, so the all-slack basis is feasible and no
phase one is needed.

The tableau is kept in integers with a single common denominator (Edmonds'
integer-preserving pivot), and Bland's rule prevents cycling on these very
degenerate programs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, LpError, SizeCapExceeded
from .params import RadialFunction, SchemeParameters, _lcm_den

MAX_LP_N = 64

__all__ = ["MAX_LP_N", "LpSolution", "solve_primal", "simplex_max"]


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    u: RadialFunction
    status: str = "optimal"
    pivots: int = 0


def simplex_max(A: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int]):
    """Maximise ``c.x`` subject to ``A x <= b``, ``x >= 0`` with integer data and ``b >= 0``.

    Returns ``(status, value, x, pivots)`` with exact ``Fraction`` values;
    ``status`` is ``"optimal"`` or ``"unbounded"``.
    """
    rows, cols = len(A), len(c)
    if any(bi < 0 for bi in b):
        raise DomainError("simplex_max needs b >= 0")
    width = cols + rows + 1
    T = []
    for i in range(rows):
        row = list(A[i]) + [0] * rows + [b[i]]
        row[cols + i] = 1
        T.append(row)
    obj = [-cj for cj in c] + [0] * (rows + 1)
    basis = [cols + i for i in range(rows)]
    den = 1
    pivots = 0
    while True:
        enter = next((j for j in range(width - 1) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                if leave is None:
                    leave = i
                    continue
                # compare T[i][-1]/a with T[leave][-1]/T[leave][enter]
                lhs = T[i][-1] * T[leave][enter]
                rhs = T[leave][-1] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            return "unbounded", None, None, pivots
        piv_row = T[leave]
        pv = piv_row[enter]
        for i in range(rows):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            if f:
                T[i] = [(pv * x - f * y) // den for x, y in zip(row, piv_row)]
            else:
                T[i] = [pv * x // den for x in row]
        f = obj[enter]
        obj = [(pv * x - f * y) // den for x, y in zip(obj, piv_row)]
        den = pv
        basis[leave] = enter
        pivots += 1
    x = [Fraction(0)] * cols
    for i, bv in enumerate(basis):
        if bv < cols:
            x[bv] = Fraction(T[i][-1], den)
    return "optimal", Fraction(obj[-1], den), x, pivots


def solve_primal(params: SchemeParameters, d: int, row_order: Optional[Sequence[int]] = None) -> LpSolution:
    """Exact ``A_LP(n, d)`` and an optimal distribution ``u``.

    ``row_order`` permutes the MacWilliams constraints (used to test that the
    optimum does not depend on it).
    """
    n = params.n
    if not params.is_exact:
        raise DomainError("solve_primal needs an exact parameter table")
    if not isinstance(d, int) or not 1 <= d <= n:
        raise DomainError(f"d must lie in [1, {n}], got {d}")
    if n > MAX_LP_N:
        raise SizeCapExceeded(f"the exact simplex is capped at n <= {MAX_LP_N}, got n={n}")
    ts = list(range(d, n + 1))
    order = list(range(n + 1)) if row_order is None else list(row_order)
    if sorted(order) != list(range(n + 1)):
        raise DomainError("row_order must be a permutation of [0, n]")
    A, b = [], []
    for i in order:
        coeffs = [params.q(i, t) for t in ts]
        s = _lcm_den(coeffs + [params.m[i]])
        A.append([int(-q * s) for q in coeffs])
        b.append(int(params.m[i] * s))
    status, value, x, pivots = simplex_max(A, b, [1] * len(ts))
    if status != "optimal":
        raise LpError(f"Delsarte LP reported {status} for n={n}, d={d}")
    u = RadialFunction([1] + [0] * (d - 1) + x)
    # every MacWilliams constraint must hold exactly at the optimum
    for i in range(n + 1):
        if sum(params.q(i, t) * u[t] for t in range(n + 1)) < 0:
            raise LpError(f"optimal point violates constraint i={i}")
    if any(v < 0 for v in u):
        raise LpError("optimal point has a negative coordinate")
    return LpSolution(1 + value, u, "optimal", pivots)
