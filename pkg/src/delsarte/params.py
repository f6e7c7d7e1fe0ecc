"""Exact parameter tables of distance-induced association schemes.

A :class:`SchemeParameters` carries valencies, multiplicities and the
p-/q-number matrices (``P[i][j] = p_i(j)``, ``Q[i][j] = q_i(j)``).  Closed-form
families (Hamming, Johnson) fill them lazily, so very long Hamming schemes
can still answer column queries without materialising an ``(n+1)^2`` table.

Radial functions, Fourier transforms, both convolutions and code
distance distributions live here as well.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Optional, Sequence

from . import kernels
from .errors import DomainError, SoundnessError
from .exact import HahnSpec, KrawtchoukSpec, binomial, hahn_eval

__all__ = [
    "RadialFunction",
    "SchemeParameters",
    "hamming_parameters",
    "johnson_parameters",
    "intersection_numbers",
    "krein_parameters",
    "check_q_polynomial",
    "hat",
    "tilde",
    "star",
    "ostar",
    "Code",
    "DistanceDistribution",
    "distance_distribution",
    "hamming_q_column",
]


def _lcm_den(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b),
                  (Fraction(v).denominator for v in values), 1)


def _scale(values) -> tuple[list[int], int]:
    """Write rational ``values`` as ``ints / den`` with one common denominator."""
    den = _lcm_den(values)
    return [int(Fraction(v) * den) for v in values], den


class RadialFunction:
    """An exact function on ``[0, n]`` (distances or eigenspace indices)."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable):
        vals = tuple(v if isinstance(v, (Fraction, float)) else Fraction(v) for v in values)
        if not vals:
            raise DomainError("a radial function needs at least one value")
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("RadialFunction is immutable")

    @classmethod
    def zeros(cls, n: int) -> "RadialFunction":
        return cls([0] * (n + 1))

    @classmethod
    def indicator(cls, n: int, u: int) -> "RadialFunction":
        if not 0 <= u <= n:
            raise DomainError(f"indicator point {u} outside [0, {n}]")
        return cls([1 if x == u else 0 for x in range(n + 1)])

    @classmethod
    def ball(cls, n: int, e: int) -> "RadialFunction":
        """Indicator of ``[0, e]``."""
        return cls([1 if x <= e else 0 for x in range(n + 1)])

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, x):
        return self.values[x]

    def __eq__(self, other):
        if isinstance(other, RadialFunction):
            return self.values == other.values
        if isinstance(other, (list, tuple)):
            return self.values == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "RadialFunction([" + ", ".join(str(v) for v in self.values) + "])"

    def _zip(self, other, op):
        if isinstance(other, RadialFunction):
            if len(other) != len(self):
                raise DomainError("radial functions have different lengths")
            return RadialFunction(op(a, b) for a, b in zip(self.values, other.values))
        return RadialFunction(op(a, other) for a in self.values)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RadialFunction(a / other for a in self.values)

    def __neg__(self):
        return RadialFunction(-a for a in self.values)

    def support(self) -> list[int]:
        return [x for x, v in enumerate(self.values) if v != 0]

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)


def _as_radial(f) -> RadialFunction:
    return f if isinstance(f, RadialFunction) else RadialFunction(f)


class SchemeParameters:
    """Parameter table of a distance-induced association scheme.

    ``q_column(x)`` returns ``[q_0(x), ..., q_n(x)]``; the ``P``/``Q``
    matrices are materialised on first access.  Intersection and Krein rows
    are memoised per ``(i, j)`` pair.
    """

    #: full tables are only materialised up to this many classes
    MAX_MATERIALISED = 512

    def __init__(
        self,
        n: int,
        size: int,
        v: Sequence,
        m: Sequence,
        *,
        P=None,
        Q=None,
        q_column: Optional[Callable[[int], list]] = None,
        p_from_q: Optional[Callable[["SchemeParameters"], list]] = None,
        q1: Optional[Sequence] = None,
        is_exact: bool = True,
        is_q_polynomial: Optional[bool] = None,
        name: str = "",
    ):
        self.n = n
        self.size = size
        self.v = tuple(v)
        self.m = tuple(m)
        self.is_exact = is_exact
        self.name = name or f"scheme(n={n}, |X|={size})"
        self._P = None if P is None else tuple(tuple(r) for r in P)
        self._Q = None if Q is None else tuple(tuple(r) for r in Q)
        self._q_column = q_column
        self._p_from_q = p_from_q
        self._is_q_polynomial = is_q_polynomial
        self._q1 = None if q1 is None else tuple(q1)
        self._lock = threading.Lock()
        self._columns: dict[int, tuple] = {}
        self._int_rows: dict[tuple, tuple] = {}
        self._scaled = None
        if len(self.v) != n + 1 or len(self.m) != n + 1:
            raise DomainError("valency/multiplicity vectors must have length n+1")

    def __repr__(self):
        return f"SchemeParameters({self.name})"

    # -- basic access -----------------------------------------------------

    def q_col(self, x: int) -> tuple:
        """``(q_0(x), ..., q_n(x))``."""
        col = self._columns.get(x)
        if col is None:
            if self._Q is not None:
                col = tuple(self._Q[i][x] for i in range(self.n + 1))
            elif self._q_column is not None:
                col = tuple(self._q_column(x))
            else:
                raise DomainError("parameter table has no q-numbers")
            self._columns.setdefault(x, col)
        return col

    def q(self, i: int, x: int):
        return self.q_col(x)[i]

    def q1(self) -> tuple:
        """The function ``x -> q_1(x)``."""
        if self._q1 is not None:
            return self._q1
        if self.n == 0:
            raise DomainError("q_1 is undefined for a one-class table")
        return tuple(self.q_col(x)[1] for x in range(self.n + 1))

    def _check_materialisable(self):
        if self.n > self.MAX_MATERIALISED:
            raise DomainError(
                f"full parameter tables are capped at n <= {self.MAX_MATERIALISED}, got n={self.n}"
            )

    @property
    def Q(self) -> tuple:
        if self._Q is None:
            self._check_materialisable()
            cols = [self.q_col(x) for x in range(self.n + 1)]
            self._Q = tuple(tuple(cols[x][i] for x in range(self.n + 1)) for i in range(self.n + 1))
        return self._Q

    @property
    def P(self) -> tuple:
        if self._P is None:
            self._check_materialisable()
            if self._p_from_q is None:
                raise DomainError("parameter table has no p-numbers")
            self._P = tuple(tuple(r) for r in self._p_from_q(self))
        return self._P

    def p(self, i: int, x: int):
        return self.P[i][x]

    @property
    def is_q_polynomial(self) -> bool:
        if self._is_q_polynomial is None:
            self._is_q_polynomial = check_q_polynomial(self)[0]
        return self._is_q_polynomial

    # -- scaled integer views used by the exact kernels --------------------

    def _scaled_tables(self):
        if self._scaled is None:
            if not self.is_exact:
                raise DomainError("integer views need exact parameters")
            P, Q = self.P, self.Q
            pden = _lcm_den(e for r in P for e in r)
            qden = _lcm_den(e for r in Q for e in r)
            Pint = tuple(tuple(int(e * pden) for e in r) for r in P)
            Qint = tuple(tuple(int(e * qden) for e in r) for r in Q)
            self._scaled = (Pint, pden, Qint, qden)
        return self._scaled

    def int_row(self, kind: str, i: int, j: int) -> tuple[tuple, int]:
        """Scaled row of intersection (``kind='p'``) or Krein (``'q'``) numbers.

        Returns ``(ints, den)`` with ``T_{i,j}^k = ints[k] / den``.
        """
        if i > j:
            i, j = j, i
        key = (kind, i, j)
        row = self._int_rows.get(key)
        Pint, pden, Qint, qden = self._scaled_tables()
        if kind == "p":
            den = pden * pden * qden * self.size
        else:
            den = qden * qden * pden * self.size
        if row is None:
            if kind == "p":
                ints = kernels.triple_row(Pint[i], Pint[j], Qint)
            elif kind == "q":
                ints = kernels.triple_row(Qint[i], Qint[j], Pint)
            else:
                raise DomainError(f"unknown row kind {kind!r}")
            row = tuple(ints)
            with self._lock:
                self._int_rows.setdefault(key, row)
        return row, den

    def _float_row(self, kind: str, i: int, j: int) -> list:
        A, B = (self.P, self.Q) if kind == "p" else (self.Q, self.P)
        n1 = self.n + 1
        return [sum(A[i][m] * A[j][m] * B[m][k] for m in range(n1)) / self.size for k in range(n1)]

    def row(self, kind: str, i: int, j: int) -> tuple:
        if not self.is_exact:
            return tuple(self._float_row(kind, i, j))
        ints, den = self.int_row(kind, i, j)
        return tuple(Fraction(e, den) for e in ints)

    # -- identities ---------------------------------------------------------

    def verify(self, tol: float = 1e-9) -> None:
        """Check the structural identities; raise :class:`SoundnessError` on failure."""
        n1 = self.n + 1
        P, Q = self.P, self.Q

        def close(a, b):
            return a == b if self.is_exact else abs(a - b) <= tol

        for j in range(n1):
            if not (close(P[0][j], 1) and close(Q[0][j], 1)):
                raise SoundnessError(f"p_0/q_0 not identically 1 at {j}")
        for i in range(n1):
            if not (close(P[i][0], self.v[i]) and close(Q[i][0], self.m[i])):
                raise SoundnessError(f"p_i(0) != v_i or q_i(0) != m_i at i={i}")
        if not (close(sum(self.v), self.size) and close(sum(self.m), self.size)):
            raise SoundnessError("valencies or multiplicities do not sum to |X|")
        for i in range(n1):
            for k in range(n1):
                s = sum(P[i][j] * Q[j][k] for j in range(n1))
                if not close(s, self.size if i == k else 0):
                    raise SoundnessError(f"P.Q != |X| I at ({i},{k})")
        for i in range(n1):
            for j in range(n1):
                if not close(self.m[j] * P[i][j], self.v[i] * Q[j][i]):
                    raise SoundnessError(f"m_j p_i(j) != v_i q_j(i) at ({i},{j})")


# -- closed-form families -------------------------------------------------


def hamming_q_column(n: int, q: int, x: int) -> list[int]:
    """``[K_0(x), ..., K_n(x)]`` by the three-term recurrence in the degree."""
    col = [1]
    if n >= 1:
        col.append((q - 1) * n - q * x)
    for k in range(1, n):
        num = ((q - 1) * (n - k) + k - q * x) * col[k] - (q - 1) * (n - k + 1) * col[k - 1]
        nxt, rem = divmod(num, k + 1)
        if rem:
            raise SoundnessError("Krawtchouk recurrence produced a non-integer")
        col.append(nxt)
    return col


def hamming_parameters(n: int, q: int) -> SchemeParameters:
    """Hamming scheme on ``F_q^n``: ``v_i = m_i = C(n,i)(q-1)^i``, p- and q-numbers are Krawtchouk values."""
    if n < 1 or q < 2:
        raise DomainError(f"hamming_parameters needs n >= 1 and q >= 2, got n={n}, q={q}")
    v = [binomial(n, i) * (q - 1) ** i for i in range(n + 1)]

    def p_from_q(params):
        return params.Q

    return SchemeParameters(
        n, q ** n, v, v,
        q_column=lambda x: [Fraction(c) for c in hamming_q_column(n, q, x)],
        p_from_q=p_from_q,
        q1=[Fraction((q - 1) * n - q * x) for x in range(n + 1)],
        is_q_polynomial=True,
        name=f"hamming(n={n}, q={q})",
    )


def _solve_exact(A: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix by fraction-free Gauss-Jordan elimination.

    After eliminating column ``c`` every entry is a minor of the scaled input,
    so the division by the previous pivot is exact.
    """
    N = len(A)
    den = _lcm_den(e for r in A for e in r)
    M = [[int(e * den) for e in r] + [1 if i == j else 0 for j in range(N)] for i, r in enumerate(A)]
    prev = 1
    for c in range(N):
        piv = next((r for r in range(c, N) if M[r][c] != 0), None)
        if piv is None:
            raise SoundnessError("singular Q matrix")
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
        pc, row_c = M[c][c], M[c]
        for r in range(N):
            if r == c:
                continue
            f, row_r = M[r][c], M[r]
            M[r] = [(pc * a - f * b) // prev for a, b in zip(row_r, row_c)]
        prev = pc
    # every diagonal entry now equals the determinant ``prev``
    return [[Fraction(M[r][N + k] * den, prev) for k in range(N)] for r in range(N)]


def johnson_parameters(n: int, a: int) -> SchemeParameters:
    """Johnson scheme on the weight-``a`` words of ``F_2^n`` with distance half the Hamming distance."""
    if not 1 <= a <= n // 2:
        raise DomainError(f"johnson_parameters needs 1 <= a <= n/2, got n={n}, a={a}")
    v = [binomial(a, i) * binomial(n - a, i) for i in range(a + 1)]
    m = [binomial(n, i) - binomial(n, i - 1) for i in range(a + 1)]
    size = binomial(n, a)
    specs = [HahnSpec(n, a, k) for k in range(a + 1)]

    def q_column(x):
        return [hahn_eval(s, x) for s in specs]

    def p_from_q(params):
        inv = _solve_exact(params.Q)
        # P = |X| Q^{-1}
        return [[size * e for e in r] for r in inv]

    return SchemeParameters(
        a, size, v, m,
        q_column=q_column,
        p_from_q=p_from_q,
        q1=[Fraction(n - 1) * (1 - Fraction(n * i, a * (n - a))) for i in range(a + 1)],
        is_q_polynomial=True,
        name=f"johnson(n={n}, a={a})",
    )


# -- structure constants ---------------------------------------------------


def intersection_numbers(params: SchemeParameters, i: int, j: int, k: int):
    """``p_{i,j}^k = (1/|X|) sum_m p_i(m) p_j(m) q_m(k)``."""
    return params.row("p", i, j)[k]


def krein_parameters(params: SchemeParameters, i: int, j: int, k: int):
    """``q_{i,j}^k = (1/|X|) sum_m q_i(m) q_j(m) p_m(k)``."""
    return params.row("q", i, j)[k]


def check_q_polynomial(params: SchemeParameters, tol: Optional[float] = None):
    """Return ``(ok, violation)`` for the Q-polynomial vanishing pattern and non-degeneracy.

    ``violation`` is ``None`` or a tuple ``(reason, i, j, k)``.
    """
    if tol is None:
        tol = 0 if params.is_exact else 1e-9
    n = params.n

    def is_zero(x):
        return x == 0 if tol == 0 else abs(x) <= tol

    for i in range(n + 1):
        for j in range(i, n + 1):
            row = params.row("q", i, j)
            for k in range(n + 1):
                if (k > i + j or j - i > k) and not is_zero(row[k]):
                    return False, ("vanishing", i, j, k)
    for k in range(n):
        if is_zero(params.row("q", 1, k)[k + 1]):
            return False, ("degenerate", 1, k, k + 1)
    return True, None


# -- transforms and convolutions -------------------------------------------


def hat(params: SchemeParameters, f) -> RadialFunction:
    """``hat(f)(x) = sum_y f(y) p_y(x)``."""
    f = _as_radial(f)
    P = params.P
    n1 = params.n + 1
    return RadialFunction(sum(f[y] * P[y][x] for y in range(n1) if f[y]) for x in range(n1))


def tilde(params: SchemeParameters, f) -> RadialFunction:
    """``tilde(f)(x) = (1/|X|) sum_y f(y) q_y(x)``."""
    f = _as_radial(f)
    n1 = params.n + 1
    out = []
    for x in range(n1):
        col = params.q_col(x)
        out.append(sum(f[y] * col[y] for y in range(n1) if f[y]) / params.size)
    return RadialFunction(out)


def _bilinear(params: SchemeParameters, kind: str, f, g) -> RadialFunction:
    f, g = _as_radial(f), _as_radial(g)
    n1 = params.n + 1
    if len(f) != n1 or len(g) != n1:
        raise DomainError("radial function length does not match the scheme")
    if not params.is_exact:
        out = [0.0] * n1
        for y in f.support():
            for z in g.support():
                row = params.row(kind, y, z)
                for x in range(n1):
                    out[x] += f[y] * g[z] * row[x]
        if kind == "q":
            out = [e / params.size for e in out]
        return RadialFunction(out)
    fi, fden = _scale(f)
    gi, gden = _scale(g)
    coeffs, rows = [], []
    den = 1
    for y in f.support():
        for z in g.support():
            ints, den = params.int_row(kind, y, z)
            coeffs.append(fi[y] * gi[z])
            rows.append(ints)
    if not rows:
        return RadialFunction.zeros(params.n)
    total = kernels.weighted_row_sum(coeffs, rows, n1)
    scale = fden * gden * den * (params.size if kind == "q" else 1)
    return RadialFunction(Fraction(t, scale) for t in total)


def star(params: SchemeParameters, f, g) -> RadialFunction:
    """``(f * g)(x) = sum_{y,z} f(y) g(z) p_{y,z}^x``."""
    return _bilinear(params, "p", f, g)


def ostar(params: SchemeParameters, f, g) -> RadialFunction:
    """``(f o g)(x) = (1/|X|) sum_{y,z} f(y) g(z) q_{y,z}^x``."""
    return _bilinear(params, "q", f, g)


# -- codes -------------------------------------------------------------------


@dataclass(frozen=True)
class Code:
    """A set of point indices of an explicit scheme."""

    scheme: "object"
    members: tuple

    def __post_init__(self):
        members = tuple(int(c) for c in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise DomainError("a code must be nonempty")
        if len(set(members)) != len(members):
            raise DomainError("code members must be distinct")
        if any(not 0 <= c < self.scheme.size for c in members):
            raise DomainError("code member outside the point set")

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class DistanceDistribution:
    a: RadialFunction
    dual: RadialFunction
    d_min: Optional[int]


def distance_distribution(code: Code, params: SchemeParameters) -> DistanceDistribution:
    """Normalised distance distribution ``a`` (``a(0) = 1``) and its dual ``a'(t) = (1/|X|) sum_x q_t(x) a(x)``."""
    import numpy as np

    n = params.n
    if code.scheme.n != n or code.scheme.size != params.size:
        raise DomainError("code's scheme does not match the parameter table")
    idx = np.asarray(code.members)
    sub = np.asarray(code.scheme.dist)[np.ix_(idx, idx)]
    counts = np.bincount(sub.ravel(), minlength=n + 1)
    size = len(code)
    a = RadialFunction(Fraction(int(c), size) for c in counts)
    dual = RadialFunction(
        sum(params.q(t, x) * a[x] for x in range(n + 1) if a[x]) / params.size for t in range(n + 1)
    )
    d_min = next((t for t in range(1, n + 1) if a[t] != 0), None)
    return DistanceDistribution(a, dual, d_min)
