"""Explicit finite metric spaces and the generic association-scheme engine.

The engine checks the equipartition property by brute force, diagonalises
``D_1`` in double precision and extracts a floating parameter table.  It is a
validator for the exact closed-form tables in :mod:`delsarte.params`, so it
is capped at ``|X| <= MAX_POINTS``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegenerateScheme,
    DomainError,
    EquipartitionViolation,
    MultiplicityExtractionError,
    ParseError,
    SchemeError,
    SizeCapExceeded,
    SoundnessError,
    SpectralAmbiguity,
)
from .params import SchemeParameters, check_q_polynomial

MAX_POINTS = 4096
PROJECTOR_TOL = 1e-9
CLUSTER_TOL = 1e-6
TRACE_TOL = 1e-6

__all__ = [
    "MAX_POINTS",
    "ExplicitScheme",
    "AdjacencySet",
    "IntersectionTable",
    "SchemeSpectrum",
    "FundamentalPPolynomials",
    "ProductCheckReport",
    "parse_scheme",
    "hamming_space",
    "johnson_space",
    "adjacency",
    "validate_scheme",
    "adjacency_product_check",
    "spectral_decomposition",
    "extract_parameters",
    "fundamental_p_polynomials",
    "engine_parameters",
]


@dataclass(frozen=True, eq=False)
class ExplicitScheme:
    """A finite point set with an integer distance matrix."""

    dist: np.ndarray
    labels: Optional[tuple] = None

    def __post_init__(self):
        D = np.asarray(self.dist)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise SchemeError("distance matrix must be square")
        if D.shape[0] < 2:
            raise SchemeError("a scheme needs at least two points")
        if D.shape[0] > MAX_POINTS:
            raise SizeCapExceeded(f"|X| = {D.shape[0]} exceeds the engine cap {MAX_POINTS}")
        if not np.issubdtype(D.dtype, np.integer):
            if not np.all(D == np.round(D)):
                raise SchemeError("distances must be integers")
        D = D.astype(np.int64)
        D.setflags(write=False)
        object.__setattr__(self, "dist", D)
        self._check_metric()

    def _check_metric(self):
        D = self.dist
        bad = np.argwhere(D != D.T)
        if bad.size:
            r, c = bad[0]
            raise SchemeError(f"distance matrix not symmetric at ({r},{c})")
        if np.any(np.diag(D) != 0):
            raise SchemeError("nonzero distance on the diagonal")
        off = D + np.eye(len(D), dtype=np.int64)
        if np.any(off <= 0):
            r, c = np.argwhere(off <= 0)[0]
            raise SchemeError(f"distance between distinct points ({r},{c}) is not positive")
        n = int(D.max())
        present = np.unique(D)
        if len(present) != n + 1:
            missing = sorted(set(range(n + 1)) - set(present.tolist()))
            raise SchemeError(f"distance values {missing} never occur (n={n} not tight)")
        # triangle inequality: min_y D[x,y] + D[y,z] >= D[x,z]
        for y in range(len(D)):
            if np.any(D[:, y:y + 1] + D[y:y + 1, :] < D):
                x, z = np.argwhere(D[:, y:y + 1] + D[y:y + 1, :] < D)[0]
                raise SchemeError(f"triangle inequality fails for ({x},{y},{z})")

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    @property
    def n(self) -> int:
        return int(self.dist.max())


def parse_scheme(text: str) -> ExplicitScheme:
    """Parse the ``<|X|> <n>`` header plus distance-matrix text format."""
    rows = []  # (line number, tokens)
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty scheme file")
    hline, header = rows[0]
    if len(header) != 2:
        raise ParseError(f"line {hline}: header must be '<|X|> <n>'")
    try:
        size, n = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"line {hline}: header values must be integers") from None
    if size < 2:
        raise ParseError(f"line {hline}: |X| must be at least 2")
    if size > MAX_POINTS:
        raise SizeCapExceeded(f"|X| = {size} exceeds the engine cap {MAX_POINTS}")
    body = rows[1:]
    if len(body) != size:
        raise ParseError(f"expected {size} matrix rows, found {len(body)}")
    D = np.zeros((size, size), dtype=np.int64)
    for r, (lineno, toks) in enumerate(body):
        if len(toks) != size:
            raise ParseError(f"line {lineno}: expected {size} entries, found {len(toks)}")
        try:
            D[r] = [int(t) for t in toks]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry") from None
        bad = np.flatnonzero((D[r] < 0) | (D[r] > n))
        if bad.size:
            raise ParseError(f"line {lineno}, column {bad[0] + 1}: distance {D[r, bad[0]]} outside [0, {n}]")
    asym = np.argwhere(D != D.T)
    if asym.size:
        r, c = (int(t) for t in asym[0])
        raise ParseError(
            f"line {body[r][0]}, column {c + 1}: matrix not symmetric "
            f"(entry {D[r, c]} vs {D[c, r]} at line {body[c][0]}, column {r + 1})"
        )
    scheme = ExplicitScheme(D)
    if scheme.n != n:
        raise ParseError(f"header says n={n} but the largest distance is {scheme.n}")
    return scheme


def hamming_space(n: int, q: int) -> ExplicitScheme:
    """``F_q^n`` with the Hamming distance; point ``i`` is the base-``q`` expansion of ``i``."""
    if n < 1 or q < 2:
        raise DomainError("hamming_space needs n >= 1 and q >= 2")
    size = q ** n
    if size > MAX_POINTS:
        raise SizeCapExceeded(f"q^n = {size} exceeds the engine cap {MAX_POINTS}")
    idx = np.arange(size)
    D = np.zeros((size, size), dtype=np.int64)
    for _ in range(n):
        digit = idx % q
        D += digit[:, None] != digit[None, :]
        idx = idx // q
    return ExplicitScheme(D)


def johnson_space(n: int, a: int) -> ExplicitScheme:
    """Weight-``a`` words of length ``n``; distance is half the Hamming distance."""
    if not 1 <= a <= n // 2:
        raise DomainError("johnson_space needs 1 <= a <= n/2")
    words = list(itertools.combinations(range(n), a))
    if len(words) > MAX_POINTS:
        raise SizeCapExceeded(f"C(n,a) = {len(words)} exceeds the engine cap {MAX_POINTS}")
    M = np.zeros((len(words), n), dtype=np.int64)
    for r, w in enumerate(words):
        M[r, list(w)] = 1
    D = a - M @ M.T  # |w1 \ w2|
    return ExplicitScheme(D, labels=tuple(words))


@dataclass(frozen=True, eq=False)
class AdjacencySet:
    """The 0/1 distance-relation matrices ``D_0, ..., D_n``."""

    matrices: tuple

    @property
    def n(self) -> int:
        return len(self.matrices) - 1

    @property
    def size(self) -> int:
        return self.matrices[0].shape[0]

    def __getitem__(self, i):
        return self.matrices[i]


def adjacency(scheme: ExplicitScheme) -> AdjacencySet:
    mats = []
    for i in range(scheme.n + 1):
        Di = (scheme.dist == i).astype(np.int64)
        Di.setflags(write=False)
        mats.append(Di)
    return AdjacencySet(tuple(mats))


@dataclass(frozen=True, eq=False)
class IntersectionTable:
    """``p[i, j, k] = p_{i,j}^k`` as a nonnegative integer array."""

    p: np.ndarray

    @property
    def n(self) -> int:
        return self.p.shape[0] - 1

    def __call__(self, i, j, k) -> int:
        return int(self.p[i, j, k])

    @property
    def valencies(self) -> tuple:
        return tuple(int(self.p[i, i, 0]) for i in range(self.n + 1))


def validate_scheme(s: ExplicitScheme, adj: Optional[AdjacencySet] = None) -> IntersectionTable:
    """Check the equipartition property and non-degeneracy; return the intersection numbers."""
    adj = adj or adjacency(s)
    n = s.n
    p = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    for i in range(n + 1):
        for j in range(i, n + 1):
            C = adj[i] @ adj[j]  # C[x,z] = #{y : d(x,y)=i, d(y,z)=j}
            for k in range(n + 1):
                mask = adj[k].astype(bool)
                vals = C[mask]
                lo, hi = vals.min(), vals.max()
                if lo != hi:
                    pairs = np.argwhere(mask)
                    a = pairs[int(np.argmin(vals))]
                    b = pairs[int(np.argmax(vals))]
                    raise EquipartitionViolation(
                        i, j, k, ((int(a[0]), int(a[1]), int(lo)), (int(b[0]), int(b[1]), int(hi)))
                    )
                p[i, j, k] = p[j, i, k] = lo
    for k in range(n):
        if p[1, k, k + 1] == 0:
            raise DegenerateScheme(k)
    p.setflags(write=False)
    return IntersectionTable(p)


@dataclass(frozen=True)
class ProductCheckReport:
    ok: bool
    mismatch: Optional[tuple] = None  # (i, j, (x, z))

    def __bool__(self):
        return self.ok


def adjacency_product_check(adj: AdjacencySet, table: IntersectionTable) -> ProductCheckReport:
    """Verify ``D_i D_j = sum_k p_{i,j}^k D_k`` exactly."""
    n = adj.n
    if table.n != n:
        return ProductCheckReport(False, ("size", table.n, n))
    for i in range(n + 1):
        for j in range(n + 1):
            lhs = adj[i] @ adj[j]
            rhs = sum(int(table.p[i, j, k]) * adj[k] for k in range(n + 1))
            diff = np.argwhere(lhs != rhs)
            if diff.size:
                return ProductCheckReport(False, (i, j, tuple(int(t) for t in diff[0])))
    return ProductCheckReport(True)


@dataclass(frozen=True, eq=False)
class SchemeSpectrum:
    eigenvalues: tuple
    projectors: tuple
    multiplicities: tuple = field(default=())


def spectral_decomposition(adj: AdjacencySet) -> SchemeSpectrum:
    """Eigenprojectors of ``D_1``: ``E_0 = J/|X|`` first, the rest by decreasing eigenvalue."""
    N, n = adj.size, adj.n
    w, V = np.linalg.eigh(adj[1].astype(float))
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]
    clusters = [[0]]
    for t in range(1, len(w)):
        if abs(w[t] - w[clusters[-1][-1]]) <= CLUSTER_TOL:
            clusters[-1].append(t)
        else:
            clusters.append([t])
    if len(clusters) != n + 1:
        raise SpectralAmbiguity(
            f"D_1 has {len(clusters)} distinct eigenvalues (tolerance {CLUSTER_TOL}), expected {n + 1}"
        )
    v1 = float(adj[1][0].sum())
    # the largest eigenvalue v_1 belongs to the all-ones vector
    if abs(w[0] - v1) > CLUSTER_TOL or len(clusters[0]) != 1:
        raise SpectralAmbiguity("the top eigenspace of D_1 is not spanned by the all-ones vector")
    E0 = np.full((N, N), 1.0 / N)
    eigs = [float(np.mean(w[c])) for c in clusters]
    projs = [E0]
    for c in clusters[1:]:
        B = V[:, c]
        projs.append(B @ B.T)
    total = sum(projs)
    if not np.allclose(total, np.eye(N), atol=PROJECTOR_TOL * N):
        raise SpectralAmbiguity("projectors do not sum to the identity")
    mults = tuple(len(c) for c in clusters)
    return SchemeSpectrum(tuple(eigs), tuple(projs), mults)


def extract_parameters(adj: AdjacencySet, spec: SchemeSpectrum, tol: float = PROJECTOR_TOL) -> SchemeParameters:
    """Floating parameter table from ``<D_i, E_j> = p_i(j) m_j``."""
    N, n = adj.size, adj.n
    m = []
    for E in spec.projectors:
        t = float(np.trace(E))
        r = round(t)
        if abs(t - r) > TRACE_TOL:
            raise MultiplicityExtractionError(f"trace {t} of a projector is not an integer")
        m.append(int(r))
    v = [int(D[0].sum()) for D in adj.matrices]
    Dm = [D.astype(float) for D in adj.matrices]
    inner = np.array([[float(np.sum(Dm[i] * spec.projectors[j])) for j in range(n + 1)] for i in range(n + 1)])
    P = inner / np.array(m)[None, :]
    Q = (inner / np.array(v)[:, None]).T
    if not np.allclose(P @ Q, N * np.eye(n + 1), atol=tol * N):
        raise SoundnessError("extracted P.Q differs from |X| I")
    params = SchemeParameters(
        n, N, v, m,
        P=P.tolist(), Q=Q.tolist(),
        is_exact=False,
        name=f"extracted(|X|={N}, n={n})",
    )
    return params


@dataclass(frozen=True)
class FundamentalPPolynomials:
    """``coeffs[i]`` lists the coefficients of ``P_i`` from the constant term up."""

    coeffs: tuple

    def leading(self, i) -> Fraction:
        return self.coeffs[i][-1]

    def degree(self, i) -> int:
        return len(self.coeffs[i]) - 1


def _poly_at_matrix(coeffs, A):
    """Evaluate a rational polynomial at an integer matrix; returns ``(int matrix, denominator)``."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // np.gcd(den, c.denominator)
    A = np.asarray(A, dtype=object)
    N = A.shape[0]
    acc = np.zeros((N, N), dtype=object)
    for c in reversed(coeffs):
        acc = acc.dot(A) + np.eye(N, dtype=np.int64).astype(object) * int(c * den)
    return acc, den


def fundamental_p_polynomials(table: IntersectionTable, adj: Optional[AdjacencySet] = None) -> FundamentalPPolynomials:
    """Three-term recurrence ``P_{k+1} = (X P_k - p_{1,k}^{k-1} P_{k-1} - p_{1,k}^k P_k) / p_{1,k}^{k+1}``.

    With ``adj`` given, ``D_i = P_i(D_1)`` is verified in exact integer arithmetic.
    """
    n = table.n
    polys = [[Fraction(1)]]
    if n >= 1:
        polys.append([Fraction(0), Fraction(1)])
    for k in range(1, n):
        div = table(1, k, k + 1)
        if div == 0:
            raise DegenerateScheme(k)
        nxt = [Fraction(0)] + polys[k]  # X * P_k
        for t, c in enumerate(polys[k - 1]):
            nxt[t] -= table(1, k, k - 1) * c
        for t, c in enumerate(polys[k]):
            nxt[t] -= table(1, k, k) * c
        polys.append([c / div for c in nxt])
    if adj is not None:
        for i, c in enumerate(polys):
            val, den = _poly_at_matrix(c, adj[1])
            if not np.array_equal(val, adj[i].astype(object) * den):
                raise SoundnessError(f"D_{i} != P_{i}(D_1)")
    return FundamentalPPolynomials(tuple(tuple(p) for p in polys))


def engine_parameters(scheme: ExplicitScheme):
    """Run the full generic pipeline; returns ``(table, spectrum, params, q_poly_violation)``."""
    adj = adjacency(scheme)
    table = validate_scheme(scheme, adj)
    spec = spectral_decomposition(adj)
    params = extract_parameters(adj, spec)
    ok, violation = check_q_polynomial(params, tol=1e-9)
    params._is_q_polynomial = ok
    return table, spec, params, violation
