"""Brute-force oracles: exact maximum code sizes and the sandwich check.

``max_code_size`` is a maximum-clique search in the graph joining points at
distance ``>= d``.  For the Hamming and Johnson families (distance-transitive)
one codeword is fixed at point 0 and a second one at a canonical point at the
code's minimum distance ``w`` from it; each ``w`` is an independent branch.
"""
from __future__ import annotations

import itertools
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import kernels
from .certificates import eb_certificate, hamming_certificate, mrrw_certificate
from .errors import CertificateUnavailable, DomainError, SizeCapExceeded, SoundnessError
from .exact import binomial
from .lp import solve_primal
from .params import SchemeParameters, hamming_parameters, johnson_parameters
from .scheme import MAX_POINTS, ExplicitScheme

MAX_HAMMING_POINTS = 2 ** 20

__all__ = [
    "FamilySpec",
    "CodeSearchResult",
    "SandwichReport",
    "max_code_size",
    "sandwich_check",
    "format_report",
    "thread_count",
]


def thread_count() -> int:
    env = os.environ.get("DELSARTE_THREADS")
    if env:
        try:
            k = int(env)
        except ValueError:
            raise DomainError(f"DELSARTE_THREADS must be an integer, got {env!r}") from None
        if k < 1:
            raise DomainError("DELSARTE_THREADS must be at least 1")
        return k
    return os.cpu_count() or 1


@dataclass(frozen=True)
class FamilySpec:
    """``family`` is ``"hamming"`` (uses ``q``) or ``"johnson"`` (uses ``a``; distances are Johnson distances)."""

    family: str
    n: int
    q: Optional[int] = None
    a: Optional[int] = None

    def __post_init__(self):
        if self.family == "hamming":
            if self.q is None or self.q < 2 or self.n < 1:
                raise DomainError("hamming family needs n >= 1 and q >= 2")
        elif self.family == "johnson":
            if self.a is None or not 1 <= self.a <= self.n // 2:
                raise DomainError("johnson family needs 1 <= a <= n/2")
        else:
            raise DomainError(f"unknown family {self.family!r}")

    @property
    def size(self) -> int:
        if self.family == "hamming":
            return self.q ** self.n
        return binomial(self.n, self.a)

    @property
    def diameter(self) -> int:
        return self.n if self.family == "hamming" else self.a

    def parameters(self) -> SchemeParameters:
        if self.family == "hamming":
            return hamming_parameters(self.n, self.q)
        return johnson_parameters(self.n, self.a)

    def distance_matrix(self) -> np.ndarray:
        if self.family == "hamming":
            cap = MAX_HAMMING_POINTS
        else:
            cap = MAX_POINTS
        if self.size > cap:
            raise SizeCapExceeded(f"{self.family} oracle is capped at {cap} points, got {self.size}")
        if self.family == "hamming":
            idx = np.arange(self.size)
            D = np.zeros((self.size, self.size), dtype=np.int16)
            for _ in range(self.n):
                digit = idx % self.q
                D += digit[:, None] != digit[None, :]
                idx = idx // self.q
            return D
        words = list(itertools.combinations(range(self.n), self.a))
        M = np.zeros((len(words), self.n), dtype=np.int16)
        for r, w in enumerate(words):
            M[r, list(w)] = 1
        return (self.a - M @ M.T).astype(np.int16)

    def label(self) -> str:
        if self.family == "hamming":
            return f"hamming(n={self.n}, q={self.q})"
        return f"johnson(n={self.n}, a={self.a})"


@dataclass(frozen=True)
class CodeSearchResult:
    size: int
    witness: tuple
    proven: bool
    nodes: int


def _bitsets(mask: np.ndarray) -> list:
    """Row bitsets (Python ints, bit ``j`` = column ``j``) of a boolean matrix."""
    packed = np.packbits(mask, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _search(compat: np.ndarray, cand: np.ndarray, need: int, node_limit: int):
    """Maximum clique among ``cand`` (global indices) if larger than ``need``.

    Returns ``(clique or None, complete, nodes)``.
    """
    if len(cand) <= need:
        return None, True, 0
    sub = compat[np.ix_(cand, cand)]
    order = np.argsort(-sub.sum(axis=1), kind="stable")
    sub = sub[np.ix_(order, order)]
    adj = _bitsets(sub)
    full = (1 << len(cand)) - 1
    dummy = [-1] * need
    clique, complete, nodes = kernels.max_clique(adj, full, dummy, node_limit)
    if len(clique) <= need or -1 in clique:
        return None, complete, nodes
    return [int(cand[order[v]]) for v in clique], complete, nodes


def _lexicode(compat: np.ndarray) -> list:
    code = [0]
    ok = compat[0].copy()
    for v in range(1, len(compat)):
        if ok[v]:
            code.append(v)
            ok &= compat[v]
    return code


def _explicit_search(dist: np.ndarray, d: int, node_limit: int, transitive: bool) -> CodeSearchResult:
    N = len(dist)
    compat = dist >= d
    if d <= 1:
        return CodeSearchResult(N, tuple(range(N)), True, 0)
    best = _lexicode(compat)
    if not transitive:
        clique, complete, nodes = _search(compat, np.arange(N), len(best), node_limit)
        if clique is not None:
            best = sorted(clique)
        return CodeSearchResult(len(best), tuple(sorted(best)), complete, nodes)
    n = int(dist.max())
    ws = [w for w in range(d, n + 1) if np.any(dist[0] == w)]
    reps = {w: int(np.flatnonzero(dist[0] == w)[0]) for w in ws}

    def branch(w):
        c1 = reps[w]
        cand = np.flatnonzero((dist[0] >= w) & compat[c1] & (np.arange(N) != c1))
        return _search(compat, cand, len(best) - 2, node_limit)

    workers = min(thread_count(), len(ws)) or 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(branch, ws))
    else:
        results = [branch(w) for w in ws]
    proven = all(r[1] for r in results)
    nodes = sum(r[2] for r in results)
    for w, (clique, _, _) in zip(ws, results):
        if clique is not None and len(clique) + 2 > len(best):
            best = [0, reps[w]] + clique
    return CodeSearchResult(len(best), tuple(sorted(best)), proven, nodes)


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x)


class _Budget:
    def __init__(self, limit):
        self.limit, self.used, self.complete = limit, 0, True

    def remaining(self):
        return 0 if not self.limit else max(self.limit - self.used, 1)


def _binary_search(n: int, d: int, node_limit: int, levels: int) -> CodeSearchResult:
    """Binary Hamming oracle with orderly symmetry breaking.

    Odd ``d`` is lifted to the even-weight words of length ``n + 1`` with
    distance ``d + 1`` (``A(n, d) = A(n+1, d+1)``), and even ``d`` keeps only the
    even-weight words (puncture, then append a parity bit).  With codeword 0
    fixed, the next codewords are taken in order of non-decreasing weight,
    each replaced by a canonical representative under the coordinate
    permutations fixing the earlier ones.  That group is a product of
    symmetric groups on the cells of a coordinate partition.
    """
    N, D = (n, d) if d % 2 == 0 else (n + 1, d + 1)
    allw = np.arange(1 << N, dtype=np.int64)
    words = allw[_popcount(allw) % 2 == 0]
    wt = _popcount(words)
    V = len(words)

    def row(i):
        return _popcount(words ^ words[i]) >= D

    best = [0]
    ok = row(0)
    for v in range(1, V):
        if ok[v]:
            best.append(v)
            ok &= row(v)
    budget = _Budget(node_limit)

    def leaf(chosen, cand):
        nonlocal best
        need = len(best) - len(chosen)
        if len(cand) <= need:
            return
        if not budget.complete and node_limit:
            return
        sub = _popcount(words[cand][:, None] ^ words[cand][None, :]) >= D
        clique, complete, nodes = _search(sub, np.arange(len(cand)), need, budget.remaining())
        budget.used += nodes
        if not complete:
            budget.complete = False
        if clique is not None:
            best = list(chosen) + [int(cand[v]) for v in clique]

    def branch(chosen, cells, wmin, mask, depth):
        cand = np.flatnonzero(mask)
        if len(chosen) + len(cand) <= len(best):
            return
        if depth >= levels:
            leaf(chosen, cand)
            return
        for counts in itertools.product(*(range(len(c) + 1) for c in cells)):
            w = sum(counts)
            if w < wmin or w % 2:
                continue
            rep = 0
            for c, k in zip(cells, counts):
                for p in c[:k]:
                    rep |= 1 << p
            i = int(np.searchsorted(words, rep))
            if not mask[i]:
                continue
            new_mask = mask & row(i) & (wt >= w)
            new_cells = [part for c, k in zip(cells, counts) for part in (c[:k], c[k:]) if part]
            branch(chosen + [i], new_cells, w, new_mask, depth + 1)
            if node_limit and not budget.complete:
                return

    if V > 1:
        branch([0], [list(range(N))], D, row(0), 0)
    witness = sorted(int(words[i]) & ((1 << n) - 1) for i in best)
    return CodeSearchResult(len(witness), tuple(witness), budget.complete, budget.used)


def _check_witness(dist_fn, witness, d):
    for x, y in itertools.combinations(witness, 2):
        if dist_fn(x, y) < d:
            raise SoundnessError(f"oracle witness has codewords {x}, {y} closer than {d}")


def max_code_size(
    target: Union[ExplicitScheme, FamilySpec], d: int, node_limit: int = 0, levels: int = 3
) -> CodeSearchResult:
    """Largest code with pairwise distance ``>= d``; ``proven`` is False if ``node_limit`` was hit.

    ``levels`` sets how many codewords the binary Hamming search canonicalises
    before handing over to the clique kernel.
    """
    if sys.getrecursionlimit() < 10000:
        sys.setrecursionlimit(10000)  # the pure-Python kernel recurses once per clique vertex
    if isinstance(target, FamilySpec):
        if not 1 <= d <= target.diameter:
            raise DomainError(f"d must lie in [1, {target.diameter}], got {d}")
        if target.family == "hamming" and target.q == 2:
            if target.size > MAX_HAMMING_POINTS:
                raise SizeCapExceeded(f"hamming oracle is capped at {MAX_HAMMING_POINTS} points")
            if d == 1:
                return CodeSearchResult(target.size, tuple(range(target.size)), True, 0)
            res = _binary_search(target.n, d, node_limit, levels)
            _check_witness(lambda x, y: bin(x ^ y).count("1"), res.witness, d)
            return res
        dist = target.distance_matrix()
        res = _explicit_search(dist, d, node_limit, transitive=True)
    else:
        if not 1 <= d <= target.n:
            raise DomainError(f"d must lie in [1, {target.n}], got {d}")
        dist = np.asarray(target.dist)
        res = _explicit_search(dist, d, node_limit, transitive=False)
    _check_witness(lambda x, y: dist[x, y], res.witness, d)
    return res


@dataclass(frozen=True)
class SandwichReport:
    label: str
    d: int
    oracle: Optional[CodeSearchResult]
    lp: Fraction
    hamming: Fraction
    eb: Optional[Fraction]
    mrrw: Optional[Fraction]
    eb_ratio: Optional[Fraction] = None
    mrrw_ratio: Optional[Fraction] = None


def _opt_cert(fn, params, d):
    try:
        return fn(params, d)
    except CertificateUnavailable:
        return None


def sandwich_check(spec: FamilySpec, d: int, node_limit: int = 0, with_oracle: bool = True) -> SandwichReport:
    """Check ``oracle <= A_LP <= every certificate`` exactly; raise :class:`SoundnessError` otherwise."""
    params = spec.parameters()
    lp = solve_primal(params, d).value
    ham = hamming_certificate(params, d)
    eb = _opt_cert(eb_certificate, params, d)
    mr = _opt_cert(mrrw_certificate, params, d)
    oracle = max_code_size(spec, d, node_limit) if with_oracle else None
    if oracle is not None and oracle.size > lp:
        raise SoundnessError(f"code of size {oracle.size} exceeds A_LP = {lp}")
    for name, cert in (("hamming", ham), ("eb", eb), ("mrrw", mr)):
        if cert is None:
            continue
        if lp > cert.bound or cert.bound > cert.reported:
            raise SoundnessError(f"{name} certificate {cert.bound} (reported {cert.reported}) below A_LP = {lp}")
    return SandwichReport(
        spec.label(), d, oracle, lp, ham.bound,
        eb.reported if eb else None, mr.reported if mr else None,
        eb.bound if eb else None, mr.bound if mr else None,
    )


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, CodeSearchResult):
        return str(x.size) if x.proven else f">={x.size}"
    return str(Fraction(x))


def format_report(reports) -> str:
    """Aligned ``d oracle lp hamming eb mrrw`` table with exact fractions."""
    header = ["d", "oracle", "lp", "hamming", "eb", "mrrw"]
    rows = [[str(r.d), _cell(r.oracle), _cell(r.lp), _cell(r.hamming), _cell(r.eb), _cell(r.mrrw)] for r in reports]
    widths = [max(len(h), *(len(row[k]) for row in rows)) for k, h in enumerate(header)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"
