"""Exact scalars, binomials and the Krawtchouk/Hahn polynomial families.

All values are :class:`fractions.Fraction`; nothing here ever rounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import DomainError, NoSignChange

Rational = Union[int, Fraction]

__all__ = [
    "binomial",
    "gen_binomial",
    "KrawtchoukSpec",
    "HahnSpec",
    "ZeroBracket",
    "krawtchouk_eval",
    "hahn_eval",
    "first_nonpositive_index",
    "bracket_first_real_zero",
]


def binomial(n: int, k: int) -> int:
    """C(n, k), with the convention C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise DomainError(f"binomial: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def gen_binomial(x: Rational, j: int) -> Fraction:
    """Generalized binomial x(x-1)...(x-j+1)/j! for rational x."""
    if j < 0:
        return Fraction(0)
    if isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1):
        xi = int(x)
        if xi >= 0:
            return Fraction(math.comb(xi, j)) if j <= xi else Fraction(0)
    num = Fraction(1)
    for i in range(j):
        num *= x - i
    return num / math.factorial(j)


def _check_integer_point(x, lo: int, hi: int, what: str) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise DomainError(f"{what}: x must be an integer, got {x}")
        x = int(x)
    if not isinstance(x, int) or isinstance(x, bool):
        raise DomainError(f"{what}: x must be an integer, got {x!r}")
    if not lo <= x <= hi:
        raise DomainError(f"{what}: x={x} outside [{lo}, {hi}]")
    return x


@dataclass(frozen=True)
class KrawtchoukSpec:
    """Degree-``k`` Krawtchouk polynomial for length ``n`` over an alphabet of size ``q``."""

    n: int
    q: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.q < 2 or not 0 <= self.k <= self.n:
            raise DomainError(
                f"invalid Krawtchouk spec n={self.n}, q={self.q}, k={self.k}"
            )

    def __call__(self, x: Rational) -> Fraction:
        n, q, k = self.n, self.q, self.k
        total = Fraction(0)
        for j in range(k + 1):
            term = gen_binomial(x, j) * gen_binomial(n - x, k - j) * (q - 1) ** (k - j)
            total += -term if j & 1 else term
        return total


@dataclass(frozen=True)
class HahnSpec:
    """Degree-``k`` Hahn polynomial of the Johnson scheme on weight-``a`` words of length ``n``."""

    n: int
    a: int
    k: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.k <= self.a <= self.n // 2:
            raise DomainError(f"invalid Hahn spec n={self.n}, a={self.a}, k={self.k}")

    @property
    def multiplicity(self) -> int:
        # leading factor: Johnson multiplicity m_k = C(n,k) - C(n,k-1)
        return binomial(self.n, self.k) - binomial(self.n, self.k - 1)

    def valency(self, j: int) -> int:
        # Johnson valency v_j = C(a,j) C(n-a,j), depends on the radius a
        return binomial(self.a, j) * binomial(self.n - self.a, j)

    def __call__(self, x: Rational) -> Fraction:
        n, k = self.n, self.k
        total = Fraction(0)
        for j in range(k + 1):
            coeff = Fraction(binomial(k, j) * binomial(n + 1 - k, j), self.valency(j))
            term = coeff * gen_binomial(x, j)
            total += -term if j & 1 else term
        return self.multiplicity * total


def krawtchouk_eval(spec: KrawtchoukSpec, x: int) -> Fraction:
    """Exact value of the Krawtchouk polynomial at an integer point of [0, n]."""
    x = _check_integer_point(x, 0, spec.n, "krawtchouk_eval")
    return spec(x)


def hahn_eval(spec: HahnSpec, x: int) -> Fraction:
    """Exact value of the Hahn polynomial at an integer point of [0, a]."""
    x = _check_integer_point(x, 0, spec.a, "hahn_eval")
    return spec(x)


def first_nonpositive_index(values: Sequence[Rational]) -> Optional[int]:
    """Smallest index ``x >= 1`` with ``values[x] <= 0``; ``None`` if there is none.

    ``values[0]`` must be strictly positive.
    """
    if len(values) == 0 or values[0] <= 0:
        raise DomainError("first_nonpositive_index requires values[0] > 0")
    for x in range(1, len(values)):
        if values[x] <= 0:
            return x
    return None


@dataclass(frozen=True)
class ZeroBracket:
    """Integer bracket ``[lower, upper]`` around the first real zero.

    ``lower == upper`` only when the polynomial vanishes exactly at that integer.
    """

    lower: int
    upper: int
    certified: bool
    exact_zero: bool = False

    def refine(self, poly: Callable[[Fraction], Fraction], bits: int = 32) -> tuple[Fraction, Fraction]:
        """Bisect the bracket down to width ``2**-bits`` with exact sign tests."""
        lo, hi = Fraction(self.lower), Fraction(self.upper)
        if self.exact_zero:
            return lo, hi
        slo = poly(lo)
        width = Fraction(1, 2 ** bits)
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = poly(mid)
            if sm == 0:
                return mid, mid
            if (sm > 0) == (slo > 0):
                lo, slo = mid, sm
            else:
                hi = mid
        return lo, hi


def bracket_first_real_zero(poly: Callable[[Rational], Rational], n: int) -> ZeroBracket:
    """Locate the first real zero of ``poly`` on [0, n] between consecutive integers.

    The integer samples are scanned for the first value <= 0; its index is
    the upper end of the bracket (so it agrees with
    :func:`first_nonpositive_index`).
    """
    values = [poly(x) for x in range(n + 1)]
    if values[0] <= 0:
        raise DomainError("bracket_first_real_zero requires poly(0) > 0")
    upper = first_nonpositive_index(values)
    if upper is None:
        raise NoSignChange(f"no sign change of the polynomial on [0, {n}]")
    if values[upper] == 0:
        return ZeroBracket(upper, upper, certified=True, exact_zero=True)
    return ZeroBracket(upper - 1, upper, certified=values[upper - 1] * values[upper] < 0)
