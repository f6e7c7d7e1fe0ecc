"""Dual certificates for Delsarte's LP.

A certificate is a radial function ``f`` with ``fhat >= 0``, ``fhat(0) > 0``
and ``f(x) <= 0`` for ``x >= d``; it proves ``A_LP(n, d) <= |X| f(0) / fhat(0)``.
Every constructor below re-verifies its output with :func:`check_and_bound`,
so nothing relies on the proof that the construction is feasible.

For the Elias-Bassalygo and MRRW families the theorem's closed-form value is
kept alongside the (never larger) value of the verified ratio.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    DomainError,
    InfeasibleCertificate,
    NoAdmissibleU,
    NoSignChange,
    NotQPolynomial,
    NoValidRPerp,
    Q1NotDecreasing,
    SoundnessError,
)
from .exact import first_nonpositive_index
from .params import RadialFunction, SchemeParameters, hat, ostar, star, tilde

__all__ = [
    "Certificate",
    "EbData",
    "MrrwData",
    "check_and_bound",
    "hamming_certificate",
    "eb_choose_u",
    "eb_certificate",
    "mrrw_data",
    "mrrw_closed_form",
    "mrrw_certificate",
    "dual_laplacian_check",
    "format_dump",
]


@dataclass(frozen=True)
class EbData:
    u: int


@dataclass(frozen=True)
class MrrwData:
    r_perp: int
    r: int
    lam: Fraction


@dataclass(frozen=True)
class Certificate:
    f: RadialFunction
    fhat: RadialFunction
    d: int
    bound: Fraction
    construction: tuple = ("custom",)
    closed_form: Optional[Fraction] = None
    data: object = field(default=None, compare=False)

    @property
    def kind(self) -> str:
        return self.construction[0]

    @property
    def reported(self) -> Fraction:
        """The theorem's value when there is one, else the verified ratio."""
        return self.closed_form if self.closed_form is not None else self.bound


def _check_d(params: SchemeParameters, d: int):
    if not isinstance(d, int) or not 1 <= d <= params.n:
        raise DomainError(f"d must lie in [1, {params.n}], got {d}")


def _require_exact(params: SchemeParameters):
    if not params.is_exact:
        raise DomainError("certificates need an exact parameter table")


def check_and_bound(params: SchemeParameters, f, d: int, construction=("custom",), fhat=None) -> Certificate:
    """Verify the dual constraints exactly and return the resulting bound.

    ``fhat`` may be supplied by a constructor; it is then compared against
    the transform computed here.
    """
    _require_exact(params)
    _check_d(params, d)
    f = f if isinstance(f, RadialFunction) else RadialFunction(f)
    if len(f) != params.n + 1:
        raise DomainError("certificate length does not match the scheme")
    for x in range(d, params.n + 1):
        if f[x] > 0:
            raise InfeasibleCertificate("f(x) <= 0 for x >= d", x, f[x])
    computed = hat(params, f)
    if fhat is not None and computed != fhat:
        x = next(x for x in range(len(f)) if computed[x] != fhat[x])
        raise SoundnessError(f"supplied fhat disagrees with the transform of f at x={x}")
    for x, val in enumerate(computed):
        if val < 0:
            raise InfeasibleCertificate("fhat >= 0", x, val)
    if computed[0] <= 0:
        raise InfeasibleCertificate("fhat(0) > 0", 0, computed[0])
    bound = Fraction(params.size) * f[0] / computed[0]
    return Certificate(f, computed, d, bound, tuple(construction))


def hamming_certificate(params: SchemeParameters, d: int) -> Certificate:
    """``f = 1_{<=e} * 1_{<=e}`` with ``e = floor((d-1)/2)``."""
    _check_d(params, d)
    e = (d - 1) // 2
    ball = RadialFunction.ball(params.n, e)
    f = star(params, ball, ball)
    cert = check_and_bound(params, f, d, ("hamming", e))
    expected = Fraction(params.size, sum(params.v[: e + 1]))
    if cert.bound != expected:
        raise SoundnessError(f"hamming certificate gave {cert.bound}, closed form {expected}")
    return cert


def _q1_checked(params: SchemeParameters) -> tuple:
    q1 = params.q1()
    if q1[0] <= 0:
        raise DomainError("q_1(0) must be positive")
    for x in range(params.n):
        if q1[x + 1] > q1[x]:
            raise Q1NotDecreasing(f"q_1 increases between {x} and {x + 1}")
    return q1


def eb_choose_u(params: SchemeParameters, d: int) -> int:
    """Admissible ``u`` (``q_1(u)^2 >= q_1(0) (q_1(d) + 1)``) with the largest ``v_u``, smallest on ties."""
    _check_d(params, d)
    q1 = _q1_checked(params)
    rhs = q1[0] * (q1[d] + 1)
    best = None
    for u in range(params.n + 1):
        if q1[u] * q1[u] >= rhs and (best is None or params.v[u] > params.v[best]):
            best = u
    if best is None:
        raise NoAdmissibleU(f"no admissible u for d={d}")
    return best


def eb_certificate(params: SchemeParameters, d: int) -> Certificate:
    """``f(x) = (q_1(x) - q_1(d)) (1_u * 1_u)(x)``; closed form ``(q_1(0) - q_1(d)) |X| / v_u``."""
    u = eb_choose_u(params, d)
    q1 = params.q1()
    n = params.n
    point = RadialFunction.indicator(n, u)
    h = star(params, point, point)
    f = RadialFunction((q1[x] - q1[d]) * h[x] for x in range(n + 1))
    cert = check_and_bound(params, f, d, ("elias_bassalygo", u))
    closed = (q1[0] - q1[d]) * Fraction(params.size, params.v[u])
    if cert.bound > closed:
        raise SoundnessError(f"EB ratio {cert.bound} exceeds the closed form {closed}")
    return Certificate(cert.f, cert.fhat, d, cert.bound, cert.construction, closed, EbData(u))


def mrrw_data(params: SchemeParameters, d: int) -> MrrwData:
    """Largest ``r_perp`` with ``q_1(r_perp) >= q_1(d) + 1`` and ``r`` = first ``x >= 1`` with ``q_x(r_perp) <= 0``."""
    _check_d(params, d)
    if not params.is_q_polynomial:
        raise NotQPolynomial("the MRRW certificate needs a Q-polynomial scheme")
    q1 = _q1_checked(params)
    cands = [x for x in range(params.n + 1) if q1[x] >= q1[d] + 1]
    if not cands:
        raise NoValidRPerp(f"no r_perp with q_1(r_perp) >= q_1({d}) + 1")
    r_perp = max(cands)
    r = first_nonpositive_index(params.q_col(r_perp))
    if r is None:
        raise NoSignChange(f"q_x({r_perp}) > 0 for every x")
    return MrrwData(r_perp, r, Fraction(q1[r_perp]))


def mrrw_closed_form(params: SchemeParameters, d: int) -> tuple[Fraction, MrrwData]:
    """``(q_1(0) - q_1(d)) * sum_{x < r} m_x``; needs only ``q_1`` and one q-column."""
    data = mrrw_data(params, d)
    q1 = params.q1()
    return (q1[0] - q1[d]) * sum(params.m[: data.r]), data


def dual_laplacian_check(params: SchemeParameters, fhat, lam) -> bool:
    """``|X| (1_{1} o fhat)(x) >= lam * fhat(x)`` for every ``x``."""
    fhat = fhat if isinstance(fhat, RadialFunction) else RadialFunction(fhat)
    if not any(fhat):
        return True
    lhs = ostar(params, RadialFunction.indicator(params.n, 1), fhat)
    return all(params.size * a >= lam * b for a, b in zip(lhs, fhat))


def mrrw_certificate(params: SchemeParameters, d: int) -> Certificate:
    """Squared MRRW certificate ``g = (q_1 - q_1(d)) tilde(fhat)^2``.

    ``fhat(x) = q_x(r_perp) / m_x`` on ``[0, r-1]``.  The transform of ``g``
    is also assembled from Krein rows as
    ``|X| 1_{1} o (fhat o fhat) - q_1(d) (fhat o fhat)`` and must agree exactly.
    """
    _require_exact(params)
    closed, data = mrrw_closed_form(params, d)
    n, size = params.n, params.size
    col = params.q_col(data.r_perp)
    fhat = RadialFunction(col[x] / params.m[x] if x < data.r else 0 for x in range(n + 1))
    if not dual_laplacian_check(params, fhat, data.lam):
        raise SoundnessError("dual Laplacian inequality fails for the MRRW function")
    q1 = params.q1()
    F = ostar(params, fhat, fhat)
    ghat = ostar(params, RadialFunction.indicator(n, 1), F) * size - F * q1[d]
    f = tilde(params, fhat)
    g = RadialFunction((q1[x] - q1[d]) * f[x] * f[x] for x in range(n + 1))
    cert = check_and_bound(params, g, d, ("mrrw", data.r_perp, data.r), fhat=ghat)
    if cert.bound > closed:
        raise SoundnessError(f"MRRW ratio {cert.bound} exceeds the closed form {closed}")
    return Certificate(cert.f, cert.fhat, d, cert.bound, cert.construction, closed, data)


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_dump(cert: Certificate) -> str:
    """One ``x f(x) fhat(x)`` line per distance, exact fractions."""
    return "".join(f"{x} {_frac(a)} {_frac(b)}\n" for x, (a, b) in enumerate(zip(cert.f, cert.fhat)))
