"""Asymptotic rate bounds and curve emission (CSV / SVG).

Everything here is double precision; the formulas are transcendental.
``delta`` is the relative minimum distance.  For the Johnson bounds it is the
Johnson-normalised distance, with domain ``[0, alpha (1 - alpha)]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "BOUND_IDS",
    "RateBound",
    "BoundCurve",
    "entropy",
    "j_q",
    "gamma_q",
    "r_mrrw",
    "k_delta_alpha",
    "b_delta_alpha",
    "mrrw2",
    "rate_bound_eval",
    "sample_curve",
    "emit_csv",
    "emit_svg",
]

Q_BOUNDS = ("gv", "hamming_q", "eb_q", "mrrw1_q", "mrrw2", "lwb1", "lwb2")
JS_BOUNDS = ("js_hamming", "js_eb", "js_mrrw")
BOUND_IDS = Q_BOUNDS + JS_BOUNDS

_ALIASES = {"hamming": "hamming_q", "eb": "eb_q", "mrrw1": "mrrw1_q"}


def _clip(x, lo, hi):
    return min(max(x, lo), hi)


def entropy(q: int, x: float) -> float:
    """``h_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)``, with ``0 log 0 = 0``."""
    if q < 2:
        raise DomainError("entropy needs q >= 2")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    out = 0.0
    if x > 0:
        out += x * math.log(q - 1) - x * math.log(x) if q > 2 else -x * math.log(x)
    if x < 1:
        out -= (1 - x) * math.log1p(-x)
    # h_q <= 1; clamp the rounding at the maximum (q-1)/q
    return min(out / math.log(q), 1.0)


def _h(x):
    return entropy(2, _clip(x, 0.0, 1.0))


def j_q(q: int, delta: float) -> float:
    """Elias-Bassalygo radius ``((q-1)/q)(1 - sqrt(1 - q delta / (q-1)))``."""
    t = (q - 1) / q
    return t * (1 - math.sqrt(max(0.0, 1 - delta / t)))


def gamma_q(q: int, delta: float) -> float:
    """``(1/q)(q - 1 - (q-2) delta - 2 sqrt((q-1) delta (1-delta)))``."""
    return max(0.0, (q - 1 - (q - 2) * delta - 2 * math.sqrt((q - 1) * delta * (1 - delta))) / q)


def b_delta_alpha(delta: float, alpha: float) -> float:
    """``B = 1/2 (1 - sqrt(1 - 4 (sqrt(alpha(1-alpha) - delta(1-delta)) - delta)^2))``."""
    inner = alpha * (1 - alpha) - delta * (1 - delta)
    s = math.sqrt(max(0.0, inner)) - delta
    return 0.5 * (1 - math.sqrt(max(0.0, 1 - 4 * s * s)))


def r_mrrw(alpha: float, delta: float) -> float:
    """Constant-weight MRRW rate ``h(B(delta, alpha))``, ``delta`` Johnson-normalised.

    Zero when no two words of relative weight ``alpha`` are that far apart.
    """
    if delta * (1 - delta) >= alpha * (1 - alpha):
        return 0.0
    return _h(b_delta_alpha(delta, alpha))


def k_delta_alpha(delta: float, alpha: float) -> float:
    """``K = alpha (1-alpha) (1 - sqrt(1 - delta / (alpha (1-alpha))))``."""
    a = alpha * (1 - alpha)
    return a * (1 - math.sqrt(max(0.0, 1 - delta / a)))


def mrrw2(delta: float, grid: int = 1024, tol: float = 1e-10) -> tuple[float, float]:
    """Second LP bound ``min_alpha 1 - h(alpha) + R_MRRW(alpha, delta/2)`` over ``alpha in [delta/2, 1/2]``.

    The Elias-Bassalygo relation holds for every ``alpha``, hence the minimum;
    the Johnson distance of words at Hamming distance ``delta n`` is ``delta n / 2``.
    Coarse grid then golden-section refinement; returns ``(value, alpha)``.
    """
    if delta >= 0.5:
        return 0.0, 0.5
    if delta <= 0:
        return 1.0, 0.5  # the objective is identically 1
    half = delta / 2

    def obj(a):
        return 1 - _h(a) + r_mrrw(a, half)

    alphas = np.linspace(half, 0.5, grid)
    vals = [obj(a) for a in alphas]
    k = int(np.argmin(vals))
    a, b = alphas[max(k - 1, 0)], alphas[min(k + 1, grid - 1)]
    g = (math.sqrt(5) - 1) / 2
    c, dd = b - g * (b - a), a + g * (b - a)
    fc, fd = obj(c), obj(dd)
    while b - a > tol:
        if fc <= fd:
            b, dd, fd = dd, c, fc
            c = b - g * (b - a)
            fc = obj(c)
        else:
            a, c, fc = c, dd, fd
            dd = a + g * (b - a)
            fd = obj(dd)
    best_a = (a + b) / 2
    # at alpha = 1/2 the objective is h(gamma_2(delta)), the first MRRW bound;
    # evaluate it the same way so that mrrw2 <= mrrw1 holds without rounding
    end = entropy(2, _clip(gamma_q(2, delta), 0.0, 0.5))
    return min((obj(best_a), best_a), (vals[k], float(alphas[k])), (end, 0.5))


@dataclass(frozen=True)
class RateBound:
    identifier: str
    q: int = 2
    alpha: Optional[float] = None

    def __post_init__(self):
        ident = _ALIASES.get(self.identifier, self.identifier)
        object.__setattr__(self, "identifier", ident)
        if ident not in BOUND_IDS:
            raise DomainError(f"unknown bound {self.identifier!r}; choose from {', '.join(BOUND_IDS)}")
        if ident in JS_BOUNDS:
            if self.alpha is None or not 0 < self.alpha <= 0.5:
                raise DomainError("Johnson bounds need alpha in (0, 1/2]")
        else:
            if self.q < 2:
                raise DomainError("q must be at least 2")
            if ident in ("mrrw2", "lwb1", "lwb2") and self.q != 2:
                raise DomainError(f"{ident} is a binary bound (q = 2)")

    @property
    def domain(self) -> tuple[float, float]:
        if self.identifier in JS_BOUNDS:
            return 0.0, self.alpha * (1 - self.alpha)
        if self.identifier in ("mrrw2", "lwb1", "lwb2"):
            return 0.0, 0.5
        return 0.0, (self.q - 1) / self.q

    @property
    def label(self) -> str:
        return self.identifier


def rate_bound_eval(bound: RateBound, delta: float) -> float:
    lo, hi = bound.domain
    # tolerate rounding at the right end of a sampled grid
    if not lo <= delta <= hi + 1e-12:
        raise DomainError(f"{bound.identifier}: delta={delta} outside [{lo}, {hi}]")
    delta = min(delta, hi)
    q, ident = bound.q, bound.identifier
    if ident == "gv":
        return 1 - entropy(q, delta)
    if ident == "hamming_q":
        return 1 - entropy(q, delta / 2)
    if ident == "eb_q":
        return 1 - entropy(q, _clip(j_q(q, delta), 0.0, (q - 1) / q))
    if ident == "mrrw1_q":
        return entropy(q, _clip(gamma_q(q, delta), 0.0, (q - 1) / q))
    if ident == "mrrw2":
        return mrrw2(delta)[0]
    if ident == "lwb1":
        return 0.5 * ((1 - _h(delta)) + _h(gamma_q(2, delta)))
    if ident == "lwb2":
        return 0.5 * _h(1 - 2 * math.sqrt(delta * (1 - delta)))
    alpha = bound.alpha
    if ident == "js_hamming":
        return _h(alpha) - (alpha * _h(delta / (2 * alpha)) + (1 - alpha) * _h(delta / (2 * (1 - alpha))))
    if ident == "js_eb":
        K = k_delta_alpha(delta, alpha)
        return _h(alpha) - alpha * _h(K / alpha) - (1 - alpha) * _h(K / (1 - alpha))
    if ident == "js_mrrw":
        return _h(b_delta_alpha(delta, alpha))
    raise DomainError(ident)


@dataclass(frozen=True)
class BoundCurve:
    bound: RateBound
    samples: tuple

    @property
    def deltas(self):
        return [s[0] for s in self.samples]

    @property
    def values(self):
        return [s[1] for s in self.samples]


def sample_curve(bound: RateBound, grid: int) -> BoundCurve:
    """Uniform grid over the bound's domain, endpoints included."""
    if grid < 2:
        raise DomainError("grid must be at least 2")
    lo, hi = bound.domain
    deltas = [lo + (hi - lo) * k / (grid - 1) for k in range(grid)]
    deltas[-1] = hi
    return BoundCurve(bound, tuple((x, rate_bound_eval(bound, x)) for x in deltas))


def _check_grids(curves: Sequence[BoundCurve]):
    if not curves:
        raise DomainError("no curves to emit")
    ref = curves[0].deltas
    for c in curves[1:]:
        if len(c.deltas) != len(ref) or any(abs(a - b) > 1e-12 for a, b in zip(c.deltas, ref)):
            raise DomainError(f"curve {c.bound.label} is sampled on a different grid")
    return ref


def _g(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def emit_csv(curves: Sequence[BoundCurve]) -> str:
    deltas = _check_grids(curves)
    lines = ["delta," + ",".join(c.bound.label for c in curves)]
    for k, x in enumerate(deltas):
        lines.append(",".join([_g(x)] + [_g(c.values[k]) for c in curves]))
    return "\n".join(lines) + "\n"


_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")


def emit_svg(curves: Sequence[BoundCurve], title: str = "") -> str:
    """800x600 SVG with linear axes, y-range [0, 1.05], one polyline per curve and a legend."""
    deltas = _check_grids(curves)
    W, H, L, R, T, B = 800, 600, 70, 30, 40, 60
    x0, x1 = deltas[0], deltas[-1]
    y0, y1 = 0.0, 1.05

    def px(x):
        return L + (x - x0) / (x1 - x0) * (W - L - R)

    def py(y):
        return H - B - (y - y0) / (y1 - y0) * (H - T - B)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{L}" y1="{H - B}" x2="{W - R}" y2="{H - B}" stroke="black"/>',
        f'<line x1="{L}" y1="{H - B}" x2="{L}" y2="{T}" stroke="black"/>',
    ]
    for k in range(6):
        xv = x0 + (x1 - x0) * k / 5
        out.append(f'<line x1="{px(xv):.2f}" y1="{H - B}" x2="{px(xv):.2f}" y2="{H - B + 5}" stroke="black"/>')
        out.append(f'<text x="{px(xv):.2f}" y="{H - B + 20}" font-size="12" text-anchor="middle">{xv:.3g}</text>')
    for k in range(6):
        yv = 0.2 * k
        out.append(f'<line x1="{L - 5}" y1="{py(yv):.2f}" x2="{L}" y2="{py(yv):.2f}" stroke="black"/>')
        out.append(f'<text x="{L - 8}" y="{py(yv) + 4:.2f}" font-size="12" text-anchor="end">{yv:.1f}</text>')
    out.append(f'<text x="{(L + W - R) / 2}" y="{H - 15}" font-size="14" text-anchor="middle">delta</text>')
    out.append(f'<text x="20" y="{(T + H - B) / 2}" font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 20 {(T + H - B) / 2})">rate</text>')
    if title:
        out.append(f'<text x="{W / 2}" y="25" font-size="16" text-anchor="middle">{title}</text>')
    for i, c in enumerate(curves):
        colour = _COLOURS[i % len(_COLOURS)]
        pts = " ".join(f"{px(x):.2f},{py(_clip(y, y0, y1)):.2f}" for x, y in c.samples)
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="2" points="{pts}"/>')
        ly = T + 20 + 20 * i
        out.append(f'<line x1="{W - R - 150}" y1="{ly}" x2="{W - R - 120}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{W - R - 115}" y="{ly + 4}" font-size="12">{c.bound.label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
