"""Completed zeta functions, functional-equation residuals and zero audits."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .fields import NumberFieldDescriptor, make_field
from .lfunctions import dedekind_zeta
from .numerics import PoleError, as_complex, log_gamma

__all__ = [
    "ZeroRecord",
    "CriticalGrid",
    "BoundaryTooCloseError",
    "NumericsFault",
    "completed_zeta",
    "fe_residual",
    "polar_part",
    "fundamental_form",
    "hardy_value",
    "hardy_pair",
    "scan_zeros",
    "winding_audit",
    "winding_number",
    "winding_audit_detail",
]

BISECTION_WIDTH = 1e-6
HARDY_IMAG_TOL = 1e-9


class BoundaryTooCloseError(ValueError):
    """A zero sits (numerically) on the contour."""


class NumericsFault(ArithmeticError):
    """The critical-line value came out with a large imaginary part."""


@dataclass(frozen=True)
class ZeroRecord:
    ordinate_t: float
    bracket: tuple
    refined_to: float
    field_label: str
    sign_pair: tuple

    def __post_init__(self):
        lo, hi = self.bracket
        if not lo < self.ordinate_t < hi:
            raise ValueError("ordinate outside its bracket")
        if hi - lo > self.refined_to:
            raise ValueError("bracket wider than refined_to")
        if self.sign_pair[0] * self.sign_pair[1] >= 0:
            raise ValueError("sign pair must be strictly opposite")

    @property
    def err(self) -> float:
        return 0.5 * (self.bracket[1] - self.bracket[0])


@dataclass(frozen=True)
class CriticalGrid:
    re_range: tuple
    im_range: tuple
    re_step: float = 0.05
    im_step: float = 0.05

    def __post_init__(self):
        if not (self.re_step > 0 and self.im_step > 0):
            raise ValueError("grid steps must be positive")
        if not (self.re_range[0] < self.re_range[1] and self.im_range[0] < self.im_range[1]):
            raise ValueError("degenerate grid range")

    def points(self):
        us = np.arange(self.re_range[0], self.re_range[1] + 0.5 * self.re_step, self.re_step)
        vs = np.arange(self.im_range[0], self.im_range[1] + 0.5 * self.im_step, self.im_step)
        return [complex(u, v) for u in us for v in vs]


def _field(field) -> NumberFieldDescriptor:
    return make_field(field) if isinstance(field, str) else field


def log_gamma_factor(s: complex, field: NumberFieldDescriptor) -> complex:
    """log of |d|^{s/2} / (2^{r2 s} pi^{n s/2}) * Gamma(s/2)^{r1} Gamma(s)^{r2}."""
    out = 0.5 * s * math.log(field.abs_discriminant)
    out -= field.r2 * s * math.log(2.0) + 0.5 * field.degree_n * s * math.log(math.pi)
    if field.r1:
        out += field.r1 * log_gamma(0.5 * s)
    if field.r2:
        out += field.r2 * log_gamma(s)
    return out


def completed_zeta(s, field) -> complex:
    field = _field(field)
    s = as_complex(s)
    if s == 0 or s == 1:
        raise PoleError("completed zeta has poles at 0 and 1")
    return complex(cmath.exp(log_gamma_factor(s, field)) * dedekind_zeta(s, field).value)


def fe_residual(s, field) -> float:
    s = as_complex(s)
    return abs(completed_zeta(s, field) - completed_zeta(1 - s, field))


def polar_part(s, field) -> complex:
    """lambda_k / (s (s-1))."""
    field = _field(field)
    s = as_complex(s)
    if s == 0 or s == 1:
        raise PoleError("polar part is singular at 0 and 1")
    return field.lambda_k / (s * (s - 1))


def fundamental_form(s) -> float:
    """I(s) = v (2u - 1) for s = u + iv."""
    s = as_complex(s)
    return s.imag * (2 * s.real - 1)


def hardy_pair(t: float, field) -> tuple[float, float]:
    """(Re, Im) of the completed zeta at 1/2 + it."""
    z = completed_zeta(complex(0.5, t), field)
    return z.real, z.imag


def hardy_value(t: float, field) -> float:
    """zeta*_k(1/2 + it), which is real; the imaginary part is checked."""
    re, im = hardy_pair(t, field)
    if abs(im) > HARDY_IMAG_TOL * max(1.0, abs(re)):
        raise NumericsFault(f"imaginary part {im:.3g} at t={t}")
    return re


def scan_zeros(field, t_min: float, t_max: float, step: float) -> list[ZeroRecord]:
    """Sign changes of the Hardy-style function on a grid, bisected to 1e-6.

    Two zeros closer than ``step`` cancel out and are missed; that is the
    caller's responsibility (the winding audit catches it).
    """
    field = _field(field)
    if not 0 < t_min < t_max:
        raise ValueError("need 0 < t_min < t_max")
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(math.floor((t_max - t_min) / step + 1e-9))
    ts = t_min + step * np.arange(n + 1)
    if ts[-1] < t_max - 1e-12:
        ts = np.append(ts, t_max)
    vals = [hardy_value(float(t), field) for t in ts]
    out = []
    for i in range(len(ts) - 1):
        a, b = float(ts[i]), float(ts[i + 1])
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0 or fa * fb >= 0:
            continue
        sa = math.copysign(1.0, fa)
        while b - a > BISECTION_WIDTH:
            m = 0.5 * (a + b)
            fm = hardy_value(m, field)
            if fm == 0.0:
                a, b = m - 0.25 * BISECTION_WIDTH, m + 0.25 * BISECTION_WIDTH
                break
            if math.copysign(1.0, fm) == sa:
                a = m
            else:
                b = m
        out.append(ZeroRecord(0.5 * (a + b), (a, b), BISECTION_WIDTH, field.label,
                              (int(sa), int(-sa))))
    out.sort(key=lambda z: z.ordinate_t)
    return out


def _edge_phase(f, z0: complex, z1: complex, h0: float, depth_limit: int = 30):
    """Accumulated argument change of f along the segment z0 -> z1.

    Consecutive samples are refined until every increment is below pi/4, so
    each increment equals the integral of Im(f'/f) over its sub-segment.
    Returns (total_change, samples) where samples holds (z, f(z)).
    """
    n = max(2, int(math.ceil(abs(z1 - z0) / h0)))
    pts = [z0 + (z1 - z0) * k / n for k in range(n + 1)]
    vals = [f(z) for z in pts]
    total = 0.0
    samples = list(zip(pts, vals))
    stack = [(pts[k], vals[k], pts[k + 1], vals[k + 1], 0) for k in range(n)][::-1]
    while stack:
        za, fa, zb, fb, d = stack.pop()
        dphi = cmath.phase(fb / fa)
        if abs(dphi) <= math.pi / 4:
            total += dphi
            continue
        if d >= depth_limit:
            raise BoundaryTooCloseError(f"phase jump unresolved between {za} and {zb}")
        zm = 0.5 * (za + zb)
        fm = f(zm)
        samples.append((zm, fm))
        stack.append((zm, fm, zb, fb, d + 1))
        stack.append((za, fa, zm, fm, d + 1))
    return total, samples


def winding_number(f, rect: CriticalGrid, h0: float = 0.05, dip_ratio: float = 1e-3):
    """Winding number of f around the rectangle boundary (counter-clockwise).

    Returns (integer, snap_distance).  Raises BoundaryTooCloseError if the
    boundary passes within a sharp modulus dip (a zero touching the contour).
    """
    (u0, u1), (v0, v1) = rect.re_range, rect.im_range
    corners = [complex(u0, v0), complex(u1, v0), complex(u1, v1), complex(u0, v1)]
    total = 0.0
    for k in range(4):
        za, zb = corners[k], corners[(k + 1) % 4]
        ph, samples = _edge_phase(f, za, zb, h0)
        total += ph
        _dip_check(samples, za, zb, dip_ratio)
    w = total / (2 * math.pi)
    iw = int(round(w))
    return iw, abs(w - iw)


def _dip_check(samples, za, zb, dip_ratio):
    direction = (zb - za) / abs(zb - za)
    keyed = sorted(samples, key=lambda p: ((p[0] - za) / direction).real)
    mods = np.array([abs(v) for _, v in keyed])
    if np.any(mods == 0):
        raise BoundaryTooCloseError("exact zero on the contour")
    lm = np.log(mods)
    # a zero at distance d from the edge gives a dip of depth ~ log(d / spacing)
    for i in range(1, len(lm) - 1):
        lo = max(0, i - 5)
        hi = min(len(lm), i + 6)
        if lm[i] - max(lm[lo:hi]) < math.log(dip_ratio) and lm[i] <= lm[i - 1] and lm[i] <= lm[i + 1]:
            raise BoundaryTooCloseError(f"modulus dip near {keyed[i][0]}")


def winding_audit(field, rectangle: CriticalGrid) -> int:
    n, _ = winding_audit_detail(field, rectangle)
    return n


def winding_audit_detail(field, rectangle: CriticalGrid):
    field = _field(field)
    return winding_number(lambda z: completed_zeta(z, field), rectangle)
