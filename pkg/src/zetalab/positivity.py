"""PCID amplitudes, the plus-sine transform, minus traces and the Weil zero sum.

A PCID amplitude is a positive, continuous, integrable function on [0, inf)
that is strictly decreasing on [1, inf).  Everything here works with 1-D
handles from :mod:`zetalab.harmonic`; the traces are restricted to k = Q.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .completed import CriticalGrid, ZeroRecord, fundamental_form
from .harmonic import (MELLIN_SPEC, FunctionHandle, gaussian, hermite_h2, mellin_g,
                       signature_gamma, theta_k)
from .numerics import QuadratureSpec, ValueWithError, as_complex, integrate, integrate_oscillatory

__all__ = [
    "Amplitude", "PCIDViolation", "ParameterDomainError", "SingularSystemError", "OrderingError",
    "CramerSolution", "SchwartzBarnerFunction", "PlusAmplitudeBuild", "MinusAmplitudeBuild",
    "validate_amplitude", "plus_sine", "plus_sine_with_error", "lemma4_audit", "trace_minus",
    "trace_minus_with_error", "trace_positivity_audit", "transformed_amplitude_audit",
    "cramer_solve", "j_integral", "j_integral_substituted", "substitution_residual",
    "plus_amplitude_build", "rouche_compare", "minus_amplitude_build", "weil_trace",
    "builtin_amplitudes", "SINE_SPEC",
]

PI = math.pi
SINE_SPEC = QuadratureSpec(scheme="adaptive-bisected-Gauss", abs_tol=1e-13, rel_tol=1e-11,
                           max_refinements=20, max_terms=20000)
TRACE_SPEC = QuadratureSpec(scheme="adaptive-bisected-Gauss", abs_tol=1e-13, rel_tol=1e-11,
                            max_refinements=20, max_terms=20000)


class PCIDViolation(ValueError):
    """An amplitude check failed; carries the flag and the witness point."""

    def __init__(self, flag: str, witness: float, detail: str = ""):
        self.flag = flag
        self.witness = witness
        super().__init__(f"{flag} fails at x={witness:.6g}" + (f": {detail}" if detail else ""))


class ParameterDomainError(ValueError):
    pass


class SingularSystemError(ZeroDivisionError):
    pass


class OrderingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Amplitudes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Amplitude:
    handle: FunctionHandle
    pcid_flags: dict
    validation_report: dict = field(compare=False)

    def __call__(self, x):
        return self.handle(x)


LOG_GRID = np.logspace(-6, 3, 1000)
MONO_GRID = np.linspace(1.0, 50.0, 2001)
CONT_STEP = 1e-9


def _real_eval(handle, x):
    y = np.asarray(handle(x))
    if np.iscomplexobj(y):
        if np.max(np.abs(y.imag)) > 0:
            raise ValueError(f"{handle.name} is not real-valued")
        y = y.real
    return np.asarray(y, dtype=float)


def validate_amplitude(handle: FunctionHandle) -> Amplitude:
    """Sample-based PCID check in the order positive, continuous, decreasing, integrable.

    Values that underflow to exactly 0 at the far end of the grid are accepted
    as positive (the function is below the smallest subnormal there).
    """
    if handle.dimension_n != 1:
        raise ValueError("amplitudes are 1-D")
    if not handle.real:
        raise ValueError("amplitudes are real")
    report = {}
    x = LOG_GRID
    y = _real_eval(handle, x)
    if not np.all(np.isfinite(y)):
        i = int(np.argmin(np.isfinite(y)))
        raise PCIDViolation("positive", float(x[i]), "non-finite value")
    bad = np.nonzero(y < 0)[0]
    if bad.size:
        raise PCIDViolation("positive", float(x[bad[0]]), f"value {y[bad[0]]:.3g}")
    zeros = np.nonzero(y == 0)[0]
    if zeros.size:
        # only a terminal run of underflowed zeros is allowed
        first = zeros[0]
        if np.any(y[first:] != 0) or (first > 0 and y[first - 1] > 1e-250):
            raise PCIDViolation("positive", float(x[first]), "value is zero")
    report["positive"] = {"grid": "logspace(1e-6, 1e3, 1000)", "min": float(y[y > 0].min()),
                          "underflow_from": float(x[zeros[0]]) if zeros.size else None}

    sup = float(y.max())
    yl = _real_eval(handle, x * (1 - CONT_STEP))
    yr = _real_eval(handle, x * (1 + CONT_STEP))
    jump = np.abs(yr - yl)
    i = int(np.argmax(jump))
    if jump[i] > 1e-6 * sup:
        raise PCIDViolation("continuous", float(x[i]), f"jump {jump[i]:.3g}")
    # jumps between grid points: bisect every large step; a jump keeps its size
    for k in np.nonzero(np.abs(np.diff(y)) > 1e-6 * sup)[0]:
        lo, hi = float(x[k]), float(x[k + 1])
        flo, fhi = y[k], y[k + 1]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = float(_real_eval(handle, np.array([mid]))[0])
            if abs(fm - flo) >= abs(fhi - fm):
                hi, fhi = mid, fm
            else:
                lo, flo = mid, fm
            if hi - lo <= CONT_STEP * hi:
                break
        if abs(fhi - flo) > 1e-6 * sup:
            raise PCIDViolation("continuous", 0.5 * (lo + hi), f"jump {abs(fhi - flo):.3g}")
    report["continuous"] = {"max_local_jump": float(jump[i]), "relative_step": CONT_STEP}

    xm = MONO_GRID
    ym = _real_eval(handle, xm)
    d = np.diff(ym)
    bad = np.nonzero((d > 0) | ((d == 0) & (ym[1:] > 0)))[0]
    if bad.size:
        j = bad[0]
        raise PCIDViolation("decreasing_on_1_inf", float(xm[j + 1]),
                            f"difference {d[j]:.3g} >= 0")
    report["decreasing_on_1_inf"] = {"grid": "linspace(1, 50, 2001)",
                                     "max_difference": float(d.max())}

    # tail: the log-log slope far out must be steeper than -1
    xt = np.array([1e4, 1e5, 1e6])
    yt = _real_eval(handle, xt)
    if np.all(yt > 0):
        slope = float(np.polyfit(np.log(xt), np.log(yt), 1)[0])
        if slope >= -1.0 - 1e-3:
            raise PCIDViolation("integrable", float(xt[-1]), f"tail slope {slope:.4g}")
        tail = float(yt[-1] * xt[-1] / (-slope - 1.0))
    else:
        slope = -math.inf
        tail = 0.0
    report["integrable"] = {"tail_slope": slope, "tail_bound_beyond_1e6": tail}
    flags = {"positive": True, "continuous": True, "integrable": True,
             "decreasing_on_1_inf": True}
    return Amplitude(handle, flags, report)


def _as_amplitude(A) -> Amplitude:
    return A if isinstance(A, Amplitude) else validate_amplitude(A)


def builtin_amplitudes() -> dict[str, Amplitude]:
    """The standing family e^{-x}, e^{-pi x^2}, 1/(1+x^2) and the default A^-."""
    fam = {
        "exp": FunctionHandle(lambda x: np.exp(-np.abs(x)), parity="even", decay="exponential",
                              name="exp(-x)"),
        "gaussian": gaussian(),
        "lorentz": FunctionHandle(lambda x: 1.0 / (1.0 + np.asarray(x) ** 2), parity="even",
                                  decay="polynomial", name="1/(1+x^2)"),
    }
    out = {k: validate_amplitude(h) for k, h in fam.items()}
    out["minus_default"] = minus_amplitude_build().amplitude
    return out


# ---------------------------------------------------------------------------
# Plus-sine transform
# ---------------------------------------------------------------------------

def plus_sine_with_error(A, a: float, spec: QuadratureSpec = SINE_SPEC) -> ValueWithError:
    """S+(A)(a) = int_0^inf A(x) sin(a x) dx, integrated between the zeros k pi / a."""
    if not a > 0:
        raise ValueError("frequency must be positive")
    A = _as_amplitude(A)
    ev = A.handle

    def f(x):
        return _real_eval(ev, x) * np.sin(a * x)

    step = PI / a
    r = integrate_oscillatory(f, lambda k: k * step, spec)
    return ValueWithError(float(r.value.real), r.error_estimate)


def plus_sine(A, a: float, spec: QuadratureSpec = SINE_SPEC) -> float:
    return plus_sine_with_error(A, a, spec).value


def lemma4_audit(A, a_grid, spec: QuadratureSpec = SINE_SPEC) -> dict:
    """Minimum of S+(A) over the grid; PASS iff it exceeds its own error bound."""
    A = _as_amplitude(A)
    vals = [plus_sine_with_error(A, float(a), spec) for a in a_grid]
    i = int(np.argmin([v.value for v in vals]))
    vmin = vals[i]
    return {"amplitude": A.handle.name, "min": vmin.value, "argmin": float(a_grid[i]),
            "error_bound": vmin.error_estimate, "verdict": "PASS" if vmin.value > vmin.error_estimate
            else "FAIL", "values": [v.value for v in vals]}


# ---------------------------------------------------------------------------
# Minus trace over Q
# ---------------------------------------------------------------------------

# theta sums of Gaussian-decay handles vanish identically far beyond this point
T_CAP = 1e3


def _log_zeros(freq: float):
    """k -> exp(k pi / freq), clamped at T_CAP so segments past it are empty."""
    lcap = math.log(T_CAP)
    return lambda k: math.exp(min(k * PI / freq, lcap))


def _theta_q(A: Amplitude):
    return lambda t: theta_k("Q", A.handle, t)


def trace_minus_with_error(field, A, s, spec: QuadratureSpec = TRACE_SPEC) -> ValueWithError:
    """int_1^inf (t^u + t^{1-u}) sin(v log t) theta_Q(A)(t) dt for s = u + iv.

    The integrand changes sign at t = exp(k pi / v); segments between those
    points are summed with the alternating-series accelerator.
    """
    label = field if isinstance(field, str) else field.label
    if label != "Q":
        raise ParameterDomainError("the minus trace is implemented for k = Q only")
    s = as_complex(s)
    u, v = s.real, s.imag
    if not (0.5 < u <= 1.0 and v > 0):
        raise ParameterDomainError("need Re s in (1/2, 1] and Im s > 0")
    A = _as_amplitude(A)
    th = _theta_q(A)

    def f(t):
        lt = np.log(t)
        return (np.exp(u * lt) + np.exp((1 - u) * lt)) * np.sin(v * lt) * th(t)

    r = integrate_oscillatory(f, _log_zeros(v), spec)
    return ValueWithError(float(r.value.real), r.error_estimate)


def trace_minus(field, A, s, spec: QuadratureSpec = TRACE_SPEC) -> float:
    return trace_minus_with_error(field, A, s, spec).value


TRACE_U = (0.55, 0.7, 0.85, 1.0)
TRACE_V = (0.5, 1.0, 2.0, 5.0, 10.0, 30.0)


def trace_positivity_audit(A=None, us=TRACE_U, vs=TRACE_V) -> list[dict]:
    """Sign of the minus trace on a (u, v) grid; findings, not assertions."""
    A = _as_amplitude(A if A is not None else gaussian())
    out = []
    for u in us:
        for v in vs:
            r = trace_minus_with_error("Q", A, complex(u, v))
            verdict = "PASS" if r.value > r.error_estimate else "FAIL"
            out.append({"u": u, "v": v, "value": r.value, "error": r.error_estimate,
                        "verdict": verdict})
    return out


def transformed_amplitude_audit(A, u: float, r_max: float = 10.0, n: int = 2001) -> dict:
    """Monotonicity of r -> e^{ru}(1 + e^{r(1-2u)}) A(e^r) on [0, r_max] (n = 1)."""
    A = _as_amplitude(A)
    r = np.linspace(0.0, r_max, n)
    vals = np.exp(r * u) * (1 + np.exp(r * (1 - 2 * u))) * _real_eval(A.handle, np.exp(r))
    d = np.diff(vals)
    bad = np.nonzero(d >= 0)[0]
    bad = bad[vals[bad + 1] > 0]
    return {"u": u, "decreasing": bad.size == 0,
            "first_increase": float(r[bad[0] + 1]) if bad.size else None,
            "max_difference": float(d.max())}


# ---------------------------------------------------------------------------
# Cramer system and J-integrals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CramerSolution:
    p1: float
    p2: float
    determinant: float
    fundamental_form: float
    residuals: tuple


def cramer_solve(a1: float, a2: float, s) -> CramerSolution:
    """Solve p1 v(u-1) + p2 v u = a1 - a2, p1 v u + p2 v(u-1) = a2 - a1.

    The coefficient determinant is v^2 (1 - 2u) = -v I(s), so the system is
    singular exactly when I(s) = 0.  The solution is p1 = (a2 - a1)/v = -p2.
    """
    if not (a2 > a1 > 0):
        raise ValueError("need a2 > a1 > 0")
    s = as_complex(s)
    u, v = s.real, s.imag
    I = fundamental_form(s)
    if abs(I) <= 1e-15 * max(1.0, abs(v)):
        raise SingularSystemError(f"I(s) = 0 at s={s}")
    m11, m12 = v * (u - 1), v * u
    det = m11 * m11 - m12 * m12
    b1, b2 = a1 - a2, a2 - a1
    p1 = (b1 * m11 - m12 * b2) / det
    p2 = (m11 * b2 - m12 * b1) / det
    res = (abs(m11 * p1 + m12 * p2 - b1), abs(m12 * p1 + m11 * p2 - b2))
    return CramerSolution(float(p1), float(p2), float(det), float(I), res)


def _check_j_args(omega: FunctionHandle, s):
    if omega.eigen != -1:
        raise ValueError("omega must be a declared minus fixed point")
    s = as_complex(s)
    if not (0 < s.real < 1 and s.imag > 0):
        raise ParameterDomainError("need Re s in (0, 1) and Im s > 0")
    return s


def j_integral(omega: FunctionHandle, s, spec: QuadratureSpec = TRACE_SPEC) -> ValueWithError:
    """J(s) = int_1^inf (t^{u-1} + t^{-u}) sin(v log t) Theta_Q(omega)(t) dt."""
    s = _check_j_args(omega, s)
    u, v = s.real, s.imag

    def f(t):
        lt = np.log(t)
        return (np.exp((u - 1) * lt) + np.exp(-u * lt)) * np.sin(v * lt) * theta_k("Q", omega, t)

    r = integrate_oscillatory(f, _log_zeros(v), spec)
    return ValueWithError(float(r.value.real), r.error_estimate)


def j_integral_substituted(omega: FunctionHandle, s, r: float,
                           spec: QuadratureSpec = TRACE_SPEC) -> ValueWithError:
    """The same integral after t = x^r:
    r int_1^inf (x^{r(u-1)} + x^{-ru}) sin(v r log x) Theta(x^r) x^{r-1} dx."""
    s = _check_j_args(omega, s)
    if not r > 0:
        raise ValueError("r must be positive")
    u, v = s.real, s.imag

    def f(x):
        lx = np.log(x)
        t = np.exp(r * lx)
        w = np.exp(r * (u - 1) * lx) + np.exp(-r * u * lx)
        return r * w * np.sin(v * r * lx) * theta_k("Q", omega, t) * np.exp((r - 1) * lx)

    res = integrate_oscillatory(f, _log_zeros(v * r), spec)
    return ValueWithError(float(res.value.real), res.error_estimate)


def substitution_residual(omega: FunctionHandle, s, r: float,
                          spec: QuadratureSpec = TRACE_SPEC) -> float:
    a = j_integral(omega, s, spec)
    b = j_integral_substituted(omega, s, r, spec)
    return abs(a.value - b.value)


# ---------------------------------------------------------------------------
# A+ and A- constructions
# ---------------------------------------------------------------------------

def _g_coef(m: int) -> float:
    """g_m = pi^{2m} / m!."""
    return math.exp(2 * m * math.log(PI) - math.lgamma(m + 1))


def _inner_series(x, cut: float = 1e-15):
    """-sum_{m>=2} (-1)^m g_{m-2} x^{2m}, summed term by term until terms < cut."""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    total = np.zeros_like(x2)
    m = 2
    nterms = 0
    while True:
        t = (-1) ** m * _g_coef(m - 2) * x2 ** m
        total += t
        nterms += 1
        if m > 2 + 2 * PI * PI and np.max(np.abs(t)) < cut:
            break
        m += 1
    return -total, nterms


@dataclass(frozen=True)
class PlusAmplitudeBuild:
    handle: FunctionHandle
    inner_at_seam: float
    outer_at_seam: float
    jump: float
    series_terms: int
    identity_lhs: float
    identity_rhs: float

    def report(self) -> dict:
        return {"A+(1-)": self.inner_at_seam, "A+(1+)": self.outer_at_seam, "jump": self.jump,
                "series_terms": self.series_terms,
                "sum_{m>=2} (-1)^m g_{m-2}": self.identity_lhs, "sum_m g_m": self.identity_rhs,
                "identity_holds": math.isclose(self.identity_lhs, self.identity_rhs,
                                              rel_tol=1e-12)}


def plus_amplitude_build() -> PlusAmplitudeBuild:
    """A+(x) = -G(x) for |x| >= 1, the power series branch inside.

    The inner series sums to -x^4 exp(-pi^2 x^2), so the two branches do not
    meet at |x| = 1; the jump is measured and reported.
    """
    def ev(x):
        x = np.abs(np.asarray(x, dtype=float))
        out = -np.exp(-PI * x * x)
        inside = x < 1
        if np.any(inside):
            out = np.array(out, copy=True)
            out[inside] = _inner_series(x[inside])[0]
        return out

    h = FunctionHandle(ev, parity="even", decay="gaussian", name="A+")
    inner, nterms = _inner_series(np.array([1.0]))
    inner = float(inner[0])
    outer = -math.exp(-PI)
    lhs = float(-_inner_series(np.array([1.0]))[0][0])
    rhs = math.exp(PI * PI)
    return PlusAmplitudeBuild(h, inner, outer, abs(inner - outer), nterms, lhs, rhs)


def _mellin_vanishing(f, s, spec: QuadratureSpec) -> complex:
    """int_0^inf x^{s-1} f(x) dx for f = O(x^4) at 0 (valid for Re s > -4)."""
    def g(x):
        return np.exp((s - 1) * np.log(x)) * f(x)

    return complex(integrate(g, 0.0, 1.0, spec).value + integrate(g, 1.0, math.inf, spec).value)


def rouche_compare(s_grid, spec: QuadratureSpec = MELLIN_SPEC) -> dict:
    """|Gamma_r(A+)(s)| / |Gamma_r(G)(s)| for signature (1, 0) at each grid point.

    Two Mellin conventions are recorded: the standard kernel x^{s-1}
    (``ratio``, which carries the verdict) and the shifted kernel x^{s-2}
    (``ratio_shifted``, i.e. both transforms at s - 1; G is continued through
    its closed form and the point is skipped at its poles).
    """
    pts = s_grid.points() if isinstance(s_grid, CriticalGrid) else [as_complex(s) for s in s_grid]
    ap = plus_amplitude_build().handle
    g = gaussian()
    rows = []
    for s in pts:
        if s.real <= 0:
            raise ValueError("need Re s > 0")
        fa = signature_gamma(ap, (1, 0), s, spec)
        fg = signature_gamma(g, (1, 0), s, spec)
        ratio = abs(fa) / abs(fg)
        t = s - 1
        if t.imag == 0 and t.real <= 0 and float(t.real / 2).is_integer():
            shifted = None
        else:
            shifted = abs(_mellin_vanishing(ap, t, spec)) / abs(mellin_g(t))
        rows.append({"s": [s.real, s.imag], "gamma_A+": [fa.real, fa.imag],
                     "gamma_G": [fg.real, fg.imag], "ratio": ratio,
                     "verdict": "PASS" if ratio < 1 else "FAIL", "ratio_shifted": shifted,
                     "verdict_shifted": None if shifted is None else
                     ("PASS" if shifted < 1 else "FAIL")})
    violations = [r["s"] for r in rows if r["verdict"] == "FAIL"]
    return {"points": rows, "violations": violations,
            "verdict": "PASS" if not violations else "FAIL"}


@dataclass(frozen=True)
class MinusAmplitudeBuild:
    amplitude: Amplitude
    x1: float
    x2: float
    slope: float
    intercept: float
    seam_gap: float

    def report(self) -> dict:
        return {"x1": self.x1, "x2": self.x2, "slope": self.slope, "intercept": self.intercept,
                "seam_gap": self.seam_gap, "pcid": dict(self.amplitude.pcid_flags)}


def minus_amplitude_build(x1: float = 0.9, x2: float = 1.6) -> MinusAmplitudeBuild:
    """A-(x) = H2(x) for x >= x2, the line through (x1, H2(x1)), (x2, H2(x2)) below x2."""
    lo = 1 / (2 * math.sqrt(PI))
    if not (lo < x1 < 1 < math.sqrt(2.5) < x2):
        raise OrderingError(f"need 1/(2 sqrt pi) < x1 < 1 < sqrt(5/2) < x2, got {x1}, {x2}")
    h2 = hermite_h2()
    y1, y2 = h2.at(x1).real, h2.at(x2).real
    slope = (y2 - y1) / (x2 - x1)
    icpt = y1 - slope * x1

    def ev(x):
        x = np.abs(np.asarray(x, dtype=float))
        return np.where(x >= x2, h2(x), icpt + slope * x)

    h = FunctionHandle(ev, parity="even", decay="gaussian", name=f"A-({x1},{x2})")
    gap = abs(h2.at(x2).real - (icpt + slope * x2))
    return MinusAmplitudeBuild(validate_amplitude(h), x1, x2, slope, icpt, gap)


# ---------------------------------------------------------------------------
# Barner-Schwartz functions and the Weil zero sum
# ---------------------------------------------------------------------------

def _gauss_moment(k: int, a: float) -> float:
    """int_R z^k exp(-a z^2) dz."""
    if k % 2:
        return 0.0
    return math.gamma((k + 1) / 2) / a ** ((k + 1) / 2)


def _shift_poly(c, b):
    """Coefficients of P(y + b) from those of P(y) (ascending order)."""
    n = len(c)
    out = np.zeros(n, dtype=complex if isinstance(b, complex) else float)
    for j, cj in enumerate(c):
        for i in range(j + 1):
            out[i] += cj * comb(j, i) * b ** (j - i)
    return out


@dataclass(frozen=True)
class SchwartzBarnerFunction:
    """P(x) exp(-K x^2) with P given by ascending real coefficients."""

    coefficients: tuple
    gaussian_K: float

    def __post_init__(self):
        if not self.gaussian_K > 0:
            raise ValueError("K must be positive")
        c = tuple(float(x) for x in self.coefficients) or (0.0,)
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        c = np.trim_zeros(np.array(self.coefficients), "b")
        return max(len(c) - 1, 0)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.polynomial.polynomial.polyval(x, self.coefficients) * np.exp(-self.gaussian_K * x * x)

    def conj(self) -> "SchwartzBarnerFunction":
        """F*(x) = F(-x)."""
        c = [cj * (-1) ** j for j, cj in enumerate(self.coefficients)]
        return SchwartzBarnerFunction(tuple(c), self.gaussian_K)

    def convolve(self, other: "SchwartzBarnerFunction") -> "SchwartzBarnerFunction":
        """(F * G)(x) = int F(y) G(x - y) dy, in closed form.

        With y = z + c x, c = L/(K+L): the exponent splits into
        -(K+L) z^2 - (KL/(K+L)) x^2, and the z-integral is a Gaussian moment.
        """
        K, L = self.gaussian_K, other.gaussian_K
        a = K + L
        c = L / a
        P, Q = self.coefficients, other.coefficients
        dp, dq = len(P) - 1, len(Q) - 1
        # C[i, k]: coefficient of x^i z^k
        Pz = np.zeros((dp + 1, dp + 1))
        for j, pj in enumerate(P):        # (z + c x)^j
            for k in range(j + 1):
                Pz[j - k, k] += pj * comb(j, k) * c ** (j - k)
        Qz = np.zeros((dq + 1, dq + 1))
        for j, qj in enumerate(Q):        # ((1-c) x - z)^j
            for k in range(j + 1):
                Qz[j - k, k] += qj * comb(j, k) * (1 - c) ** (j - k) * (-1) ** k
        C = np.zeros((dp + dq + 1, dp + dq + 1))
        for i1, k1 in zip(*np.nonzero(Pz)):
            C[i1:i1 + dq + 1, k1:k1 + dq + 1] += Pz[i1, k1] * Qz
        out = np.zeros(dp + dq + 1)
        for k in range(dp + dq + 1):
            mk = _gauss_moment(k, a)
            if mk:
                out += C[:, k] * mk
        return SchwartzBarnerFunction(tuple(out), K * L / a)

    def transform(self, s) -> complex:
        """int F(x) e^{(1/2 - sigma) x} e^{i t x} dx for s = sigma + i t."""
        s = as_complex(s)
        beta = complex(0.5 - s.real, s.imag)
        K = self.gaussian_K
        b = beta / (2 * K)
        shifted = _shift_poly(self.coefficients, b)
        tot = sum(shifted[k] * _gauss_moment(k, K) for k in range(len(shifted)))
        return complex(cmath.exp(beta * beta / (4 * K)) * tot)


def weil_trace(F0: SchwartzBarnerFunction, zeros) -> complex:
    """Zero-side Weil sum  sum_rho F^(rho)  with F = F0 * F0^*.

    Each supplied ordinate t contributes rho = 1/2 + it and its conjugate
    1/2 - it.  Only the zero side of the explicit formula is evaluated.
    """
    zeros = list(zeros)
    if not zeros:
        warnings.warn("empty zero list: Weil trace is 0", RuntimeWarning, stacklevel=2)
        return 0j
    F = F0.convolve(F0.conj())
    tot = 0j
    for z in zeros:
        t = z.ordinate_t if isinstance(z, ZeroRecord) else float(z)
        tot += F.transform(complex(0.5, t)) + F.transform(complex(0.5, -t))
    return complex(tot)
