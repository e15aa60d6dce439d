"""Fourier, theta and Mellin machinery on closed-form test functions.

Conventions
-----------
Fourier transform  F(f)(x) = int e^{2 pi i x.y} f(y) d^n y   (G is fixed).
Mellin transform   M(f)(s) = int_0^inf x^{s-1} f(x) dx        (standard shift).

Fixed points: G(x) = exp(-pi x^2) with eigenvalue +1 and
H2(x) = pi G(x) (4 pi x^2 - 1) with eigenvalue -1.  K2 = G'' is kept for the
audit of its (false) claimed eigenrelation: F(K2) + K2 = -2 pi G.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .fields import NumberFieldDescriptor, make_field
from .lfunctions import dedekind_zeta
from .numerics import (DEFAULT_SPEC, PoleError, QuadratureSpec, ValueWithError, as_complex,
                       complex_gamma, integrate, log_gamma)

__all__ = [
    "FunctionHandle", "LatticeMatrix", "DecayError", "SingularAFEError", "Involution",
    "AFESolution", "gaussian", "gaussian_n", "hermite_h2", "hermite_k2", "fixed_point_catalogue",
    "fourier_transform", "fourier_handle", "eigen_residual", "afe_solve", "conjugation",
    "reflection", "theta_lattice", "lattice_radius", "hecke_theta_residual", "poisson_residual",
    "mellin", "signature_gamma", "mellin_hermite_audit", "mellin_g", "mellin_h2_closed",
    "theta_k", "face_sides", "face_residual", "FOURIER_SPEC", "MELLIN_SPEC",
]

PI = math.pi
FOURIER_SPEC = QuadratureSpec(scheme="adaptive-bisected-Gauss", abs_tol=1e-14, rel_tol=1e-12,
                              max_refinements=40)
MELLIN_SPEC = QuadratureSpec(scheme="double-exponential", abs_tol=1e-13, rel_tol=1e-11,
                             max_refinements=10)


class DecayError(ValueError):
    """The function's decay class is too weak for the requested operation."""


class SingularAFEError(ZeroDivisionError):
    """l = +-1 makes the fixed-point equation singular."""


# ---------------------------------------------------------------------------
# Function handles
# ---------------------------------------------------------------------------

PARITIES = ("even", "odd", "none")
DECAYS = ("gaussian", "exponential", "polynomial", "compact-support")


@dataclass(frozen=True)
class FunctionHandle:
    """A function on R^n with metadata.

    ``evaluator`` takes an array of shape (k,) for n = 1 or (k, n) otherwise.
    ``radial`` (optional) is the 1-D profile r -> f(|x| = r).  ``factors``
    (optional) marks a product f(x) = prod_j f_j(x_j) of 1-D handles.
    ``eigen`` is the declared Fourier eigenvalue, if any.
    """

    evaluator: Callable
    dimension_n: int = 1
    parity: str = "even"
    decay: str = "gaussian"
    name: str = "f"
    radial: Optional[Callable] = None
    factors: Optional[tuple] = None
    eigen: Optional[int] = None
    real: bool = True
    verify: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError(f"unknown parity {self.parity!r}")
        if self.decay not in DECAYS:
            raise ValueError(f"unknown decay class {self.decay!r}")
        if self.dimension_n < 1:
            raise ValueError("dimension must be >= 1")
        if self.verify and self.parity != "none":
            self._check_parity()

    def _check_parity(self):
        rng = np.random.default_rng(12345)
        n = self.dimension_n
        pts = rng.uniform(-2.0, 2.0, size=(16, n)) if n > 1 else rng.uniform(-2.0, 2.0, size=16)
        a, b = self(pts), self(-pts)
        sign = 1.0 if self.parity == "even" else -1.0
        scale = np.maximum(1.0, np.abs(a))
        if np.max(np.abs(a - sign * b) / scale) > 1e-12:
            raise ValueError(f"{self.name}: declared parity {self.parity} fails on samples")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.asarray(self.evaluator(x))

    def at(self, x) -> complex:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.dimension_n > 1:
            x = x.reshape(1, self.dimension_n)
        return complex(self(x).reshape(-1)[0])

    def profile(self) -> Callable:
        """1-D profile: the function itself for n=1, the radial profile otherwise."""
        if self.dimension_n == 1:
            return self.evaluator
        if self.radial is None:
            raise ValueError(f"{self.name} has no radial profile")
        return self.radial

    def value_at_zero(self) -> complex:
        return self.at(np.zeros(self.dimension_n))


def _g(x):
    return np.exp(-PI * np.asarray(x, dtype=float) ** 2)


def _h2(x):
    x2 = np.asarray(x, dtype=float) ** 2
    return PI * np.exp(-PI * x2) * (4 * PI * x2 - 1)


def _k2(x):
    x2 = np.asarray(x, dtype=float) ** 2
    return 2 * PI * np.exp(-PI * x2) * (2 * PI * x2 - 1)


def gaussian() -> FunctionHandle:
    return FunctionHandle(_g, 1, "even", "gaussian", "G", eigen=1)


def hermite_h2() -> FunctionHandle:
    return FunctionHandle(_h2, 1, "even", "gaussian", "H2", eigen=-1)


def hermite_k2() -> FunctionHandle:
    # Claimed (but not actually) a -1 eigenfunction; eigen left undeclared.
    return FunctionHandle(_k2, 1, "even", "gaussian", "K2")


def gaussian_n(n: int) -> FunctionHandle:
    """exp(-pi |x|^2) on R^n, as a product of 1-D Gaussians."""
    if n == 1:
        return gaussian()

    def ev(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-PI * np.sum(x * x, axis=-1))

    g1 = gaussian()
    return FunctionHandle(ev, n, "even", "gaussian", f"G{n}", radial=_g, factors=(g1,) * n, eigen=1)


def fixed_point_catalogue() -> dict[str, FunctionHandle]:
    return {"G": gaussian(), "H2": hermite_h2(), "K2": hermite_k2(), "G2": gaussian_n(2)}


# ---------------------------------------------------------------------------
# Fourier transform
# ---------------------------------------------------------------------------

def _envelope_cutoff(f1d: Callable, decay: str, tol: float) -> float:
    """Radius beyond which |f| (and its tail integral) is below tol."""
    if decay == "compact-support":
        T = 1.0
        while T < 1e6 and np.any(np.abs(f1d(np.linspace(T, 2 * T, 64))) > 0):
            T *= 2
        return 2 * T
    if decay == "polynomial":
        raise DecayError("polynomial decay is not supported for quadrature-based transforms")
    T = 1.0
    while T < 200:
        ys = np.linspace(T, T + 1.0, 8)
        env = float(np.max(np.abs(f1d(ys))))
        if env * (T + 1.0) < tol:
            return T
        T += 0.5
    raise DecayError("function does not decay fast enough for the tail cutoff")


def fourier_transform(f: FunctionHandle, x, spec: QuadratureSpec = FOURIER_SPEC) -> complex:
    """F(f)(x) = int e^{2 pi i x y} f(y) dy, by quadrature.

    Even real 1-D functions use the cosine transform 2 int_0^T f(y) cos(2 pi x y) dy;
    product handles reduce to 1-D factors; other 2-D handles use a tensor
    Gauss-Legendre rule refined until two levels agree.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = f.dimension_n
    if x.size != n:
        raise ValueError("point dimension does not match the function")
    if n == 1:
        return _fourier_1d(f.evaluator, f.parity, f.decay, float(x[0]), spec)
    if f.factors is not None:
        out = 1 + 0j
        for fj, xj in zip(f.factors, x):
            out *= _fourier_1d(fj.evaluator, fj.parity, fj.decay, float(xj), spec)
        return out
    if n == 2:
        return _fourier_2d(f, x, spec)
    raise ValueError("direct quadrature is limited to n <= 2")


def _fourier_1d(ev, parity, decay, x, spec):
    T = _envelope_cutoff(ev, decay, spec.abs_tol * 1e-2)
    w = 2 * PI * x
    if parity == "even":
        r = integrate(lambda y: ev(y) * np.cos(w * y), 0.0, T, spec)
        return complex(2 * r.value)
    if parity == "odd":
        r = integrate(lambda y: ev(y) * np.sin(w * y), 0.0, T, spec)
        return complex(2j * r.value)
    r = integrate(lambda y: ev(y) * np.exp(1j * w * y), -T, T, spec)
    return complex(r.value)


def _fourier_2d(f, x, spec):
    T = _envelope_cutoff(lambda r: f(np.stack([r, np.zeros_like(r)], axis=-1))
                         if f.radial is None else f.radial(r), f.decay, spec.abs_tol * 1e-2)
    prev = None
    for m in (64, 128, 256):
        nodes, weights = np.polynomial.legendre.leggauss(m)
        y = T * nodes
        wts = T * weights
        Y1, Y2 = np.meshgrid(y, y, indexing="ij")
        pts = np.stack([Y1.ravel(), Y2.ravel()], axis=-1)
        vals = f(pts) * np.exp(2j * PI * (x[0] * pts[:, 0] + x[1] * pts[:, 1]))
        W = np.outer(wts, wts).ravel()
        cur = complex(np.sum(W * vals))
        if prev is not None and abs(cur - prev) <= spec.tol_for(cur):
            return cur
        prev = cur
    return cur


def fourier_handle(f: FunctionHandle, spec: QuadratureSpec = FOURIER_SPEC) -> FunctionHandle:
    """The Fourier transform of f as a (quadrature-backed) handle, n = 1."""
    if f.dimension_n != 1:
        raise ValueError("fourier_handle supports n = 1")

    def ev(x):
        x = np.asarray(x, dtype=float)
        out = np.array([fourier_transform(f, xi, spec) for xi in x.ravel()])
        out = out.reshape(x.shape)
        return out.real if f.real and f.parity == "even" else out

    return FunctionHandle(ev, 1, f.parity, f.decay, f"F({f.name})", real=f.real and f.parity == "even",
                          verify=False)


def eigen_residual(f: FunctionHandle, epsilon: int, x_grid, spec: QuadratureSpec = FOURIER_SPEC):
    """max |F(f)(x) - eps f(x)| over the grid, with the sampled residuals."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    xs = np.asarray(x_grid, dtype=float)
    pts = xs if f.dimension_n == 1 else xs.reshape(-1, f.dimension_n)
    fx = f(pts)
    res = np.array([fourier_transform(f, p, spec) for p in pts]) - epsilon * fx
    res = res.real if np.all(np.abs(res.imag) < 1e-15) else res
    return float(np.max(np.abs(res))), res


# ---------------------------------------------------------------------------
# Quasi-fixed points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Involution:
    """An operator F with F(F(v)) = v.  ``linear`` is False for conjugation."""

    apply: Callable
    name: str = "F"
    linear: bool = True

    def __call__(self, v):
        return self.apply(v)


conjugation = Involution(lambda v: np.conj(v), "complex conjugation", linear=False)
reflection = Involution(lambda v: np.asarray(v)[..., ::-1], "reflection", linear=True)


@dataclass(frozen=True)
class AFESolution:
    value: object
    residual: float
    involution_residual: float


def _maxabs(x) -> float:
    if isinstance(x, FunctionHandle):
        raise TypeError
    return float(np.max(np.abs(np.asarray(x))))


def afe_solve(v0, l, F: Involution, samples=None) -> AFESolution:
    """Solve v + l F(v) = v0 by v = (v0 - l F(v0)) / (1 - l^2).

    v0 may be a number, an array (with F acting on arrays) or a FunctionHandle
    (F acting on handles, checked on ``samples``).  For an antilinear F the
    closed form is only valid for real l, which is enforced.
    """
    l = as_complex(l)
    if abs(1 - l * l) < 1e-15:
        raise SingularAFEError("l = +-1 makes the quasi-fixed-point equation singular")
    if not F.linear and l.imag != 0:
        raise ValueError("an antilinear involution needs a real coefficient l")
    lc = l.real if l.imag == 0 else l
    if isinstance(v0, FunctionHandle):
        xs = np.linspace(0.0, 3.0, 7) if samples is None else np.asarray(samples, dtype=float)
        Fv0 = F(v0)
        inv = float(np.max(np.abs(F(Fv0)(xs) - v0(xs))))

        def ev(x, v0=v0, Fv0=Fv0):
            return (v0(x) - lc * Fv0(x)) / (1 - lc * lc)

        v = FunctionHandle(ev, v0.dimension_n, v0.parity, v0.decay, f"v_l[{v0.name}]",
                           real=v0.real and isinstance(lc, float), verify=False)
        res = float(np.max(np.abs(v(xs) + lc * F(v)(xs) - v0(xs))))
        return AFESolution(v, res, inv)
    v0a = np.asarray(v0, dtype=complex)
    inv = _maxabs(F(F(v0a)) - v0a)
    v = (v0a - lc * F(v0a)) / (1 - lc * lc)
    res = _maxabs(v + lc * F(v) - v0a)
    value = complex(v) if v.ndim == 0 else v
    return AFESolution(value, res, inv)


# ---------------------------------------------------------------------------
# Lattice theta functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeMatrix:
    entries: np.ndarray

    def __post_init__(self):
        e = np.atleast_2d(np.asarray(self.entries, dtype=float))
        if e.shape[0] != e.shape[1]:
            raise ValueError("lattice matrix must be square")
        object.__setattr__(self, "entries", e)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def dual(self) -> "LatticeMatrix":
        """The inverse transpose."""
        if self.det == 0:
            raise np.linalg.LinAlgError("singular lattice matrix")
        return LatticeMatrix(np.linalg.inv(self.entries).T)


def _as_lattice(M) -> LatticeMatrix:
    return M if isinstance(M, LatticeMatrix) else LatticeMatrix(np.asarray(M, dtype=float))


def lattice_radius(n: int, tol: float = 1e-15, poly_degree: int = 0) -> float:
    """Smallest R (step 0.01) with e^{-pi R^2} (2R+1)^n (1+R^2)^{deg} < tol."""
    R = 0.5
    while math.exp(-PI * R * R) * (2 * R + 1) ** n * (1 + R * R) ** poly_degree >= tol:
        R += 0.01
    return R


def _poly_degree(omega: FunctionHandle) -> int:
    return 0 if omega.name in ("G",) or omega.name.startswith("G") and omega.name[1:].isdigit() else 1


def theta_lattice(omega: FunctionHandle, M, x, cutoff_radius: float | None = None) -> float:
    """sum over m in Z^n of omega(M diag(x) m).

    The point x acts as a coordinate scaling of the lattice, so
    theta(omega_M)(x) is the theta sum of the lattice with basis M diag(x).
    Terms outside ``cutoff_radius`` (default: the Gaussian tail rule) are
    dropped; for Gaussian-class omega the dropped tail is below 1e-15.
    """
    if omega.decay != "gaussian":
        raise DecayError("theta sums need Gaussian decay")
    M = _as_lattice(M)
    n = M.n
    if n != omega.dimension_n:
        raise ValueError("lattice and function dimensions differ")
    xv = np.broadcast_to(np.asarray(x, dtype=float), (n,))
    A = M.entries * xv[None, :]
    R = cutoff_radius if cutoff_radius is not None else lattice_radius(n, 1e-16, _poly_degree(omega))
    return float(np.real(_lattice_sum(omega, A, R)))


def _lattice_sum(omega, A, R):
    n = A.shape[0]
    # |A m| <= R forces |m|_inf <= R * ||A^{-1}||_2
    Ainv_norm = np.linalg.norm(np.linalg.inv(A), 2)
    B = int(math.ceil(R * Ainv_norm)) + 1
    B = min(B, 2000 if n == 1 else 300)
    rng = np.arange(-B, B + 1, dtype=float)
    if n == 1:
        pts = A[0, 0] * rng
        vals = omega(pts)
    else:
        grids = np.meshgrid(*([rng] * n), indexing="ij")
        m = np.stack([g.ravel() for g in grids], axis=-1)
        pts = m @ A.T
        vals = omega(pts)
    return np.sum(vals)


def hecke_theta_residual(omega: FunctionHandle, M, x=1.0, epsilon: int | None = None) -> float:
    """|theta(omega_A) - eps theta(omega_{A^-T}) / |det A||, with A = M diag(x)."""
    eps = omega.eigen if epsilon is None else epsilon
    if eps not in (1, -1):
        raise ValueError("omega must carry a declared Fourier eigenvalue +-1")
    M = _as_lattice(M)
    if abs(M.det) == 0:
        raise np.linalg.LinAlgError("singular lattice matrix")
    n = M.n
    xv = np.broadcast_to(np.asarray(x, dtype=float), (n,))
    A = LatticeMatrix(M.entries * xv[None, :])
    lhs = theta_lattice(omega, A, np.ones(n))
    rhs = eps * theta_lattice(omega, A.dual(), np.ones(n)) / abs(A.det)
    return abs(lhs - rhs)


def poisson_residual(f: FunctionHandle, cutoff: int = 10, spec: QuadratureSpec = FOURIER_SPEC) -> float:
    """|sum_{|m|<=c} F(f)(m) - sum_{|m|<=c} f(m)| plus bounds for both tails."""
    if f.dimension_n != 1:
        raise ValueError("Poisson check is one-dimensional")
    if f.decay not in ("gaussian", "exponential"):
        raise DecayError("Poisson check needs Gaussian or exponential decay")
    ms = np.arange(-cutoff, cutoff + 1, dtype=float)
    lhs = sum(fourier_transform(f, m, spec) for m in ms)
    rhs = complex(np.sum(f(ms)))
    # tails: direct sum of the next stretch of |f(m)|, doubled for safety
    ext = np.arange(cutoff + 1, cutoff + 200, dtype=float)
    tail_f = 2 * float(np.sum(np.abs(f(ext)) + np.abs(f(-ext))))
    tail_F = 2 * sum(abs(fourier_transform(f, m, spec)) for m in (cutoff + 1, -(cutoff + 1)))
    return abs(lhs - rhs) + tail_f + tail_F


# ---------------------------------------------------------------------------
# Mellin and signature Gamma
# ---------------------------------------------------------------------------

def mellin(f, s, spec: QuadratureSpec = MELLIN_SPEC) -> complex:
    """int_0^inf x^{s-1} f(x) dx for Re s > 0.

    The value f(0) is split off analytically on [0, 1]:
    int_0^1 x^{s-1} f = f(0)/s + int_0^1 x^{s-1}(f(x) - f(0)), which keeps the
    integrand bounded near 0 down to small Re s.
    """
    return mellin_with_error(f, s, spec).value


def mellin_with_error(f, s, spec: QuadratureSpec = MELLIN_SPEC) -> ValueWithError:
    s = as_complex(s)
    if s.real <= 0:
        raise ValueError("Mellin integral diverges at 0 for Re s <= 0")
    ev = f.profile() if isinstance(f, FunctionHandle) else f
    f0 = complex(np.asarray(ev(np.array([0.0])))[0])
    sm1 = s - 1

    def near(x):
        return np.exp(sm1 * np.log(x)) * (ev(x) - f0)

    def far(x):
        return np.exp(sm1 * np.log(x)) * ev(x)

    a = integrate(near, 0.0, 1.0, spec)
    b = integrate(far, 1.0, math.inf, spec)
    return ValueWithError(f0 / s + a.value + b.value, a.error_estimate + b.error_estimate)


def signature_gamma(f: FunctionHandle, r, s, spec: QuadratureSpec = MELLIN_SPEC) -> complex:
    """Gamma_r(f)(s): (1,0) -> M(f)(s); (0,1) -> 2 pi int rho^{2s-1} f(rho) d rho."""
    r = tuple(r)
    s = as_complex(s)
    if r == (1, 0):
        return mellin(f.profile() if isinstance(f, FunctionHandle) else f, s, spec)
    if r == (0, 1):
        return 2 * PI * mellin(f.profile() if isinstance(f, FunctionHandle) else f, 2 * s, spec)
    raise ValueError("signature must be (1,0) or (0,1)")


def mellin_g(s) -> complex:
    """Closed form of M(G)(s) = pi^{-s/2} Gamma(s/2) / 2."""
    s = as_complex(s)
    return 0.5 * cmath.exp(-0.5 * s * math.log(PI) + log_gamma(0.5 * s))


def mellin_h2_closed(s) -> complex:
    """M(H2)(s) = (2s-1)/2 pi^{1-s/2} Gamma(s/2), from M(H2) = 4pi^2 M(G)(s+2) - pi M(G)(s)."""
    s = as_complex(s)
    return (2 * s - 1) / 2 * cmath.exp((1 - 0.5 * s) * math.log(PI) + log_gamma(0.5 * s))


def _transported_structural(s: complex) -> complex:
    # x^{s-2} convention shifted to x^{s-1}: M_std(H2)(s) = s (s-1) M_std(G)(s-2)
    return s * (s - 1) * mellin_g(s - 2)


def _transported_literal(s: complex) -> complex:
    # same shift, keeping the printed closed form pi^{1-t} Gamma(t/2) / (2 pi) at t = s-1
    t = s - 1
    return s * (s - 1) * cmath.exp((1 - t) * math.log(PI) + log_gamma(0.5 * t)) / (2 * PI)


def mellin_hermite_audit(s_grid, spec: QuadratureSpec = MELLIN_SPEC, tol: float = 1e-7) -> list[dict]:
    """Quadrature Mellin of H2 against the closed form and the transported readings."""
    h2 = hermite_h2()
    out = []
    for s in s_grid:
        s = as_complex(s)
        if s.real <= 0:
            raise ValueError("audit grid needs Re s > 0")
        for p in (0, 1, 2):
            if abs(s - p) < 1e-6:
                raise PoleError(f"grid point {s} too close to a pole of the transported formulas")
        quad = mellin_with_error(h2, s, spec)
        closed = mellin_h2_closed(s)
        struct = _transported_structural(s)
        literal = _transported_literal(s)
        scale = max(1.0, abs(closed))
        out.append({
            "s": s, "quadrature": quad.value, "quadrature_error": quad.error_estimate,
            "closed_form": closed, "transported_structural": struct,
            "transported_literal": literal,
            "closed_agrees": abs(quad.value - closed) <= tol * scale,
            "structural_agrees": abs(quad.value - struct) <= tol * scale,
            "literal_agrees": abs(quad.value - literal) <= tol * scale,
            "closed_form_vanishes": abs(closed) < 1e-12,
        })
    return out


# ---------------------------------------------------------------------------
# Theta of a field and the Face identity
# ---------------------------------------------------------------------------

FACE_FIELDS = ("Q", "Q(i)", "Q(sqrt(-3))")


def _face_field(field) -> NumberFieldDescriptor:
    f = make_field(field) if isinstance(field, str) else field
    if f.label in ("Q(zeta_4)", "Q(sqrt(-1))"):
        f = make_field("Q(i)")
    if f.label == "Q(zeta_3)":
        f = make_field("Q(sqrt(-3))")
    if f.label not in FACE_FIELDS:
        raise ValueError(f"theta/Face only implemented for {FACE_FIELDS}")
    return f


def _lattice_basis(label: str) -> np.ndarray:
    """Unimodular embedding of the ring of integers (columns = basis vectors)."""
    if label == "Q(i)":
        return np.eye(2)
    # Z[w], w = (-1 + sqrt(-3))/2, scaled by sqrt(2/sqrt 3) to covolume 1
    c = math.sqrt(2 / math.sqrt(3))
    return c * np.array([[1.0, -0.5], [0.0, math.sqrt(3) / 2]])


def theta_k(field, omega: FunctionHandle, t) -> np.ndarray | float:
    """Radial theta of k evaluated at t > 0 (scalar or array).

    Q      : sum_{m >= 1} omega(m t)
    imag.  : (1/w) sum_{alpha != 0} omega(sqrt(t) * alpha) over the unimodular
             embedding of the integers (scale sqrt(2/sqrt|d|))
    """
    f = _face_field(field)
    if omega.decay != "gaussian":
        raise DecayError("theta sums need Gaussian decay")
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts <= 0):
        raise ValueError("t must be positive")
    out = np.zeros(ts.shape)
    if f.label == "Q":
        if omega.dimension_n != 1:
            raise ValueError("field Q needs a 1-D function")
        R = lattice_radius(1, 1e-17, _poly_degree(omega))
        mmax = int(math.ceil(R / ts.min())) + 1
        m = np.arange(1, mmax + 1, dtype=float)
        vals = omega((m[:, None] * ts[None, :]).ravel()).reshape(mmax, ts.size)
        # mask points beyond the radius so huge t do not matter
        vals = np.where(m[:, None] * ts[None, :] <= R + 1, vals, 0.0)
        out = np.real(np.sum(vals, axis=0))
    else:
        if omega.dimension_n != 2:
            raise ValueError("imaginary quadratic fields need a 2-D function")
        basis = _lattice_basis(f.label)
        R = lattice_radius(2, 1e-17, _poly_degree(omega))
        rad = omega.radial
        for i, tv in enumerate(ts):
            A = math.sqrt(tv) * basis
            B = int(math.ceil(R * np.linalg.norm(np.linalg.inv(A), 2))) + 1
            r = np.arange(-B, B + 1, dtype=float)
            a, b = np.meshgrid(r, r, indexing="ij")
            m = np.stack([a.ravel(), b.ravel()], axis=-1)
            m = m[np.any(m != 0, axis=1)]
            pts = m @ A.T
            if rad is not None:
                vals = rad(np.sqrt(np.sum(pts * pts, axis=1)))
            else:
                vals = omega(pts)
            out[i] = float(np.real(np.sum(vals))) / f.roots_of_unity_w
    return float(out[0]) if np.ndim(t) == 0 else out


def _torus_volume(f: NumberFieldDescriptor) -> float:
    return (2 * PI) ** f.r2 / f.degree_n


def face_sides(field, omega: FunctionHandle, s, spec: QuadratureSpec = MELLIN_SPEC,
               epsilon: int | None = None) -> dict:
    """Both sides of the theta-integral identity for the completed zeta.

    LHS = (sqrt|d| / 2)^{s} Gamma_r(omega)(s) zeta_k(s)
    RHS = V_k [ int_1^inf Theta_k(t) (t^{s-1} + eps t^{-s}) dt
                + (omega(0)/w) (eps/(s-1) - 1/s) ]
    with V_k = (2 pi)^{r2} / n.  For omega = G the LHS is c_k zeta*_k(s) and
    the polar term is c_k lambda_k / (s (s-1)), where c_Q = 1/2 (the theta
    sum over Q runs over m >= 1 only) and c_k = V_k = pi for the imaginary
    quadratic fields.  Also returns the literal variant with polar term
    lambda_k / (s(s-1)) and no V_k, for the audit.
    """
    f = _face_field(field)
    s = as_complex(s)
    if s == 0 or s == 1:
        raise PoleError("identity is singular at s = 0, 1")
    if s.real <= 0:
        raise ValueError("need Re s > 0")
    eps = omega.eigen if epsilon is None else epsilon
    if eps not in (1, -1):
        raise ValueError("omega must be a declared +-fixed point")
    r = (1, 0) if f.r2 == 0 else (0, 1)
    gam = signature_gamma(omega, r, s, spec)
    if abs(gam) < 1e-12:
        raise ValueError(f"Gamma_r(omega) vanishes numerically at s={s}")
    zk = dedekind_zeta(s, f)
    disc = cmath.exp(s * math.log(math.sqrt(f.abs_discriminant) / 2.0)) if f.r2 else 1.0
    lhs = disc * gam * zk.value

    def integrand(t):
        th = theta_k(f, omega, t)
        lt = np.log(t)
        return th * (np.exp((s - 1) * lt) + eps * np.exp(-s * lt))

    I = integrate(integrand, 1.0, math.inf, spec)
    w = f.roots_of_unity_w
    w0 = omega.value_at_zero().real
    V = _torus_volume(f)
    rhs = V * (I.value + (w0 / w) * (eps / (s - 1) - 1 / s))
    literal = f.lambda_k / (s * (s - 1)) + I.value
    return {"lhs": complex(lhs), "rhs": complex(rhs), "integral": complex(I.value),
            "integral_error": I.error_estimate, "literal_rhs": complex(literal),
            "torus_volume": V, "gamma_r": complex(gam), "epsilon": eps}


def face_residual(field, omega: FunctionHandle, s, spec: QuadratureSpec = MELLIN_SPEC) -> float:
    d = face_sides(field, omega, s, spec)
    return abs(d["lhs"] - d["rhs"])
