"""Riemann, Hurwitz, Dirichlet and Dedekind zeta values.

Hurwitz zeta is computed by Euler-Maclaurin summation with a fixed number of
Bernoulli corrections; everything else is assembled from it.  The lattice
enumeration in :func:`ideal_count_zeta` is an independent, brute-force route
to the Dedekind zeta of the three imaginary-quadratic-or-rational fields with
easy ideal counts.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fields import (DirichletCharacter, NumberFieldDescriptor, UnknownFieldError,
                     characters_mod, factorize, kronecker_character, make_field)
from .numerics import PoleError, as_complex, log_gamma

__all__ = [
    "LSeriesResult",
    "riemann_zeta",
    "hurwitz_zeta",
    "hurwitz_zeta_with_error",
    "dirichlet_l",
    "dedekind_zeta",
    "cyclotomic_readings",
    "ideal_count_zeta",
    "ideal_counts",
    "prime_ideal_data",
]

EM_TERMS = 8
# B_2, B_4, ..., B_18 (the last one only feeds the remainder bound)
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510, 43867 / 798)
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class LSeriesResult:
    value: complex
    method: str
    error_estimate: float
    partial_sum: complex | None = None

    def __complex__(self):
        return complex(self.value)


def _rising(s: complex, k: int) -> complex:
    r = 1 + 0j
    for j in range(k):
        r *= s + j
    return r


def _em_remainder(s: complex, x: float) -> float:
    """Bound on the Euler-Maclaurin remainder after EM_TERMS corrections at x = N + a."""
    M = EM_TERMS
    sigma = s.real
    if sigma + 2 * M + 1 <= 0:
        return math.inf
    b = abs(_BERNOULLI[M]) / math.factorial(2 * M + 2)
    return (abs(_rising(s, 2 * M + 1)) * b * x ** (-sigma - 2 * M - 1)
            * abs(s + 2 * M + 1) / (sigma + 2 * M + 1))


def _choose_n(s: complex, a: float) -> int:
    # smallest N (in steps of 4) whose first dropped term is negligible next to
    # the leading term (N+a)^{-sigma}
    N = max(4, int(abs(s) / 8))
    while True:
        x = N + a
        if _em_remainder(s, x) <= 1e-17 * x ** (-s.real) or N > 100000:
            return N
        N += 4


def _expm1(z: complex) -> complex:
    if abs(z) < 1e-3:
        return z * (1 + z / 2 * (1 + z / 3 * (1 + z / 4 * (1 + z / 5))))
    return cmath.exp(z) - 1


def _hurwitz_em(s: complex, a: float, N: int, drop_pole: bool = False):
    """Euler-Maclaurin sum for zeta(s, a).  Returns (value, error_bound).

    With ``drop_pole`` the constant 1/(s-1) is removed from the polar term, so
    the result stays finite at s = 1 (used for non-principal L-series where
    those constants cancel across residues).
    """
    n = np.arange(N, dtype=float) + a
    logs = np.log(n)
    terms = np.exp(-s * logs)
    head = complex(np.sum(terms))
    # each term carries a phase/magnitude rounding error of about eps*|s log n|
    mag = float(np.sum(np.abs(terms) * (2.0 + abs(s) * np.abs(logs))))
    x = N + a
    lx = math.log(x)
    xs = cmath.exp(-s * lx)  # x^{-s}
    if drop_pole:
        if s == 1:
            polar = -lx
        else:
            polar = _expm1((1 - s) * lx) / (s - 1)
    else:
        polar = x * xs / (s - 1)
    total = head + polar + 0.5 * xs
    corr = 0j
    t = s * xs / x  # s x^{-s-1}
    for k in range(1, EM_TERMS + 1):
        corr += _BERNOULLI[k - 1] / math.factorial(2 * k) * t
        t *= (s + 2 * k - 1) * (s + 2 * k) / (x * x)
    total += corr
    err = _em_remainder(s, x) + 4 * _EPS * (mag + (2.0 + abs(s) * abs(lx)) * (abs(polar) + abs(corr)))
    return total, err


def hurwitz_zeta_with_error(s, a: float):
    s = as_complex(s)
    a = float(a)
    if not 0 < a <= 1:
        raise ValueError("Hurwitz parameter must lie in (0, 1]")
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s=1")
    return _hurwitz_em(s, a, _choose_n(s, a))


def hurwitz_zeta(s, a: float) -> complex:
    """zeta(s, a) = sum_{n>=0} (n+a)^{-s}, continued to s != 1."""
    return complex(hurwitz_zeta_with_error(s, a)[0])


REFLECT_BELOW = -0.5


def riemann_zeta(s) -> LSeriesResult:
    """zeta(s).  Euler-Maclaurin for Re s >= -1/2, reflection below that.

    Left of the strip the direct sum cancels badly (terms grow like N^{-Re s}),
    so zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) is used there.
    The critical strip itself is always summed directly.
    """
    s = as_complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if s.real < REFLECT_BELOW:
        v, e = hurwitz_zeta_with_error(1 - s, 1.0)
        lg = log_gamma(1 - s)
        fac = cmath.exp(s * math.log(2.0) + (s - 1) * math.log(math.pi) + lg) * cmath.sin(0.5 * math.pi * s)
        val = fac * v
        # log_gamma carries ~1e-14 relative error growing with |log Gamma|
        rel = e / abs(v) + 4 * _EPS * (abs(lg) + abs(s) * 4 + 8)
        return LSeriesResult(complex(val), "euler-maclaurin", float(abs(val) * rel))
    v, e = hurwitz_zeta_with_error(s, 1.0)
    return LSeriesResult(complex(v), "euler-maclaurin", float(e))


def dirichlet_l(s, chi: DirichletCharacter) -> LSeriesResult:
    """L(s, chi) = m^{-s} sum_a chi(a) zeta(s, a/m)."""
    s = as_complex(s)
    m = chi.modulus_m
    principal = chi.is_principal
    if principal and s == 1:
        raise PoleError("principal L-series has a pole at s=1")
    if m == 1:
        r = riemann_zeta(s)
        return LSeriesResult(r.value, "hurwitz-sum", r.error_estimate)
    N = max(_choose_n(s, 1.0 / m), 4)
    total = 0j
    err = 0.0
    for a, val in chi.values.items():
        h, e = _hurwitz_em(s, a / m, N, drop_pole=not principal)
        total += val * h
        err += e
    scale = cmath.exp(-s * math.log(m))
    return LSeriesResult(complex(scale * total), "hurwitz-sum", float(abs(scale) * err))


# ---------------------------------------------------------------------------
# Dedekind zeta
# ---------------------------------------------------------------------------

def _product(results) -> LSeriesResult:
    val = 1 + 0j
    for r in results:
        val *= r.value
    err = 0.0
    for i, r in enumerate(results):
        others = 1.0
        for j, q in enumerate(results):
            if j != i:
                others *= abs(q.value) + q.error_estimate
        err += r.error_estimate * others
    return LSeriesResult(val, "factorization", err)


@lru_cache(maxsize=None)
def _primitive_chars(m: int) -> tuple:
    return tuple(c.primitive() for c in characters_mod(m))


def prime_ideal_data(m: int) -> list[tuple[int, int, int]]:
    """For each prime p | m, the (p, f, g) splitting data in Q(zeta_m).

    f is the order of p modulo the prime-to-p part of m, g = phi(m')/f the
    number of primes above p; each prime above p has norm p^f.
    """
    out = []
    for p in sorted(factorize(m)):
        mp = m
        while mp % p == 0:
            mp //= p
        if mp == 1:
            f = 1
        else:
            f, x = 1, p % mp
            while x != 1:
                x = x * p % mp
                f += 1
        phi = sum(1 for b in range(1, mp + 1) if math.gcd(b, mp) == 1) if mp > 1 else 1
        out.append((p, f, phi // f))
    return out


def cyclotomic_readings(s, m: int) -> dict[str, LSeriesResult]:
    """Three readings of the character factorisation of zeta over Q(zeta_m).

    primitive      : product of L(s, chi*) over the primitive characters
                     inducing the characters mod m (no extra factor)
    ideal-norms    : ramified Euler factors (1 - N(P)^{-s})^{-1} over the primes
                     P above p | m, times the imprimitive L-series mod m
    rational-primes: the same with N(P) read as the rational prime p
    """
    s = as_complex(s)
    prim = _product([dirichlet_l(s, c) for c in _primitive_chars(m)])
    imprim = _product([dirichlet_l(s, c) for c in characters_mod(m)])
    ideal = 1 + 0j
    naive = 1 + 0j
    for p, f, g in prime_ideal_data(m):
        ideal /= (1 - cmath.exp(-s * f * math.log(p))) ** g
        naive /= 1 - cmath.exp(-s * math.log(p))
    return {
        "primitive": prim,
        "ideal-norms": LSeriesResult(imprim.value * ideal, "factorization",
                                     imprim.error_estimate * abs(ideal)),
        "rational-primes": LSeriesResult(imprim.value * naive, "factorization",
                                         imprim.error_estimate * abs(naive)),
    }


def dedekind_zeta(s, field: NumberFieldDescriptor | str) -> LSeriesResult:
    if isinstance(field, str):
        field = make_field(field)
    s = as_complex(s)
    if s == 1:
        raise PoleError("Dedekind zeta has a pole at s=1")
    kind = field.kind
    if kind[0] == "Q":
        r = riemann_zeta(s)
        return LSeriesResult(r.value, "factorization", r.error_estimate)
    if kind[0] == "quadratic":
        return _product([riemann_zeta(s), dirichlet_l(s, kronecker_character(kind[1]))])
    if kind[0] == "cyclotomic":
        return cyclotomic_readings(s, kind[1])["primitive"]
    raise UnknownFieldError(field.label)


# ---------------------------------------------------------------------------
# Ideal counting oracle
# ---------------------------------------------------------------------------

def _lattice_data(label: str):
    """(norm form, kappa, c1, c0) for the supported fields.

    kappa is the asymptotic density of ideal norms (A(x) ~ kappa x) and
    |A(x) - kappa x| <= c1 sqrt(x) + c0 is a crude but rigorous lattice
    point bound (cells of diameter 2 delta inside/outside the disc).
    """
    if label == "Q":
        return None, 1.0, 0.0, 1.0
    if label in ("Q(i)", "Q(zeta_4)"):
        kappa = math.pi / 4
        delta = math.sqrt(2) / 2
        return "x2+y2", kappa, kappa * 2 * delta, kappa * delta ** 2 + 0.25
    if label in ("Q(sqrt(-3))", "Q(zeta_3)"):
        kappa = math.pi / (3 * math.sqrt(3))
        delta = math.sqrt(3) / 2
        return "x2+xy+y2", kappa, kappa * 2 * delta, kappa * delta ** 2 + 1 / 6
    raise UnknownFieldError(f"ideal counting not available for {label}")


@lru_cache(maxsize=8)
def ideal_counts(label: str, cutoff: int) -> np.ndarray:
    """a_n for n = 0..cutoff: number of ideals of norm n (a_0 = 0).

    Counts lattice points of the norm form exactly and divides by the number
    of units w (every nonzero ideal is principal in these fields).
    """
    form, *_ = _lattice_data(label)
    if form is None:
        a = np.ones(cutoff + 1, dtype=np.int64)
        a[0] = 0
        return a
    if form == "x2+y2":
        R = math.isqrt(cutoff) + 1
        w = 4
    else:
        R = math.isqrt(4 * cutoff // 3 + 1) + 1
        w = 6
    x = np.arange(-R, R + 1, dtype=np.int64)
    counts = np.zeros(cutoff + 1, dtype=np.int64)
    for xi in x:
        nrm = xi * xi + x * x if form == "x2+y2" else xi * xi + xi * x + x * x
        nrm = nrm[(nrm > 0) & (nrm <= cutoff)]
        counts += np.bincount(nrm, minlength=cutoff + 1)
    if np.any(counts % w):
        raise ArithmeticError("lattice counts not divisible by the unit count")
    return counts // w


def ideal_count_zeta(s, field: NumberFieldDescriptor | str, norm_cutoff: int) -> LSeriesResult:
    """sum_{n <= cutoff} a_n n^{-s} plus the main-term tail kappa N^{1-s}/(s-1).

    ``partial_sum`` holds the bare partial sum; ``error_estimate`` bounds the
    remaining error from the lattice-point discrepancy.
    """
    if isinstance(field, str):
        field = make_field(field)
    s = as_complex(s)
    if s.real <= 1:
        raise ValueError("ideal counting needs Re s > 1")
    form, kappa, c1, c0 = _lattice_data(field.label)
    N = int(norm_cutoff)
    a = ideal_counts(field.label, N)
    n = np.arange(1, N + 1, dtype=float)
    w = a[1:].astype(float)
    mask = w > 0
    terms = w[mask] * np.exp(-s * np.log(n[mask]))
    partial = complex(np.sum(terms))
    tail = kappa * cmath.exp((1 - s) * math.log(N)) / (s - 1)
    sigma = s.real
    b = (c1 * math.sqrt(N) + c0) * N ** (-sigma)
    b += abs(s) * (c1 * N ** (0.5 - sigma) / (sigma - 0.5) + c0 * N ** (-sigma) / sigma)
    b += 8 * _EPS * float(np.sum(np.abs(terms)))
    return LSeriesResult(partial + tail, "ideal-count-oracle", float(b), partial_sum=partial)
