"""Exact p-adic valuations, the pq pre-valuation and the discrete AHD_pq check.

All arithmetic is on :class:`fractions.Fraction`, so every comparison here is
exact.  The q-side normalization defaults to the non-canonical |q|_q = 1/p;
pass ``canonical=True`` for the usual |q|_q = 1/q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import factorize

__all__ = [
    "PAdicView", "AHDResult", "ZeroValuationError", "PreconditionError", "as_rational",
    "padic_valuation", "padic_abs", "prevaluation_vpq", "vpq_bound_check", "haar_module_pq", "ultrametric_dominance",
    "exhaustive_dominance_check", "product_formula", "ahd_pq_discrete_check", "primes_upto",
]


class ZeroValuationError(ValueError):
    """0 has valuation +inf and |0|_p = 0; operations needing a finite exponent reject it."""


class PreconditionError(ValueError):
    pass


def as_rational(x) -> Fraction:
    """Fraction from an int, Fraction or 'a/b' string (floats are refused)."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or string")
    return Fraction(x)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if _is_prime(p)]


def _check_prime(p):
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def _vint(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class PAdicView:
    """x = (a/b) p^alpha with p not dividing ab, and |x|_p = p^{-alpha}."""

    x: Fraction
    p: int
    valuation_alpha: int
    abs_value: Fraction

    @property
    def unit_part(self) -> Fraction:
        return self.x / Fraction(self.p) ** self.valuation_alpha


def padic_valuation(x, p: int) -> PAdicView:
    x = as_rational(x)
    _check_prime(p)
    if x == 0:
        raise ZeroValuationError("valuation of 0 is +inf")
    a = _vint(abs(x.numerator), p) - _vint(x.denominator, p)
    return PAdicView(x, p, a, Fraction(p) ** -a)


def padic_abs(x, p: int) -> Fraction:
    """|x|_p with |0|_p = 0."""
    x = as_rational(x)
    return Fraction(0) if x == 0 else padic_valuation(x, p).abs_value


def _q_abs(x: Fraction, p: int, q: int, canonical: bool) -> Fraction:
    if x == 0:
        return Fraction(0)
    n = padic_valuation(x, q).valuation_alpha
    return Fraction(q if canonical else p) ** -n


def prevaluation_vpq(x, p: int, q: int, canonical: bool = False) -> Fraction:
    """v_pq(x) = |x|_p |x|_q; with the default normalization this is p^{-(m+n)}."""
    x = as_rational(x)
    _check_prime(p)
    _check_prime(q)
    if p == q:
        raise ValueError("p and q must be distinct")
    if x == 0:
        raise ZeroValuationError("v_pq(0) has no finite exponent")
    return padic_abs(x, p) * _q_abs(x, p, q, canonical)


def vpq_bound_check(x, y, p: int, q: int) -> dict:
    """Compare v_pq(x + y) with two upper bounds.

    ``mixed``: max{v(x), v(y), |x|_p|y|_q, |y|_p|x|_q}; always holds since
    |x+y|_p|x+y|_q <= max(|x|_p,|y|_p) max(|x|_q,|y|_q).
    ``literal``: the same with |x|_p|y|_p in place of |x|_p|y|_q.
    """
    x, y = as_rational(x), as_rational(y)
    if x == 0 or y == 0 or x + y == 0:
        raise ZeroValuationError("need x, y, x + y all nonzero")
    v = prevaluation_vpq(x + y, p, q)
    xp, yp = padic_abs(x, p), padic_abs(y, p)
    xq, yq = _q_abs(x, p, q, False), _q_abs(y, p, q, False)
    base = [prevaluation_vpq(x, p, q), prevaluation_vpq(y, p, q)]
    mixed = max(base + [xp * yq, yp * xq])
    literal = max(base + [xp * yp, yp * xq])
    return {"v": v, "mixed_bound": mixed, "literal_bound": literal,
            "mixed_holds": v <= mixed, "literal_holds": v <= literal}


def _is_power_of(x: Fraction, p: int | None) -> bool:
    if x <= 0:
        return False
    if x == 1:
        return True
    n, d = x.numerator, x.denominator
    if n != 1 and d != 1:
        return False
    m = n if d == 1 else d
    f = factorize(m)
    if len(f) != 1:
        return False
    return p is None or next(iter(f)) == p


def haar_module_pq(xp_absval, xq_absval, p: int | None = None) -> Fraction:
    """Delta_pq(x) = |x_p|_p |x_q|_q for exact prime-power absolute values.

    With the non-canonical normalization both factors are powers of p; pass
    ``p`` to enforce that.
    """
    a, b = as_rational(xp_absval), as_rational(xq_absval)
    for v in (a, b):
        if not _is_power_of(v, p):
            raise ValueError(f"{v} is not of the form p^k")
    return a * b


def ultrametric_dominance(x, y, p: int) -> bool:
    """|x^2 - y^2|_p == |x^2|_p, given |y|_p < |x|_p (checked exactly)."""
    x, y = as_rational(x), as_rational(y)
    _check_prime(p)
    if x == 0:
        raise PreconditionError("x must be nonzero")
    if not padic_abs(y, p) < padic_abs(x, p):
        raise PreconditionError("need |y|_p < |x|_p")
    d = x * x - y * y
    return d != 0 and padic_valuation(d, p).valuation_alpha == padic_valuation(x * x, p).valuation_alpha


def _vp_array(n: np.ndarray, p: int) -> np.ndarray:
    """p-adic valuation of nonzero int64 entries."""
    n = np.abs(n)
    out = np.zeros(n.shape, dtype=np.int64)
    mask = (n % p == 0) & (n != 0)
    while mask.any():
        out[mask] += 1
        n = np.where(mask, n // p, n)
        mask = (n % p == 0) & (n != 0)
    return out


def _height_rationals(height: int):
    nums, dens = [], []
    for b in range(1, height + 1):
        for a in range(-height, height + 1):
            if a != 0 and np.gcd(a, b) == 1:
                nums.append(a)
                dens.append(b)
    return np.array(nums, dtype=np.int64), np.array(dens, dtype=np.int64)


def exhaustive_dominance_check(p: int, height: int = 50) -> dict:
    """Ultrametric dominance over every pair of reduced rationals of height <= ``height``.

    x = a/b, y = c/d: x^2 - y^2 = (a^2 d^2 - c^2 b^2) / (b^2 d^2), evaluated in
    int64 (|a^2 d^2| <= height^4).  Pairs with |y|_p >= |x|_p are skipped.
    Returns counts; ``failures`` must be 0.
    """
    _check_prime(p)
    if height ** 4 * 2 >= 2 ** 62:
        raise ValueError("height too large for int64")
    a, b = _height_rationals(height)
    vb = _vp_array(b, p)
    val = _vp_array(a, p) - vb
    checked = failures = 0
    # x is the larger one p-adically: y ranges over strictly larger valuations
    for i in range(a.size):
        ys = val > val[i]
        if not ys.any():
            continue
        c, d, vdd = a[ys], b[ys], vb[ys]
        num = a[i] * a[i] * d * d - c * c * b[i] * b[i]
        zero = num == 0
        failures += int(zero.sum())
        vdiff = _vp_array(num[~zero], p) - 2 * vb[i] - 2 * vdd[~zero]
        failures += int(np.sum(vdiff != 2 * val[i]))
        checked += int(ys.sum())
    return {"p": p, "height": height, "rationals": int(a.size), "pairs_checked": checked,
            "failures": failures}


def product_formula(x, primes=None) -> Fraction:
    """|x| * prod_p |x|_p over the given primes (default p <= 100); exactly 1
    when x is supported on those primes."""
    x = as_rational(x)
    if x == 0:
        raise ZeroValuationError("product formula needs x != 0")
    out = abs(x)
    for p in primes if primes is not None else primes_upto(100):
        out *= padic_abs(x, p)
    return out


@dataclass(frozen=True)
class AHDResult:
    verdict: bool
    value: Fraction
    terms: int


def ahd_pq_discrete_check(x, p: int, q: int, N: int, xis, reps) -> AHDResult:
    """Exact discrete AHD_pq: every term 1/|x^2 - (eta xi)^2|_p equals 1/|x^2|_p.

    ``xis`` are samples of p^N (units), ``reps`` the representatives eta with
    |eta|_p = 1; a convex average of equal terms is the common value, which
    is returned.
    """
    x = as_rational(x)
    _check_prime(p)
    _check_prime(q)
    if p == q:
        raise ValueError("p and q must be distinct")
    xis = [as_rational(v) for v in xis]
    reps = [as_rational(v) for v in reps]
    if not reps:
        raise PreconditionError("empty representative set")
    if not xis:
        raise PreconditionError("no samples xi")
    if x == 0 or padic_valuation(x, q).valuation_alpha != 0:
        raise PreconditionError("need |x|_q = 1")
    pN = Fraction(p) ** -N
    if padic_abs(x, p) < pN * p:
        raise PreconditionError("need |x|_p >= p^{-N+1}")
    target = 1 / padic_abs(x * x, p)
    ok = True
    n = 0
    for eta in reps:
        if eta == 0 or padic_abs(eta, p) != 1:
            raise PreconditionError(f"representative {eta} is not a p-adic unit")
        for xi in xis:
            y = eta * xi
            if y == 0 or padic_abs(y, p) != pN:
                raise PreconditionError(f"|eta xi|_p != p^-N for eta={eta}, xi={xi}")
            d = x * x - y * y
            ok = ok and d != 0 and 1 / padic_abs(d, p) == target
            n += 1
    return AHDResult(ok, target, n)
