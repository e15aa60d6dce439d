import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from zetalab.fields import characters_mod, factorize, kronecker_character, make_field
from zetalab.lfunctions import (cyclotomic_readings, dedekind_zeta, dirichlet_l, hurwitz_zeta,
                                ideal_count_zeta, ideal_counts, riemann_zeta)
from zetalab.numerics import PoleError


def test_riemann_goldens():
    assert abs(riemann_zeta(2).value - 1.6449340668) < 1e-10
    assert abs(riemann_zeta(0).value + 0.5) < 1e-12
    assert abs(riemann_zeta(-1).value + 1 / 12) < 1e-12
    with pytest.raises(PoleError):
        riemann_zeta(1)


@given(st.floats(-10, 10), st.floats(-40, 40))
def test_riemann_vs_mpmath(u, v):
    s = complex(u, v)
    # mpmath mishandles subnormal arguments, so stay clear of them
    if abs(s - 1) < 1e-2 or abs(s) < 1e-8:
        return
    want = complex(mpmath.zeta(s))
    r = riemann_zeta(s)
    assert abs(r.value - want) <= 1e-9 * max(1, abs(want))


def test_hurwitz_goldens():
    assert abs(hurwitz_zeta(2, 1) - 1.6449340668) < 1e-10
    assert abs(hurwitz_zeta(2, 0.5) - math.pi ** 2 / 2) < 1e-10
    assert abs(hurwitz_zeta(0, 0.5)) < 1e-12


@given(st.floats(-5, 6), st.floats(-20, 20), st.floats(0.05, 1.0))
def test_hurwitz_vs_mpmath(u, v, a):
    s = complex(u, v)
    if abs(s - 1) < 1e-2 or abs(s) < 1e-8:
        return
    want = complex(mpmath.zeta(s, a))
    assert abs(hurwitz_zeta(s, a) - want) <= 1e-9 * max(1, abs(want))


def test_dirichlet_goldens():
    chi = kronecker_character(-4)
    assert abs(dirichlet_l(2, chi).value - 0.9159655942) < 1e-10
    assert abs(dirichlet_l(1, chi).value - math.pi / 4) < 1e-10
    principal = characters_mod(1)[0]
    assert abs(dirichlet_l(2, principal).value - 1.6449340668) < 1e-10


@pytest.mark.parametrize("m", [5, 7, 8, 12])
def test_dirichlet_vs_mpmath(m):
    for chi in characters_mod(m):
        for s in (2, 0.5 + 3j, -1.5 + 1j):
            if chi.is_principal and s == 2:
                continue
            want = complex(mpmath.dirichlet(s, [chi(n) for n in range(m)]))
            got = dirichlet_l(s, chi).value
            assert abs(got - want) <= 1e-9 * max(1, abs(want))


@pytest.mark.parametrize("s", [2, 0.3 + 4j, 2.5 + 1j])
def test_dirichlet_conjugate_symmetry(s):
    for chi in characters_mod(7):
        a = dirichlet_l(complex(s).conjugate(), chi.conj()).value
        b = dirichlet_l(s, chi).value.conjugate()
        assert abs(a - b) < 1e-10


def test_dedekind_goldens():
    assert abs(dedekind_zeta(2, "Q").value - 1.6449340668) < 1e-10
    assert abs(dedekind_zeta(2, "Q(i)").value - 1.5067030100) < 1e-9
    # frozen oracle: zeta(3) L(3, chi_-4) = zeta(3) pi^3 / 32
    want = float(mpmath.zeta(3)) * math.pi ** 3 / 32
    assert abs(dedekind_zeta(3, "Q(i)").value - want) < 1e-12
    assert abs(want - 1.1647284039) < 1e-9


def test_ideal_count_goldens():
    r = ideal_count_zeta(2, "Q", 10 ** 6)
    assert abs(r.value - 1.64493397) < 1e-6
    r = ideal_count_zeta(3, "Q(i)", 10 ** 4)
    # oracle zeta(3) pi^3 / 32 = 1.1647284; 1.2060095 is not the value of this sum
    assert abs(r.value - 1.1647284039) < 1e-4
    assert abs(r.value - 1.2060095) > 1e-2
    for label in ("Q", "Q(i)", "Q(sqrt(-3))"):
        assert ideal_counts(label, 10)[1] == 1


def test_gaussian_counts_match_r2():
    """a_n = r2(n)/4, with r2(n) = 4 sum_{d|n} chi_-4(d)."""
    a = ideal_counts("Q(i)", 2000)
    chi = kronecker_character(-4)
    for n in range(1, 2001):
        want = sum(chi(d).real for d in range(1, n + 1) if n % d == 0)
        assert a[n] == round(want)


@pytest.mark.parametrize("s", [2, 3, 2.5 + 1j])
@pytest.mark.parametrize("label", ["Q(i)", "Q(sqrt(-3))"])
def test_factorization_consistency(s, label):
    a = dedekind_zeta(s, label)
    b = ideal_count_zeta(s, label, 10 ** 5)
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-12


def test_euler_product_zeta3():
    sieve = bytearray([1]) * 10001
    prod = 1.0
    for p in range(2, 10001):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
            prod /= 1 - p ** -3.0
    assert abs(prod - riemann_zeta(3).value) < 1e-6


def _euler_cyclotomic(s, m, pmax=20000):
    """Independent Euler product: p unramified with residue degree f = ord_m(p)."""
    phi = sum(1 for a in range(1, m + 1) if math.gcd(a, m) == 1)
    sieve = bytearray([1]) * (pmax + 1)
    prod = 1.0
    for p in range(2, pmax + 1):
        if not sieve[p]:
            continue
        sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
        mp = m
        while mp % p == 0:
            mp //= p
        f, x = 1, p % mp if mp > 1 else 1
        while mp > 1 and x != 1:
            x = x * p % mp
            f += 1
        phi_mp = sum(1 for a in range(1, mp + 1) if math.gcd(a, mp) == 1) if mp > 1 else 1
        g = phi_mp // f
        prod /= (1 - p ** (-s * f)) ** g
    return prod


@pytest.mark.parametrize("m", [3, 4, 5, 8, 12])
def test_cyclotomic_primitive_reading_matches_euler_product(m):
    r = cyclotomic_readings(3, m)
    want = _euler_cyclotomic(3.0, m)
    assert abs(r["primitive"].value - want) < 1e-7
    assert abs(r["ideal-norms"].value - want) < 1e-7
    assert abs(dedekind_zeta(3, f"Q(zeta_{m})").value - want) < 1e-7


def test_cyclotomic_rational_prime_reading_differs_at_12():
    r = cyclotomic_readings(3, 12)
    want = _euler_cyclotomic(3.0, 12)
    assert abs(r["rational-primes"].value - want) > 1e-3



@pytest.mark.parametrize("d", [5, -3, -4, 8, -7, 12, 13, -8])
def test_error_estimate_is_a_nonnegative_bound(d):
    chi = kronecker_character(d)
    table = [chi(n) for n in range(abs(d))]
    for s in (0.5, 0.9 + 3j, 2.0, 3.5 - 7j, 1.2 + 18j):
        r = dirichlet_l(s, chi)
        ref = complex(mpmath.dirichlet(s, table))
        assert r.error_estimate >= 0
        assert abs(r.value - ref) <= r.error_estimate + 1e-15 * max(1.0, abs(ref))
    for label in ("Q(sqrt(5))", "Q(sqrt(2))", "Q(sqrt(3))", "Q(sqrt(-7))", "Q(sqrt(-11))"):
        assert dedekind_zeta(3, label).error_estimate >= 0
