import cmath
import math

import pytest
from hypothesis import given, strategies as st

from zetalab.fields import (UnknownFieldError, catalogue_labels, characters_mod, factorize,
                            is_fundamental_discriminant, kronecker_character, kronecker_symbol,
                            make_field)


def test_make_field_goldens():
    q = make_field("Q")
    assert (q.degree_n, q.r1, q.r2, q.abs_discriminant, q.class_number_h,
            q.regulator_R, q.roots_of_unity_w, q.lambda_k) == (1, 1, 0, 1, 1, 1.0, 2, 1.0)
    qi = make_field("Q(i)")
    assert (qi.degree_n, qi.r1, qi.r2, qi.abs_discriminant, qi.roots_of_unity_w) == (2, 0, 1, 4, 4)
    assert qi.lambda_k == 0.25
    q2 = make_field("Q(sqrt(2))")
    assert (q2.r1, q2.r2, q2.abs_discriminant, q2.roots_of_unity_w) == (2, 0, 8, 2)
    assert abs(q2.regulator_R - 0.8813736) < 1e-7
    assert abs(q2.lambda_k - 2 * q2.regulator_R) < 1e-15


def test_aliases_and_unknown():
    assert make_field("Q(√-3)").label == "Q(sqrt(-3))"
    assert make_field(" Q(zeta3) ").label == "Q(zeta_3)"
    with pytest.raises(UnknownFieldError):
        make_field("Q(sqrt(-5))")
    with pytest.raises(KeyError):
        make_field("banana")


@pytest.mark.parametrize("label", catalogue_labels())
def test_catalogue_invariants(label):
    f = make_field(label)
    assert f.r1 + 2 * f.r2 == f.degree_n
    assert f.lambda_k > 0
    assert f.as_dict()["label"] == f.label


def test_characters_goldens():
    assert len(characters_mod(1)) == 1 and characters_mod(1)[0].is_principal
    c4 = characters_mod(4)
    assert len(c4) == 2
    nonpr = [c for c in c4 if not c.is_principal]
    assert len(nonpr) == 1 and nonpr[0](3) == -1
    c5 = characters_mod(5)
    assert len(c5) == 4
    assert any(abs(c(2) - 1j) < 1e-15 for c in c5)


@pytest.mark.parametrize("m", range(1, 21))
def test_orthogonality(m):
    chars = characters_mod(m)
    units = [a for a in range(m) if math.gcd(a, m) == 1] or [0]
    phi = len(units)
    assert len(chars) == phi
    for c1 in chars:
        for c2 in chars:
            # exact in exponent space: sum over roots of unity of k1 - k2
            s = sum(c1(a) * c2(a).conjugate() for a in units) / phi
            want = 1 if c1 == c2 else 0
            assert abs(s - want) < 1e-12


@pytest.mark.parametrize("m", range(1, 21))
def test_closure(m):
    chars = set(characters_mod(m))
    for a in chars:
        for b in chars:
            assert a * b in chars


def test_conjugate_and_primitive():
    for c in characters_mod(12):
        assert (c * c.conj()).is_principal
        p = c.primitive()
        assert p.modulus_m == c.conductor
        for n in range(1, 60):
            if math.gcd(n, 12) == 1:
                assert c(n) == p(n)


def test_kronecker_goldens():
    chi = kronecker_character(-4)
    assert chi(1) == 1 and chi(3) == -1
    assert all(chi(n) == 0 for n in range(0, 40, 2))
    chi5 = kronecker_character(5)
    assert chi5(2) == -1 and chi5(4) == 1


def test_kronecker_rejects_non_fundamental():
    for d in (0, 1, 2, -1, 12 * 4, -12):
        if not is_fundamental_discriminant(d):
            with pytest.raises(ValueError):
                kronecker_character(d)


@given(st.sampled_from([-3, -4, -7, -8, -11, 5, 8, 12, 13]), st.integers(1, 500))
def test_kronecker_matches_legendre(d, p):
    """For odd primes p not dividing d, (d/p) is Euler's criterion."""
    if len(factorize(p)) != 1 or factorize(p).get(p) != 1 or p == 2 or d % p == 0:
        return
    e = pow(d % p, (p - 1) // 2, p)
    want = 1 if e == 1 else -1
    assert kronecker_symbol(d, p) == want
    assert kronecker_character(d)(p) == want


@given(st.integers(1, 10 ** 6))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p ** k for p, k in f.items()) == n
    assert all(len(factorize(p)) == 1 for p in f)


def test_class_number_formula_residues():
    """prod_chi L(1, chi) equals the residue 2^r1 (2pi)^r2 h R / (w sqrt|d|)."""
    from zetalab.lfunctions import dirichlet_l
    for label in catalogue_labels():
        f = make_field(label)
        if f.kind[0] == "Q":
            continue
        if f.kind[0] == "quadratic":
            chars = [kronecker_character(f.kind[1])]
        else:
            chars = [c.primitive() for c in characters_mod(f.kind[1]) if not c.is_principal]
        prod = 1
        for c in chars:
            prod *= dirichlet_l(1, c).value
        assert abs(prod - f.residue_at_one) < 1e-9 * f.residue_at_one, label
