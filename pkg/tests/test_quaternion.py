import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sint

from zetalab.quaternion import (Quaternion, haar_module_quat, herbrand_density,
                                inversion_invariance_mc, left_matrix, left_regular_det_check,
                                quat_inverse, quat_mul, random_quaternions, shell_volume)

PI = math.pi
coord = st.floats(-10, 10)
quats = st.builds(Quaternion, coord, coord, coord, coord)


def _close(a, b, tol=1e-12):
    return np.max(np.abs(a.as_array() - b.as_array())) <= tol * max(1.0, b.norm)


def test_units():
    i, j, k = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
    assert i * j == k and j * k == i and k * i == j
    assert j * i == Quaternion(0, 0, 0, -1)
    assert i * i == Quaternion(-1, 0, 0, 0)
    assert Quaternion(1, 1, 0, 0) * Quaternion(1, -1, 0, 0) == Quaternion(2, 0, 0, 0)
    assert quat_inverse(Quaternion(1, 1, 0, 0)) == Quaternion(0.5, -0.5, 0, 0)
    with pytest.raises(ZeroDivisionError):
        quat_inverse(Quaternion(0))


def test_haar_goldens():
    assert haar_module_quat(Quaternion(2)) == 16
    assert haar_module_quat(Quaternion(1, 1, 1, 1)) == 16
    assert haar_module_quat(Quaternion(0)) == 0
    assert abs(np.linalg.det(left_matrix(Quaternion(1, 1, 0, 0))) - 4) < 1e-14
    with pytest.raises(ValueError):
        left_regular_det_check(Quaternion(0))


def test_det_seeded_samples():
    rows = random_quaternions(1000, seed=2024)
    worst = max(left_regular_det_check(Quaternion.from_array(r)) for r in rows)
    assert worst < 1e-10


@given(quats, quats)
def test_norm_multiplicative(a, b):
    assert abs((a * b).norm2 - a.norm2 * b.norm2) <= 1e-12 * max(1.0, a.norm2 * b.norm2)
    assert abs(haar_module_quat(a * b) - haar_module_quat(a) * haar_module_quat(b)) <= \
        1e-11 * max(1.0, haar_module_quat(a) * haar_module_quat(b))


@given(quats, quats, quats)
def test_associative(a, b, c):
    assert _close((a * b) * c, a * (b * c), 1e-12 * max(1.0, a.norm * b.norm * c.norm))


@given(quats, quats)
def test_left_matrix_is_multiplication(a, b):
    assert np.allclose(left_matrix(a) @ b.as_array(), (a * b).as_array(), atol=1e-10)
    assert np.allclose(left_matrix(a) @ left_matrix(b), left_matrix(a * b), atol=1e-9)


@given(quats)
def test_inverse(h):
    if h.norm2 < 1e-6:
        return
    assert _close(h * quat_inverse(h), Quaternion(1), 1e-12)
    assert _close(quat_inverse(h) * h, Quaternion(1), 1e-12)


def _radial_oracle(g, M, N):
    """2 pi^2 int g(r) dr / r over both shells."""
    a, _ = sint.quad(lambda r: g(r) / r, M, N, epsabs=1e-13)
    b, _ = sint.quad(lambda r: g(r) / r, 1 / N, 1 / M, epsabs=1e-13)
    return 2 * PI ** 2 * (a + b)


def _herbrand_oracle(M, N):
    def inner(r):
        v, _ = sint.quad(lambda t: math.sin(t) ** 2 / (1 - 2 * r * r * math.cos(2 * t) + r ** 4) ** 2,
                         0, PI, epsabs=1e-13)
        return v / r
    a, _ = sint.quad(inner, M, N, epsabs=1e-12)
    b, _ = sint.quad(inner, 1 / N, 1 / M, epsabs=1e-12)
    return 4 * PI * (a + b)


INTEGRANDS = {
    "one": (lambda h: np.ones(len(h)), lambda M, N: _radial_oracle(lambda r: 1.0, M, N)),
    "norm2": (lambda h: np.sum(h * h, axis=1), lambda M, N: _radial_oracle(lambda r: r * r, M, N)),
    "herbrand": (herbrand_density, _herbrand_oracle),
}


@pytest.mark.parametrize("name", list(INTEGRANDS))
def test_mc_inversion_within_3_sigma(name):
    f, oracle = INTEGRANDS[name]
    rep = inversion_invariance_mc(f, (2.0, 4.0), samples=200000, seed=1)
    assert rep.within_3sigma, rep
    want = oracle(2.0, 4.0)
    se = math.hypot(rep.lhs_se, rep.rhs_se)
    assert abs(rep.lhs - want) < 4 * max(rep.lhs_se, 1e-12 * want)
    assert abs(rep.rhs - want) < 4 * max(rep.rhs_se, 1e-12 * want)
    assert se > 0 or name == "one"


def test_mc_constant_sides_agree_exactly():
    # f = 1 is inversion invariant pointwise, so the paired sides coincide
    rep = inversion_invariance_mc(lambda h: np.ones(len(h)), (2.0, 4.0), samples=20000, seed=3)
    assert rep.lhs == rep.rhs and rep.z == 0


def test_mc_deterministic_and_thread_independent():
    f = INTEGRANDS["herbrand"][0]
    a = inversion_invariance_mc(f, (1.5, 3.0), samples=50000, seed=9, workers=1)
    b = inversion_invariance_mc(f, (1.5, 3.0), samples=50000, seed=9, workers=4)
    assert a == b
    c = inversion_invariance_mc(f, (1.5, 3.0), samples=50000, seed=10)
    assert c.lhs != a.lhs


def test_mc_annulus_validation():
    with pytest.raises(ValueError):
        inversion_invariance_mc(lambda h: np.ones(len(h)), (0.5, 2.0))
    with pytest.raises(ValueError):
        inversion_invariance_mc(lambda h: np.ones(len(h)), (3.0, 2.0))


def test_shell_volume_against_sampling():
    assert abs(shell_volume(0, 1) - PI ** 2 / 2) < 1e-15
    rng = np.random.default_rng(0)
    pts = rng.uniform(-2, 2, (400000, 4))
    r = np.linalg.norm(pts, axis=1)
    frac = np.mean((r >= 1) & (r <= 2))
    assert abs(frac * 4 ** 4 - shell_volume(1, 2)) < 0.02 * shell_volume(1, 2)
