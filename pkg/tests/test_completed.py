import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from zetalab.completed import (CriticalGrid, ZeroRecord, completed_zeta, fe_residual,
                               fundamental_form, hardy_pair, hardy_value, polar_part,
                               scan_zeros, winding_audit)
from zetalab.numerics import PoleError

STRIP_FIELDS = ["Q", "Q(i)", "Q(sqrt(-3))", "Q(sqrt(5))", "Q(sqrt(2))", "Q(sqrt(-7))"]


def _mp_completed_q(s):
    s = mpmath.mpc(s)
    return complex(mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s))


def _mp_completed_qi(s):
    s = mpmath.mpc(s)
    L = mpmath.dirichlet(s, [0, 1, 0, -1])
    return complex((2 / mpmath.pi) ** s / 2 ** s * mpmath.gamma(s) * mpmath.zeta(s) * L)


def test_completed_goldens():
    assert abs(completed_zeta(2, "Q") - 0.5235987756) < 1e-10
    assert abs(completed_zeta(complex(0.3, 5), "Q") - completed_zeta(complex(0.7, -5), "Q")) < 1e-8
    # sqrt(4)^2 (2 pi)^-2 Gamma(2) zeta_{Q(i)}(2) = zeta_{Q(i)}(2) / pi^2
    assert abs(completed_zeta(2, "Q(i)") - 0.1526609324) < 1e-9
    assert abs(completed_zeta(2, "Q(i)") - 1.50670301 / math.pi ** 2) < 1e-8


@given(st.floats(-2, 4), st.floats(-30, 30))
def test_completed_vs_mpmath(u, v):
    s = complex(u, v)
    if min(abs(s), abs(s - 1)) < 1e-2 or (v == 0 and min(abs(u - k) for k in range(-4, 1)) < 1e-2):
        return
    for got, want in ((completed_zeta(s, "Q"), _mp_completed_q(s)),
                      (completed_zeta(s, "Q(i)"), _mp_completed_qi(s))):
        assert abs(got - want) <= 1e-9 * max(1e-3, abs(want))


def test_fe_residual_goldens():
    assert fe_residual(complex(0.4, 3), "Q") < 1e-8
    assert fe_residual(complex(0.5, 7), "Q(i)") < 1e-7
    assert fe_residual(0.5, "Q") < 1e-15


@pytest.mark.parametrize("label", STRIP_FIELDS)
def test_fe_on_strip_grid(label):
    worst = 0.0
    for i in range(10):
        for j in range(10):
            s = complex(-0.5 + 2 * i / 9, 1 + 24 * j / 9)
            worst = max(worst, fe_residual(s, label))
    assert worst < 1e-8


@pytest.mark.parametrize("label", ["Q(zeta_5)", "Q(zeta_8)", "Q(zeta_12)"])
def test_fe_degree_four(label):
    for s in (complex(0.3, 4), complex(0.8, 11)):
        assert fe_residual(s, label) < 1e-7 * max(1, abs(completed_zeta(s, label)))


def test_polar_part():
    assert polar_part(2, "Q") == 0.5
    assert polar_part(-1, "Q(i)") == 0.125
    for v in (1.0, 7.5, 30.0):
        assert polar_part(complex(0.5, v), "Q(sqrt(5))").imag == 0
    with pytest.raises(PoleError):
        polar_part(1, "Q")


def test_fundamental_form():
    assert fundamental_form(complex(0.5, 10)) == 0
    assert fundamental_form(complex(3, 2)) == 10
    assert fundamental_form(0.75) == 0


@given(st.floats(-5, 5), st.floats(-50, 50))
def test_fundamental_form_symmetries(u, v):
    s = complex(u, v)
    tol = 1e-12 * (1 + abs(v) * (1 + abs(u)))
    assert abs(fundamental_form(s) - fundamental_form(1 - s)) <= tol
    assert abs(fundamental_form(s) + fundamental_form(s.conjugate())) <= tol


def test_hardy():
    assert hardy_value(0.1, "Q") < 0
    assert abs(hardy_pair(5.0, "Q(i)")[1]) < 1e-9
    for t in (2.0, 13.0, 27.5):
        assert abs(hardy_value(t, "Q") - _mp_completed_q(complex(0.5, t)).real) < 1e-10


def test_scan_goldens():
    ts = [z.ordinate_t for z in scan_zeros("Q", 10, 30, 0.05)]
    assert len(ts) == 3
    for a, b in zip(ts, (14.134725, 21.022040, 25.010858)):
        assert abs(a - b) < 1e-4
    assert scan_zeros("Q", 1, 5, 0.1) == []
    ti = [z.ordinate_t for z in scan_zeros("Q(i)", 5, 8, 0.02)]
    assert any(abs(t - 6.0209) < 1e-4 for t in ti)


def test_scan_vs_mpmath_zeros():
    ts = [z.ordinate_t for z in scan_zeros("Q", 10, 50, 0.1)]
    want = [float(mpmath.zetazero(k).imag) for k in range(1, 11)]
    assert len(ts) == 10
    assert max(abs(a - b) for a, b in zip(ts, want)) < 1e-5


def test_zero_records_on_critical_line():
    for z in scan_zeros("Q(i)", 3, 12, 0.05):
        assert fundamental_form(complex(0.5, z.ordinate_t)) == 0
        assert z.bracket[1] - z.bracket[0] <= z.refined_to
        assert z.sign_pair[0] * z.sign_pair[1] < 0


def test_zero_record_validation():
    with pytest.raises(ValueError):
        ZeroRecord(5.0, (4.0, 4.5), 1e-6, "Q", (1, -1))
    with pytest.raises(ValueError):
        ZeroRecord(5.0, (4.9, 5.1), 1e-6, "Q", (1, -1))
    with pytest.raises(ValueError):
        ZeroRecord(5.0, (5.0 - 1e-7, 5.0 + 1e-7), 1e-6, "Q", (1, 1))


def test_winding_goldens():
    assert winding_audit("Q", CriticalGrid((0.6, 0.9), (10, 20))) == 0
    assert winding_audit("Q", CriticalGrid((0.1, 0.9), (13, 15))) == 1
    assert winding_audit("Q", CriticalGrid((2, 3), (1, 2))) == 0


def test_winding_matches_scan():
    n = winding_audit("Q", CriticalGrid((0.0, 1.0), (10, 30)))
    assert n == len(scan_zeros("Q", 10, 30, 0.05)) == 3


def test_grid_validation():
    with pytest.raises(ValueError):
        CriticalGrid((1, 0), (10, 20))
    with pytest.raises(ValueError):
        CriticalGrid((0, 1), (10, 20), re_step=0)
