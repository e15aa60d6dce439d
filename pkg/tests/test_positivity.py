import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from zetalab.harmonic import FunctionHandle, gaussian, hermite_h2
from zetalab.positivity import (OrderingError, ParameterDomainError, PCIDViolation,
                                SchwartzBarnerFunction, SingularSystemError, builtin_amplitudes,
                                cramer_solve, j_integral, lemma4_audit, minus_amplitude_build,
                                plus_amplitude_build, plus_sine, plus_sine_with_error,
                                rouche_compare, substitution_residual, trace_minus,
                                trace_positivity_audit, transformed_amplitude_audit,
                                validate_amplitude, weil_trace)

PI = math.pi
FAM = builtin_amplitudes()
A_GRID = np.linspace(0.1, 50, 50)


def _h(f, name="f", decay="exponential"):
    return FunctionHandle(f, parity="none", decay=decay, name=name)


def test_validate_accepts_family():
    for name in ("exp", "gaussian", "lorentz", "minus_default"):
        assert all(FAM[name].pcid_flags.values()), name


def test_validate_rejects_sine():
    with pytest.raises(PCIDViolation) as e:
        validate_amplitude(_h(lambda x: np.sin(x) + 2, "sin+2"))
    assert e.value.flag.startswith("decreasing")
    assert e.value.witness >= 1


def test_validate_rejects_others():
    with pytest.raises(PCIDViolation) as e:
        validate_amplitude(_h(lambda x: 1 / (1 + x), "1/(1+x)", "polynomial"))
    assert e.value.flag == "integrable"
    with pytest.raises(PCIDViolation) as e:
        validate_amplitude(_h(lambda x: np.exp(-x) - 0.5, "shifted"))
    assert e.value.flag == "positive"
    with pytest.raises(PCIDViolation) as e:
        validate_amplitude(_h(lambda x: np.where(x < 2, 2.0, 1.0) * np.exp(-x), "step"))
    assert e.value.flag == "continuous"


def test_plus_sine_goldens():
    e = FAM["exp"]
    assert abs(plus_sine(e, 1) - 0.5) < 1e-10
    assert abs(plus_sine(e, 2) - 0.4) < 1e-10


def test_plus_sine_gaussian_dawson_oracle():
    # int_0^inf e^{-pi x^2} sin(a x) dx = D(a / (2 sqrt pi)) / sqrt(pi)
    for a in (0.3, 1.0, 4.0, 17.0):
        want = special.dawsn(a / (2 * math.sqrt(PI))) / math.sqrt(PI)
        assert abs(plus_sine(FAM["gaussian"], a) - want) < 1e-10
    assert abs(plus_sine(FAM["gaussian"], 1) - 0.1509742697) < 1e-9


def test_plus_sine_lorentz_expi_oracle():
    # int_0^inf sin(ax)/(1+x^2) dx = (e^{-a} Ei(a) - e^{a} Ei(-a)) / 2
    for a in (0.1, 1.0, 5.0):
        want = 0.5 * (math.exp(-a) * special.expi(a) - math.exp(a) * special.expi(-a))
        r = plus_sine_with_error(FAM["lorentz"], a)
        assert abs(r.value - want) < 1e-8


def test_sine_transform_exp_closed_form():
    r = lemma4_audit(FAM["exp"], A_GRID)
    assert r["verdict"] == "PASS"
    assert r["argmin"] == 50.0
    assert abs(r["min"] - 50 / (1 + 50 ** 2)) < 1e-10


@pytest.mark.parametrize("name", ["exp", "gaussian", "lorentz", "minus_default"])
def test_sine_positivity_suite(name):
    grid = np.linspace(0.1, 10, 50) if name == "lorentz" else A_GRID
    assert lemma4_audit(FAM[name], grid)["verdict"] == "PASS"


def test_trace_minus_goldens():
    G = FAM["gaussian"]
    assert trace_minus("Q", G, 0.75 + 2j) > 0
    assert trace_minus("Q", G, 1 + 0.5j) > 0
    assert abs(trace_minus("Q", G, 0.75 + 2j) - 0.0030162213592) < 1e-9
    assert abs(trace_minus("Q", G, complex(0.75, 1e-6))) < 1e-8


def test_trace_minus_against_direct_quadrature():
    from scipy import integrate as sint
    u, v = 0.7, 1.0

    def f(t):
        th = sum(math.exp(-PI * m * m * t * t) for m in range(1, 12))
        return (t ** u + t ** (1 - u)) * math.sin(v * math.log(t)) * th

    want, _ = sint.quad(f, 1, 8, limit=200, epsabs=1e-14)
    assert abs(trace_minus("Q", FAM["gaussian"], complex(u, v)) - want) < 1e-10


def test_trace_minus_domain():
    with pytest.raises(ParameterDomainError):
        trace_minus("Q", FAM["gaussian"], 0.4 + 2j)
    with pytest.raises(ParameterDomainError):
        trace_minus("Q(i)", FAM["gaussian"], 0.7 + 2j)


def test_trace_grid_reports():
    rows = trace_positivity_audit(FAM["gaussian"])
    assert len(rows) == 24
    assert {r["verdict"] for r in rows} <= {"PASS", "FAIL"}


def test_transformed_amplitude():
    r = transformed_amplitude_audit(FAM["gaussian"], 0.7)
    assert r["decreasing"]
    for name in ("exp", "lorentz"):
        assert transformed_amplitude_audit(FAM[name], 0.55)["decreasing"]
    # a wide Gaussian is PCID but its transform rises near r = 0
    wide = validate_amplitude(FunctionHandle(lambda x: np.exp(-x * x / 25), name="wide"))
    r = transformed_amplitude_audit(wide, 0.7)
    assert not r["decreasing"] and 0 < r["first_increase"] < 0.1


def test_cramer_goldens():
    c = cramer_solve(1, 3, 0.7 + 2j)
    assert abs(c.p1 - 1) < 1e-14 and abs(c.p2 + 1) < 1e-14
    assert abs(c.determinant + 2 * c.fundamental_form) < 1e-14
    c = cramer_solve(2, 6, 0.3 + 4j)
    assert abs(c.p1 - 1) < 1e-14 and abs(c.p2 + 1) < 1e-14
    with pytest.raises(SingularSystemError):
        cramer_solve(1, 3, 0.5 + 5j)
    with pytest.raises(ValueError):
        cramer_solve(3, 1, 0.7 + 2j)
    with pytest.raises(ValueError):
        cramer_solve(2, 2, 0.7 + 2j)


@given(st.floats(0.1, 10), st.floats(1e-3, 10), st.floats(-3, 3), st.floats(0.1, 20))
def test_cramer_properties(a1, da, u, v):
    a2 = a1 + da
    if abs(2 * u - 1) < 1e-3:
        return
    c = cramer_solve(a1, a2, complex(u, v))
    assert abs(c.determinant + v * c.fundamental_form) < 1e-9 * max(1, v * v)
    assert max(c.residuals) < 1e-9 * max(1, a2)
    assert abs(c.p1 + c.p2) < 1e-9 * max(1, abs(c.p1))
    assert abs(c.p1 - (a2 - a1) / v) < 1e-9 * max(1, abs(c.p1))


@pytest.mark.parametrize("s,r", [(0.7 + 3j, 2.0), (0.6 + 1j, 0.5), (0.7 + 3j, 3.0)])
def test_j_substitution(s, r):
    assert substitution_residual(hermite_h2(), s, r) < 1e-7


def test_j_identity_substitution():
    assert substitution_residual(hermite_h2(), 0.7 + 3j, 1.0) < 1e-15
    assert abs(j_integral(hermite_h2(), 0.7 + 3j).value - 0.19755705742542) < 1e-9
    with pytest.raises(ValueError):
        j_integral(gaussian(), 0.7 + 3j)


def test_plus_build():
    p = plus_amplitude_build()
    assert p.handle.at(2.0) == -math.exp(-4 * PI)
    assert abs(p.outer_at_seam + math.exp(-PI)) < 1e-16
    # the inner series sums to -x^4 e^{-pi^2 x^2}; its terms reach e^{pi^2} ~ 2e4,
    # so cancellation costs about 2e4 * eps in absolute terms
    assert abs(p.inner_at_seam + math.exp(-PI * PI)) < 1e-11
    assert abs(p.jump - abs(math.exp(-PI) - math.exp(-PI * PI))) < 1e-11
    xs = np.linspace(0.05, 0.95, 19)
    assert np.max(np.abs(p.handle(xs) + xs ** 4 * np.exp(-PI * PI * xs * xs))) < 1e-11
    assert not p.report()["identity_holds"]


def test_rouche():
    r = rouche_compare([2.0, 3.0, 0.5 + 10j])
    rows = r["points"]
    assert rows[0]["ratio"] < 1 and rows[1]["ratio"] < 1
    assert rows[1]["gamma_A+"][1] == 0 and rows[1]["gamma_G"][1] == 0
    assert [0.5, 10.0] in r["violations"]
    # shifted kernel at s is the standard kernel at s - 1
    assert abs(rows[1]["ratio_shifted"] - rows[0]["ratio"]) < 1e-12


def test_minus_build():
    m = minus_amplitude_build()
    h2 = hermite_h2()
    assert abs(h2.at(0.0) + PI) < 1e-15
    assert abs(h2.at(1 / (2 * math.sqrt(PI)))) < 1e-15
    assert abs(h2.at(1.0) - PI * math.exp(-PI) * (4 * PI - 1)) < 1e-15
    assert abs(h2.at(1.0) - 1.5702565834) < 1e-9
    assert m.seam_gap < 1e-12 and all(m.amplitude.pcid_flags.values())
    with pytest.raises(OrderingError):
        minus_amplitude_build(0.2, 1.6)
    with pytest.raises(OrderingError):
        minus_amplitude_build(0.9, 1.5)


def test_weil_convolution_against_quadrature():
    from scipy import integrate as sint
    F = SchwartzBarnerFunction((1.0, 0.5, -0.25), 0.7)
    Gf = SchwartzBarnerFunction((0.3, 0.0, 1.0), 1.3)
    C = F.convolve(Gf)
    for x in (-1.0, 0.0, 0.4, 2.0):
        want, _ = sint.quad(lambda y: F(y) * Gf(x - y), -20, 20, epsabs=1e-14)
        assert abs(C(x) - want) < 1e-12


def test_weil_transform_against_quadrature():
    from scipy import integrate as sint
    F = SchwartzBarnerFunction((1.0, -0.5, 0.2), 0.9)
    s = 0.5 + 3j
    re, _ = sint.quad(lambda x: F(x) * math.cos(3 * x), -30, 30, epsabs=1e-14)
    im, _ = sint.quad(lambda x: F(x) * math.sin(3 * x), -30, 30, epsabs=1e-14)
    assert abs(F.transform(s) - complex(re, im)) < 1e-12


def test_weil_trace():
    F0 = SchwartzBarnerFunction((1.0,), 1.0)
    C = F0.convolve(F0.conj())
    assert abs(C.coefficients[0] - math.sqrt(PI / 2)) < 1e-14 and C.gaussian_K == 0.5
    w = weil_trace(F0, [14.134725])
    assert abs(w - 2 * PI * math.exp(-14.134725 ** 2 / 2)) < 1e-50
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert weil_trace(F0, []) == 0
    with pytest.warns(RuntimeWarning):
        weil_trace(F0, [])


@given(st.lists(st.floats(-2, 2), min_size=1, max_size=3),
       st.lists(st.floats(-2, 2), min_size=1, max_size=3), st.floats(-2, 2))
def test_weil_linear_and_real(c1, c2, alpha):
    zeros = [1.5, 3.2, 6.1]
    F1 = SchwartzBarnerFunction(tuple(c1), 0.5)
    F2 = SchwartzBarnerFunction(tuple(c2), 0.5)
    a = F1.convolve(F2.conj())
    b = SchwartzBarnerFunction(tuple(alpha * x for x in c1), 0.5).convolve(F2.conj())
    for t in zeros:
        assert abs(b.transform(0.5 + 1j * t) - alpha * a.transform(0.5 + 1j * t)) < 1e-12 * (1 + abs(a.transform(0.5 + 1j * t)))
    assert abs(weil_trace(F1, zeros).imag) < 1e-8
