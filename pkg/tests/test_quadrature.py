import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from diskspace.errors import MalformedSpec, OutOfDomain
from diskspace.functions import NumericWrapper, PowerSeries, YukawaExp, constant
from diskspace.quadrature import (QuadratureConfig, circle_mean, disk_integral,
                                  green_identity_residual, radial_improper_integral)


def test_circle_mean_examples():
    assert circle_mean(constant(2 - 1j), 0.5, 3) == pytest.approx(abs(2 - 1j))
    assert circle_mean(PowerSeries([0, 1]), 0.37, 2) == pytest.approx(0.37)
    assert circle_mean(PowerSeries([0, 1, 1]), 0.5, 2) == pytest.approx(0.559017, abs=1e-6)


def test_circle_mean_quasi_norm_and_domain():
    assert circle_mean(PowerSeries([0, 1]), 0.5, 0.5) == pytest.approx(0.5)
    with pytest.raises(OutOfDomain):
        circle_mean(PowerSeries([0, 1]), 1.0, 2)


@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False), min_size=1, max_size=12),
       st.floats(0, 0.99))
def test_parseval(coeffs, r):
    a = np.array(coeffs)
    exact = math.sqrt(float(np.sum(np.abs(a) ** 2 * r ** (2 * np.arange(a.size)))))
    assert circle_mean(PowerSeries(a), r, 2) == pytest.approx(exact, rel=1e-10, abs=1e-14)


@given(st.floats(0.05, 0.95), st.floats(0.3, 6), st.floats(0.3, 6))
def test_mean_monotone_in_p(r, p1, p2):
    f = PowerSeries([1, -0.5, 2j, 0.25])
    lo, hi = sorted((p1, p2))
    assert circle_mean(f, r, lo) <= circle_mean(f, r, hi) * (1 + 1e-12)


def test_disk_integral_examples():
    assert disk_integral(lambda z: np.ones(np.shape(z)), 1.0) == pytest.approx(1.0, abs=1e-10)
    r = 0.6
    with np.errstate(divide="ignore"):
        v = disk_integral(lambda z: np.log(r / np.abs(z)), r)
    assert v == pytest.approx(r * r / 2, abs=1e-9)
    assert disk_integral(lambda z: 1 - np.abs(z), 1.0) == pytest.approx(1 / 3, abs=1e-10)


def test_disk_integral_additive_over_annuli():
    g = lambda z: np.abs(z) ** 3 + np.real(z) ** 2
    inner = disk_integral(g, 0.5)
    whole = disk_integral(g, 0.9)
    # annulus part by scipy over 0.5 < rho < 0.9 (theta integral done in closed form)
    ann, _ = integrate.quad(lambda p: 2 * p * (p ** 3 + p * p / 2), 0.5, 0.9)
    assert whole - inner == pytest.approx(ann, abs=1e-10)


@pytest.mark.parametrize("g", [NumericWrapper(sampler=lambda z: np.abs(z) ** 2 + 0j),
                               NumericWrapper(sampler=lambda z: np.abs(z) ** 4 + 0j),
                               PowerSeries([0, 0, 0, 1]), YukawaExp(1.0)], ids=str)
@pytest.mark.parametrize("r", [0.3, 0.6, 0.9])
def test_green_identity(g, r):
    assert green_identity_residual(g, r) < 1e-7


def test_green_identity_values():
    g = NumericWrapper(sampler=lambda z: np.abs(z) ** 4 + 0j)
    assert green_identity_residual(g, 0.7) < 1e-8


def test_improper_examples():
    assert radial_improper_integral(lambda t: np.ones_like(t)).value == pytest.approx(1.0)
    res = radial_improper_integral(lambda t: (1 - t) ** -0.5)
    assert res.converged and res.value == pytest.approx(2.0, abs=1e-10)
    assert not radial_improper_integral(lambda t: 1 / (1 - t)).converged


@pytest.mark.parametrize("a", [0.25, 0.5, 0.75, 1.0, 1.25])
def test_improper_power_family(a):
    res = radial_improper_integral(lambda t: (1 - t) ** -a)
    assert res.converged == (a < 1)
    if a < 1:
        assert res.value == pytest.approx(1 / (1 - a), rel=1e-8)


@pytest.mark.parametrize("r", [0.5, 0.9, 0.99])
def test_improper_against_scipy(r):
    h = lambda t: (1 - t) / (1 - r * t) ** 2
    ref, _ = integrate.quad(h, 0, 1, epsabs=1e-13)
    res = radial_improper_integral(h)
    assert res.converged and res.value == pytest.approx(ref, abs=1e-10)
    assert res.error_estimate <= 1e-10


def test_improper_log_weight_converges_slowly():
    # substitution u = 1 - log(1-t) turns this into int_1^inf u^-2 du = 1
    res = radial_improper_integral(lambda t: 1 / ((1 - t) * (1 - np.log1p(-t)) ** 2))
    assert res.converged and res.value == pytest.approx(1.0, abs=0.05)


def test_config_validation():
    with pytest.raises(MalformedSpec):
        QuadratureConfig(angular_nodes=15)
    with pytest.raises(MalformedSpec):
        QuadratureConfig(abs_tol=0)
