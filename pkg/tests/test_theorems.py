import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from diskspace.errors import (ConstraintViolated, HypothesisViolated, NotHarmonic, OutOfDomain,
                              ResolutionExceeded)
from diskspace.functions import (HarmonicPair, Lacunary, NumericWrapper, PowerSeries, YukawaExp,
                                 constant)
from diskspace.majorants import BlochParams, Majorant
from diskspace.reports import Verdict
from diskspace import theorems as T

Z = PowerSeries([0, 1])
Z2 = PowerSeries([0, 0, 1])
RE_Z = HarmonicPair(PowerSeries([0, 0.5]), PowerSeries([0, 0.5]))
ABS2 = NumericWrapper(sampler=lambda z: np.abs(z) ** 2 + 0j)
# Delta f = 4 f + 4 > 0 far from real zeros is fine, but Re(conj f Delta f) < 0 where f ~ -1
BAD = NumericWrapper(sampler=lambda z: np.exp(2 * z.real) - 1.5 + 0j)


def test_hypothesis_grid_size():
    assert T.hypothesis_grid().size == 448


# --------------------------------------------------------------------- Heinz

def test_heinz_examples():
    assert T.heinz_check(Z).passed
    assert T.heinz_check(YukawaExp(2.0), T.HeinzCoefficients(b=2.0)).passed
    rep = T.heinz_check(ABS2, T.HeinzCoefficients(q=3.0))
    # finite differences near |z| = 1 - 2**-12 carry ~1e-3 error in Delta |z|**2 = 4
    assert rep.verdict is Verdict.FAIL and rep.max_violation == pytest.approx(1.0, abs=1e-3)


def test_heinz_negative_coefficient():
    with pytest.raises(HypothesisViolated):
        T.heinz_check(Z, T.HeinzCoefficients(a=lambda z: np.real(z)))


# --------------------------------------------------------------------- integral means

def test_thm4_anchor():
    rep = T.thm4_verify(Z, r=0.5)
    s = rep.samples[0]
    assert rep.passed and s.lhs == pytest.approx(0.5)
    assert s.rhs == pytest.approx(math.sqrt(4 * 0.25 * 0.7725887222397811), rel=1e-9)


def test_thm4_zero_function_and_yukawa():
    assert T.thm4_verify(constant(0)).passed
    assert T.thm4_verify(YukawaExp(1.0), coeffs=T.HeinzCoefficients(b=1.0), r=0.9).passed


def test_thm4_hypotheses():
    with pytest.raises(HypothesisViolated):
        T.thm4_verify(YukawaExp(1.0), coeffs=T.HeinzCoefficients(b=2.5))
    with pytest.raises(HypothesisViolated):
        T.thm4_verify(BAD, coeffs=T.HeinzCoefficients(b=4.0, q=10.0, sup_b=1.0))
    with pytest.raises(ConstraintViolated):
        T.thm4_verify(Z, params=BlochParams(p=1.5))


def test_weight_integral_against_scipy():
    for r, a, b in [(0.5, 2, 0), (0.9, 2, 2), (0.99, 1, 1)]:
        ref, _ = integrate.quad(lambda t: (1 - t) / ((1 - r * t) ** a
                                                     * (1 - math.log1p(-r * t)) ** b), 0, 1)
        assert T._weight_integral(r, a, b, T.DEFAULT_CONFIG)[0] == pytest.approx(ref, rel=1e-9)


def test_thm4_rhs_grows_like_sqrt_log():
    f = Lacunary(14)
    params, w = BlochParams(p=2.0), Majorant.identity()
    bloch = T.bloch_norm(f, params, w).value
    r = 1 - np.logspace(-1, -4, 10)
    rhs = [T.thm4_rhs(f, params, w, T.ZERO_COEFFS, x, T.circle_mean(f, x, 2.0), bloch)["rhs"]
           for x in r]
    assert T.log_growth_exponent(r, rhs) == pytest.approx(0.5, abs=0.1)


def test_cor4_examples():
    assert T.cor4_verify(constant(0)).passed
    rep = T.cor4_verify(constant(1))
    # the norm includes |f(0)| = 1, so the bracket is 1 + (r p)**2 I(0.5)
    assert rep.passed and rep.samples[0].rhs == pytest.approx(math.sqrt(1 + 0.7725887222397811))
    assert T.cor4_verify(YukawaExp(1.0), lambda_sup=1.0, r=0.5).passed
    with pytest.raises(HypothesisViolated):
        T.cor4_verify(YukawaExp(1.0), lambda_sup=0.5)


def test_sharpness():
    rep = T.sharpness_fit(14)
    assert rep.passed
    assert rep.detail["growth_exponent"] == pytest.approx(0.5, abs=0.1)
    # regression baseline from the Parseval partial sum
    ratio = T.lacunary_m2(14, 0.99) / math.sqrt(math.log(100))
    assert rep.detail["ratio_at_0.99"] == pytest.approx(ratio, rel=1e-12)
    assert rep.detail["ratio_at_0.99"] == pytest.approx(1.0752, abs=1e-4)
    assert T.sharpness_fit(1).verdict is Verdict.INCONCLUSIVE
    with pytest.raises(ResolutionExceeded):
        T.sharpness_fit(8, r_grid=[0.9, 0.999])


def test_monotone_means():
    assert T.monotone_means_verify(Z, 2).passed
    assert T.monotone_means_verify(PowerSeries([1, -1, 0.5j]), 4).passed
    assert T.monotone_means_verify(YukawaExp(1.0), 3).passed
    with pytest.raises(HypothesisViolated):
        T.monotone_means_verify(BAD, 2)


def test_log_weight_bound():
    rep = T.log_weight_bound_verify(constant(2), 2, 0.5)
    assert rep.passed and rep.samples[0].lhs == pytest.approx(rep.samples[0].rhs, rel=1e-9)
    assert T.log_weight_bound_verify(constant(0), 2, 0.5).passed
    rep = T.log_weight_bound_verify(Z, 2, 0.8)
    assert rep.passed and rep.samples[0].lhs < rep.samples[0].rhs


# --------------------------------------------------------------------- subharmonicity

def test_subharmonic_examples():
    assert T.subharmonic_verify(HarmonicPair(PowerSeries([0, 0, 1]), PowerSeries([0, 0, 0, 1]))).passed
    rep = T.subharmonic_verify(Z2)
    assert rep.passed
    assert all(s.lhs == pytest.approx(-16.0) for s in rep.samples)  # lhs is -Delta F
    assert T.subharmonic_verify(YukawaExp(2.0)).passed


def test_subharmonic_numeric_family():
    assert T.subharmonic_verify(ABS2).passed


def test_gradient_decay_examples():
    rep = T.gradient_decay_verify(Z, 1.0)
    assert rep.passed and rep.detail["C6"] == pytest.approx(4 / math.sqrt(3))
    rep = T.gradient_decay_verify(Z2, 1.0)
    assert rep.passed and rep.detail["dirichlet_norm"] == pytest.approx(0.4)
    assert T.gradient_decay_verify(constant(1), 0.5).passed
    with pytest.raises(ConstraintViolated):
        T.gradient_decay_verify(Z, 1.5)


def test_hardy_membership():
    assert T.hardy_membership_estimate(YukawaExp(1.0), 1.0, T.HeinzCoefficients(b=1.0)).passed
    rep = T.hardy_membership_estimate(RE_Z, 0.5, T.HeinzCoefficients(q=1.0))
    assert rep.passed and rep.detail["p"] == 4.0
    assert rep.detail["C7"] > 0
    with pytest.raises(HypothesisViolated):
        T.hardy_membership_estimate(Z, 1.0, T.HeinzCoefficients())
    with pytest.raises(HypothesisViolated):
        T.hardy_membership_estimate(Z, 1.0)


# --------------------------------------------------------------------- characterizations

def test_thm1_examples():
    rep = T.characterization_verify("thm1", Z, s=0, alpha=0.5)
    assert rep.passed and rep.detail["beta_factor"] == pytest.approx(T.beta_function(1, 0.5))
    with pytest.raises(ConstraintViolated):
        T.characterization_verify("thm1", Z, s=0, alpha=1.0)


def test_thm2_thm3_examples():
    assert T.characterization_verify("thm2", constant(1), alpha=1.0).passed
    assert T.characterization_verify("thm3", Z, s=0.5, alpha=1.0).passed
    with pytest.raises(NotHarmonic):
        T.characterization_verify("thm2", YukawaExp(1.0), alpha=1.0)
    with pytest.raises(ConstraintViolated):
        T.characterization_verify("thm3", Z, s=0.0, alpha=1.0)


# --------------------------------------------------------------------- elementary lemmas

def test_power_mean_examples():
    assert T.power_mean_inequality_check(1, 1, 2).passed
    assert T.power_mean_inequality_check(0, 7, 0.3).passed
    assert T.power_mean_inequality_check(3, 5, 0.5).passed
    with pytest.raises(OutOfDomain):
        T.power_mean_inequality_check(-1, 1, 1)


def test_power_mean_random_triples():
    rng = np.random.default_rng(3)
    a, b = rng.uniform(0, 100, (2, 10_000))
    q = rng.uniform(1e-9, 5, 10_000)
    assert T.power_mean_inequality_check(a, b, q).passed


@given(st.floats(0, 100), st.floats(0, 100), st.floats(0.01, 5))
def test_power_mean_property(a, b, q):
    assert T.power_mean_inequality_check(a, b, q).passed


def test_lemma_a_examples():
    assert T.harmonic_gradient_bound_verify(constant(3), 0.1, 0.5).passed
    rep = T.harmonic_gradient_bound_verify(Z, 0, 0.5)
    assert rep.passed and rep.samples[0].rhs == pytest.approx(4.0)
    assert T.harmonic_gradient_bound_verify(RE_Z, 0.2, 0.3).passed
    with pytest.raises(OutOfDomain):
        T.harmonic_gradient_bound_verify(Z, 0.6, 0.5)
    with pytest.raises(NotHarmonic):
        T.harmonic_gradient_bound_verify(YukawaExp(1.0), 0, 0.5)


def test_beta_function():
    assert T.beta_function(1, 1) == pytest.approx(1)
    assert T.beta_function(0.5, 0.5) == pytest.approx(math.pi)
    ref, _ = integrate.quad(lambda t: t ** -0.25 * (1 - t) ** -0.25, 0, 1)
    assert T.beta_function(0.75, 0.75) == pytest.approx(ref, rel=1e-9)
    assert T.beta_function(0.75, 0.75) == pytest.approx(math.gamma(0.75) ** 2 / math.gamma(1.5))
    with pytest.raises(OutOfDomain):
        T.beta_function(0, 1)


@pytest.mark.parametrize("f", [Z, Z2, PowerSeries([1, 2, 3]), Lacunary(5)], ids=str)
def test_analytic_families_satisfy_mean_hypothesis(f):
    pts = T.hypothesis_grid()
    assert np.all(T._re_conj_lap(f, pts) == 0)
