import math

import numpy as np
import pytest

from diskspace.errors import ConstraintViolated, NotHarmonic, OutOfDomain
from diskspace.functions import (HarmonicPair, PowerSeries, YukawaExp, constant,
                                 geometric_series, neg_log_series)
from diskspace.majorants import BlochParams, Majorant
from diskspace.norms import (FINITE, UNBOUNDED, bloch_norm, classify_profile, dirichlet_norm,
                             hardy_norm, limit_zero_verdict, lipschitz_quotient_sup,
                             little_bloch_limit, mean_oscillation, oscillation_profile)
from diskspace.quadrature import boundary_schedule
from diskspace.reports import Verdict

Z = PowerSeries([0, 1])
RE_Z = HarmonicPair(PowerSeries([0, 0.5]), PowerSeries([0, 0.5]))


def test_hardy_examples():
    assert hardy_norm(constant(3j), 2).value == pytest.approx(3)
    nv = hardy_norm(Z, 2)
    assert nv.finite and nv.value == pytest.approx(1.0, abs=1e-4)
    geo = hardy_norm(geometric_series(60), 2)
    assert geo.verdict == UNBOUNDED and 0.3 < geo.growth_exponent < 0.7


def test_bloch_examples():
    assert bloch_norm(constant(-2)).value == pytest.approx(2)
    nv = bloch_norm(Z, BlochParams(math.inf, 1, 0), Majorant.identity())
    assert nv.value == pytest.approx(1.0) and nv.attained_at[0] == 0
    assert bloch_norm(neg_log_series()).value == pytest.approx(1.0, abs=1e-3)


def test_bloch_finite_p_is_radial():
    assert bloch_norm(Z, BlochParams(2, 1, 0)).value == pytest.approx(1.0)


def _classical(f, alpha):
    r = np.concatenate([np.linspace(0, 0.999, 3000), boundary_schedule(14)])
    th = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    z = (r[:, None] * np.exp(1j * th)).ravel()
    return abs(f(0)) + np.max((1 - np.abs(z)) ** alpha * np.abs(f.wirtinger(z)[0]))


@pytest.mark.parametrize("f", [PowerSeries([1, 2, -1j]), PowerSeries([0, 0, 0, 1]),
                               neg_log_series()], ids=["quad", "cube", "neglog"])
def test_bloch_matches_classical_alpha_bloch(f):
    assert bloch_norm(f, BlochParams(math.inf, 1, 0)).value == pytest.approx(_classical(f, 1), rel=1e-4)


def test_bloch_cube_closed_form():
    # sup (1 - r) 3 r**2 at r = 2/3
    assert bloch_norm(PowerSeries([0, 0, 0, 1])).value == pytest.approx(4 / 9, rel=1e-9)


def test_bloch_monotone_in_alpha():
    f = PowerSeries([0.5, 1, 0.3, -0.2j])
    vals = [bloch_norm(f, BlochParams(math.inf, a, 0)).value for a in (0.5, 1, 1.5)]
    assert vals[0] >= vals[1] >= vals[2]


@pytest.mark.parametrize("c", [2, -3, 1j])
@pytest.mark.parametrize("f", [PowerSeries([0.3, 1, 0.5]), RE_Z, YukawaExp(1.0)],
                         ids=["poly", "re_z", "yukawa"])
def test_homogeneity(f, c):
    g = f.scaled(c)
    assert bloch_norm(g).value == pytest.approx(abs(c) * bloch_norm(f).value, rel=1e-9)
    assert hardy_norm(g, 2).value == pytest.approx(abs(c) * hardy_norm(f, 2).value, rel=1e-9)
    d1, d2 = dirichlet_norm(f, 1, 1), dirichlet_norm(g, 1, 1)
    assert d2.value == pytest.approx(abs(c) * d1.value, rel=1e-9)
    assert lipschitz_quotient_sup(g, s=0.5, alpha=0.5).value == pytest.approx(
        abs(c) * lipschitz_quotient_sup(f, s=0.5, alpha=0.5).value, rel=1e-9)


def test_little_bloch_examples():
    assert little_bloch_limit(Z).verdict is Verdict.PASS
    assert little_bloch_limit(constant(4)).verdict is Verdict.PASS
    rep = little_bloch_limit(neg_log_series())
    assert rep.verdict is Verdict.FAIL and rep.value == pytest.approx(1.0, abs=0.01)


def test_dirichlet_examples():
    assert dirichlet_norm(constant(2), 1, 2).value == pytest.approx(2)
    assert dirichlet_norm(Z, 1, 2).value == pytest.approx(1 / 3, abs=1e-10)
    assert dirichlet_norm(PowerSeries([0, 0, 1]), 1, 2).value == pytest.approx(0.4, abs=1e-10)


def test_dirichlet_divergence_reported():
    nv = dirichlet_norm(HarmonicPair(PowerSeries([0, 1]), PowerSeries([0])), 0.5, 2)
    assert nv.finite and nv.value == pytest.approx(2 * (1 / 1.5 - 1 / 2.5), abs=1e-9)


def test_lipschitz_examples():
    assert lipschitz_quotient_sup(constant(5), s=0, alpha=0.5).value == 0
    assert lipschitz_quotient_sup(Z, s=0, alpha=0.5).value == pytest.approx(1.0, abs=1e-6)
    assert lipschitz_quotient_sup(Z, s=0.5, alpha=0.5).value == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ConstraintViolated):
        lipschitz_quotient_sup(Z, s=0, alpha=1)


def test_lipschitz_dominates_diagonal():
    f = PowerSeries([0, 1, 0.5, 0.25j])
    lq = lipschitz_quotient_sup(f, s=0.5, alpha=1.0).value
    r = np.concatenate([[0.0], boundary_schedule(14)])
    z = (r[:, None] * np.exp(1j * np.linspace(0, 2 * np.pi, 64, endpoint=False))).ravel()
    diag = np.max(f.jacobian_norms(z).op * (1 - np.abs(z)))
    assert lq >= diag - 1e-9


def test_mean_oscillation_examples():
    assert mean_oscillation(constant(1j), 0.2, 0.3) == pytest.approx(0, abs=1e-14)
    assert mean_oscillation(Z, 0, 0.5) == pytest.approx(1 / 3, abs=1e-8)
    assert mean_oscillation(RE_Z, 0, 0.5) == pytest.approx(4 * 0.5 / (3 * math.pi), abs=1e-6)
    with pytest.raises(OutOfDomain):
        mean_oscillation(Z, 0.5, 0.6)


@pytest.mark.parametrize("z,r", [(0, 0.9), (0.3 + 0.3j, 0.5), (-0.8, 0.15)])
def test_mean_oscillation_crude_bound(z, r):
    f = PowerSeries([1, -2, 0.5j, 1])
    th = np.linspace(0, 2 * np.pi, 512)
    rim = np.max(np.abs(f(z + r * np.exp(1j * th))))
    assert mean_oscillation(f, z, r) <= 2 * rim


def test_oscillation_profile_examples():
    assert oscillation_profile(constant(2)).value == pytest.approx(0, abs=1e-12)
    assert oscillation_profile(Z).value == pytest.approx(2 / 3, abs=1e-3)
    assert oscillation_profile(RE_Z).value == pytest.approx(4 / (3 * math.pi), abs=1e-3)
    with pytest.raises(NotHarmonic):
        oscillation_profile(YukawaExp(1.0))
    with pytest.raises(ConstraintViolated):
        oscillation_profile(Z, alpha=2.0)


def test_classify_profile_rules():
    r = boundary_schedule(10)
    assert classify_profile(r, 1 - 2.0 ** -np.arange(1, 11))[0] == FINITE
    assert classify_profile(r, np.log(1 / (1 - r)))[0] == UNBOUNDED


def test_limit_zero_rules():
    r = boundary_schedule(10)
    assert limit_zero_verdict(r, 1 - r)[0] is Verdict.PASS
    assert limit_zero_verdict(r, np.ones(10))[0] is Verdict.FAIL
    assert limit_zero_verdict(r[:2], np.ones(2))[0] is Verdict.INCONCLUSIVE
