"""Acceptance battery.

Each criterion is one test that times itself and records a line of the form
``PASS criterion N (1.23 s, limit 5 s): ...``.  The lines are printed in the
pytest terminal summary, and also when the module is run directly::

    python3 tests/test_acceptance.py
"""
import math
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from diskspace import compop, suite, theorems as T
from diskspace.functions import HarmonicPair, Lacunary, PowerSeries, YukawaExp, constant, construct, neg_log_series
from diskspace.majorants import Majorant, scaling_law_check, validate_majorant
from diskspace.norms import FINITE
from diskspace.quadrature import circle_mean, green_identity_residual
from diskspace.reports import Verdict

pytestmark = pytest.mark.slow

RESULTS: list[str] = []


@contextmanager
def criterion(number: int, limit: float, summary: str):
    """Time the block and record a PASS/FAIL line, also enforcing the runtime limit."""
    t0 = time.perf_counter()
    notes: list[str] = []
    ok = False
    try:
        yield notes
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < limit
        tag = "PASS" if ok and within else "FAIL"
        extra = "; ".join(notes)
        if ok and not within:
            extra = f"over the time limit; {extra}"
        RESULTS.append(f"{tag} criterion {number:2d} ({dt:6.2f} s, limit {limit:g} s): "
                       f"{summary}{' | ' + extra if extra else ''}")
    assert dt < limit, f"criterion {number} took {dt:.2f} s (limit {limit} s)"


def _pair(h, g):
    return HarmonicPair(PowerSeries(h), PowerSeries(g))


def test_criterion_01_parseval():
    rng = np.random.default_rng(2024)
    with criterion(1, 5, "Parseval agreement for 20 random polynomials") as notes:
        worst = 0.0
        for _ in range(20):
            deg = int(rng.integers(0, 21))
            a = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            f = PowerSeries(a)
            n = np.arange(deg + 1)
            for r in (0.1, 0.5, 0.9, 0.99):
                exact = math.sqrt(float(np.sum(np.abs(a) ** 2 * r ** (2 * n))))
                worst = max(worst, abs(circle_mean(f, r, 2.0) - exact) / exact)
        notes.append(f"max relative error {worst:.2e}")
        assert worst <= 1e-10


def test_criterion_02_green_identity():
    fields = {"|z|^2": construct({"family": "numeric", "expr": "abs(z)**2"}),
              "|z|^4": construct({"family": "numeric", "expr": "abs(z)**4"}),
              "Re z^3": _pair([0, 0, 0, 0.5], [0, 0, 0, 0.5]),
              "yukawa(1)": YukawaExp(1.0)}
    with criterion(2, 10, "Green identity residuals") as notes:
        worst = max(green_identity_residual(g, r) for g in fields.values() for r in (0.3, 0.6, 0.9))
        notes.append(f"max residual {worst:.2e}")
        assert worst < 1e-7


def test_criterion_03_monotone_means():
    rng = np.random.default_rng(3)
    funcs = [PowerSeries([0, 1]), PowerSeries([0, 0, 1]), PowerSeries([1, -2, 0.5]),
             PowerSeries(rng.normal(size=12) + 1j * rng.normal(size=12)), Lacunary(8),
             neg_log_series(), YukawaExp(1.0)]
    with criterion(3, 30, "M_p^p nondecreasing on 50 radii") as notes:
        bad = [(type(f).__name__, p) for f in funcs for p in (2.0, 3.0, 4.0)
               if not T.monotone_means_verify(f, p).passed]
        notes.append(f"{len(funcs) * 3 - len(bad)}/{len(funcs) * 3} cases")
        assert not bad, bad


def test_criterion_04_integral_mean_bound():
    z = PowerSeries([0, 1])
    cases = [("z", z, T.ZERO_COEFFS), ("yukawa(1)", YukawaExp(1.0), T.HeinzCoefficients(b=1.0)),
             ("lacunary(10)", Lacunary(10), T.ZERO_COEFFS)]
    with criterion(4, 60, "integral-mean bound on the three-function battery") as notes:
        bad = []
        for name, f, coeffs in cases:
            for r in (0.5, 0.9, 0.99):
                rep = T.thm4_verify(f, coeffs=coeffs, r=r)
                if not rep.passed:
                    bad.append((name, r, rep.message))
        anchor = T.thm4_verify(z, r=0.5)
        rhs = anchor.worst.rhs
        notes.append(f"anchor RHS(z, 0.5) = {rhs:.4f}")
        assert not bad, bad
        assert rhs == pytest.approx(math.sqrt(0.7725887222397811), abs=1e-4) and rhs >= 0.5


def test_criterion_05_sharpness():
    with criterion(5, 10, "lacunary(14) ratio band and growth exponent") as notes:
        rep = T.sharpness_fit(14, r_grid=1.0 - np.logspace(-1, -4, 31))
        expo = rep.detail["growth_exponent"]
        ratio = np.asarray(rep.detail["ratio"])
        notes.append(f"max/min {ratio.max() / ratio.min():.3f}, exponent {expo:.3f}")
        assert rep.passed and abs(expo - 0.5) <= 0.1


def test_criterion_06_composition_criterion():
    ident = compop.SelfMap.identity()
    contraction = compop.SelfMap(PowerSeries([0, 0.9]))
    with criterion(6, 30, "composition criterion integral") as notes:
        assert not compop.criterion_integral(ident, 1, 0).converged
        assert compop.criterion_integral(ident, 1, 1).converged
        half = compop.criterion_integral(ident, 0.5, 0)
        assert half.converged and half.value == pytest.approx(1.0, abs=1e-6)
        for ab in ((1, 0), (1, 1), (0.5, 0)):
            assert compop.criterion_integral(contraction, *ab).converged
        notes.append(f"identity at (1/2, 0) = {half.value:.10f}")


def test_criterion_07_majorant_laws():
    rng = np.random.default_rng(7)
    grid = np.sort(rng.uniform(1e-6, 5.0, 10_000))
    nu = rng.uniform(1e-6, 1.0, 10_000)
    t = rng.uniform(1e-6, 5.0, 10_000)
    majorants = [Majorant.identity(), Majorant.power(0.5), Majorant.power(1.0),
                 Majorant.log_smoothed(), Majorant.table([(0.5, 1.0), (2.0, 2.5), (4.0, 3.0)])]
    with criterion(7, 5, "majorant laws and the power-mean inequality") as notes:
        for w in majorants:
            assert validate_majorant(w, grid).passed, w
            assert scaling_law_check(w, nu, t).passed, w
        a, b = rng.uniform(0, 10, (2, 10_000))
        q = rng.uniform(0.05, 5.0, 10_000)
        assert T.power_mean_inequality_check(a, b, q).passed
        notes.append(f"{len(majorants)} majorants, 10^4 points and triples")


# Thm1 ground truth: polynomials and constants have finite norm for every alpha > 0,
# the logarithm's derivative 1/(1-z) needs alpha >= 1.
THM1_FUNCS = {"z": (PowerSeries([0, 1]), lambda a: True),
              "z^2": (PowerSeries([0, 0, 1]), lambda a: True),
              "-log(1-z)": (neg_log_series(), lambda a: a >= 1),
              "constant": (constant(2.0), lambda a: True)}
THM1_PAIRS = ((0.0, 0.5), (0.5, 0.5), (0.0, 1.0), (0.5, 1.2))
HARMONIC = {"c": _pair([1.5], [0]), "z": _pair([0, 1], [0]),
            "Re z": _pair([0, 0.5], [0, 0.5]), "z + conj(z)/2": _pair([0, 1], [0, 0.5])}


def test_criterion_08_characterizations():
    with criterion(8, 120, "both-direction agreement of the characterizations") as notes:
        bad = []
        for name, (f, truth) in THM1_FUNCS.items():
            for s, alpha in THM1_PAIRS:
                rep = T.characterization_verify("thm1", f, s=s, alpha=alpha,
                                                check_constraints=False)
                member = rep.detail["bloch_verdict"] == FINITE
                if not rep.passed or member != truth(alpha):
                    bad.append(f"thm1 {name} (s={s}, alpha={alpha}): {rep.message}")
        for name, f in HARMONIC.items():
            for mode, kw in (("thm2", {"alpha": 1.0}), ("thm3", {"s": 0.5, "alpha": 1.0})):
                rep = T.characterization_verify(mode, f, **kw)
                if not rep.passed:
                    bad.append(f"{mode} {name}: {rep.message}")
        notes.append(f"{16 + 2 * len(HARMONIC) - len(bad)}/{16 + 2 * len(HARMONIC)} agree")
        notes.extend(bad)
        assert not bad, bad


def test_criterion_09_gradient_decay():
    funcs = {"z": PowerSeries([0, 1]), "z^2": PowerSeries([0, 0, 1]), "Re z": _pair([0, 0.5], [0, 0.5])}
    with criterion(9, 30, "explicit-constant gradient decay") as notes:
        n = 0
        for name, f in funcs.items():
            for gamma in (0.5, 1.0):
                rep = T.gradient_decay_verify(f, gamma)
                assert rep.passed, (name, gamma, rep.message)
                n = len(rep.samples)
        notes.append(f"{n} grid points per case")
        assert n == 448


def test_criterion_10_negative_controls():
    with criterion(10, 30, "negative controls are rejected without errors") as notes:
        rows = suite.run_suite("controls")
        notes.extend(f"{r.check}: {r.verdict}" for r in rows)
        assert len(rows) == 3
        assert all(r.verdict == str(Verdict.FAIL) for r in rows)
        assert rows[1].message == "Unbounded"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
