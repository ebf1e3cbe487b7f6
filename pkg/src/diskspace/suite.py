"""Named batteries of checks behind ``diskspace verify --suite``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import compop, theorems as T
from .errors import DiskSpaceError, HypothesisViolated
from .functions import Lacunary, PowerSeries, YukawaExp, construct, neg_log_series
from .majorants import BlochParams, Majorant, scaling_law_check, validate_majorant
from .norms import SupSearchConfig, DEFAULT_SEARCH, little_bloch_limit
from .reports import Report, TheoremReport, Verdict

__all__ = ["SuiteResult", "builtin_suite", "run_suite", "SUITES", "ERROR"]

ERROR = "Error"
SUITES = ("all", "controls")


@dataclass(frozen=True)
class SuiteResult:
    check: str
    verdict: str
    max_violation: float
    worst_sample: str
    message: str
    # controls are expected to produce a non-Pass verdict
    expected: str = "Pass"

    @property
    def as_expected(self) -> bool:
        return self.verdict == self.expected


def _z():
    return PowerSeries([0, 1])


def _majorant_laws(seed: int) -> Report:
    rng = np.random.default_rng(seed)
    grid = np.sort(rng.uniform(1e-6, 5.0, 10_000))
    nu = rng.uniform(1e-6, 1.0, 10_000)
    t = rng.uniform(1e-6, 5.0, 10_000)
    for w in (Majorant.identity(), Majorant.power(0.5), Majorant.log_smoothed()):
        for rep in (validate_majorant(w, grid), scaling_law_check(w, nu, t)):
            if not rep.passed:
                return Report("majorant_laws", rep.verdict, rep.value, f"{w}: {rep.message}")
    return Report("majorant_laws", Verdict.PASS, None, "3 built-ins on 10^4 points")


def _power_mean(seed: int) -> Report:
    rng = np.random.default_rng(seed)
    a, b = rng.uniform(0, 10, (2, 10_000))
    q = rng.uniform(0.05, 5.0, 10_000)
    return T.power_mean_inequality_check(a, b, q)


def builtin_suite(name: str = "all", seed: int = 0,
                  search: SupSearchConfig = DEFAULT_SEARCH) -> list[tuple[str, Callable, str]]:
    """``(check id, thunk, expected verdict)`` triples for a named suite."""
    name = name.lower()
    z = _z()
    yuk = YukawaExp(1.0)
    b_one = T.HeinzCoefficients(b=1.0)
    if name == "controls":
        return [
            ("heinz:|z|^2,q=3", lambda: T.heinz_check(
                construct({"family": "numeric", "expr": "abs(z)**2"}),
                T.HeinzCoefficients(q=3.0)), "Fail"),
            ("thm8:identity,(1,0)", lambda: compop.boundedness_verdict(
                compop.SelfMap.identity(), 1.0, 0.0), "Fail"),
            ("little_bloch:-log(1-z)", lambda: little_bloch_limit(
                neg_log_series(), BlochParams(math.inf, 1.0, 0.0), search=search), "Fail"),
        ]
    if name != "all":
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    checks = [
        ("majorant_laws", lambda: _majorant_laws(seed), "Pass"),
        ("power_mean", lambda: _power_mean(seed), "Pass"),
        ("heinz:z", lambda: T.heinz_check(z), "Pass"),
        ("heinz:yukawa(1)", lambda: T.heinz_check(yuk, b_one), "Pass"),
    ]
    for r in (0.5, 0.9, 0.99):
        checks += [
            (f"thm4:z,r={r}", lambda r=r: T.thm4_verify(z, r=r, search=search), "Pass"),
            (f"thm4:yukawa(1),r={r}",
             lambda r=r: T.thm4_verify(yuk, coeffs=b_one, r=r, search=search), "Pass"),
            (f"thm4:lacunary(10),r={r}",
             lambda r=r: T.thm4_verify(Lacunary(10), r=r, search=search), "Pass"),
        ]
    checks += [
        ("cor4:yukawa(1)", lambda: T.cor4_verify(yuk, lambda_sup=1.0, search=search), "Pass"),
        ("sharpness:lacunary(14)", lambda: T.sharpness_fit(14), "Pass"),
        ("monotone_means:z^2+z,p=3", lambda: T.monotone_means_verify(PowerSeries([0, 1, 1]), 3.0), "Pass"),
        ("monotone_means:yukawa(1),p=2", lambda: T.monotone_means_verify(yuk, 2.0), "Pass"),
        ("log_weight_bound:z", lambda: T.log_weight_bound_verify(z, 2.0, 0.5), "Pass"),
        ("subharmonic:yukawa(1)", lambda: T.subharmonic_verify(yuk), "Pass"),
        ("gradient_decay:z,gamma=1", lambda: T.gradient_decay_verify(z, 1.0, search=search), "Pass"),
        ("thm1:z,(1/2,1/2)", lambda: T.characterization_verify("thm1", z, s=0.5, alpha=0.5,
                                                                search=search), "Pass"),
        ("thm2:z,alpha=1", lambda: T.characterization_verify("thm2", z, alpha=1.0,
                                                             search=search), "Pass"),
        ("thm3:z,s=1/2", lambda: T.characterization_verify("thm3", z, s=0.5, alpha=1.0,
                                                           search=search), "Pass"),
        ("lemma_a:z", lambda: T.harmonic_gradient_bound_verify(z, 0.3 + 0.2j, 0.4), "Pass"),
        ("thm8:0.9z,(1,0)", lambda: compop.boundedness_verdict(
            compop.SelfMap(PowerSeries([0, 0.9])), 1.0, 0.0), "Pass"),
        ("thm8:identity,(1,1)", lambda: compop.boundedness_verdict(
            compop.SelfMap.identity(), 1.0, 1.0), "Pass"),
    ]
    return checks


def _summarise(check, rep, expected) -> SuiteResult:
    if isinstance(rep, TheoremReport):
        worst = "" if rep.worst is None else str(rep.worst.point)
        viol = rep.max_violation
        return SuiteResult(check, str(rep.verdict), float(viol), worst, rep.message, expected)
    msg = rep.message if rep.value is None else f"{rep.message} (value {rep.value:.6g})"
    return SuiteResult(check, str(rep.verdict), math.nan, "", msg.strip(), expected)


def run_suite(name: str = "all", seed: int = 0,
              search: SupSearchConfig = DEFAULT_SEARCH) -> list[SuiteResult]:
    """Run every check in order.

    A violated hypothesis becomes an Inconclusive row; other library errors
    become ``Error`` rows so one bad check does not hide the rest.
    """
    out = []
    for check, thunk, expected in builtin_suite(name, seed, search):
        try:
            out.append(_summarise(check, thunk(), expected))
        except HypothesisViolated as exc:
            out.append(SuiteResult(check, str(Verdict.INCONCLUSIVE), math.nan, "",
                                   f"hypothesis violated: {exc}", expected))
        except DiskSpaceError as exc:
            out.append(SuiteResult(check, ERROR, math.nan, "",
                                   f"{type(exc).__name__}: {exc}", expected))
    return out
