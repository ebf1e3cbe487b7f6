"""Littlewood-Paley g-function and the composition-operator boundedness test."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import BatteryUnavailable, MalformedSpec, OutOfDomain
from .functions import DiskFunction, GapSeries, PowerSeries
from .majorants import eta
from .norms import FINITE, UNBOUNDED, VALUE_CAP, NormValue
from .quadrature import (DEFAULT_CONFIG, IntegralResult, QuadratureConfig,
                         radial_improper_integral)
from .reports import Report, Verdict
from .theorems import hypothesis_grid

__all__ = ["SelfMap", "g_function", "g_function_mean_square", "criterion_integral",
           "adapted_battery", "boundedness_verdict", "BATTERY_TERMS"]

# 2**13 is the top exponent, so the series tracks its limit up to r = 1 - 2**-12
BATTERY_TERMS = 14
_BATTERY_PARAMS = ((1.0, 0.0), (1.0, 1.0), (0.5, 0.0))
_MAX_ANGLES = 2 ** 12
_CHUNK_POINTS = 2 ** 20


@dataclass(frozen=True, eq=False)
class SelfMap:
    """An analytic map of the disk into itself.

    ``range_margin`` is ``sup |phi|`` over the default sample grid; it must
    stay below 1.
    """

    phi: DiskFunction
    range_margin: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.phi, DiskFunction):
            raise MalformedSpec("a self-map needs a DiskFunction")
        if not self.phi.is_analytic:
            raise MalformedSpec("a self-map must be analytic")
        grid = hypothesis_grid()
        sup = float(np.max(np.abs(self.phi(grid))))
        if not sup < 1.0:
            raise OutOfDomain(f"sup |phi| = {sup:.6g} on the sample grid, not a self-map")
        object.__setattr__(self, "range_margin", sup)

    @classmethod
    def identity(cls) -> "SelfMap":
        return cls(PowerSeries([0, 1]))

    def __call__(self, z):
        return self.phi(z)

    def derivative(self, z):
        return self.phi.wirtinger(z)[0]


def _unit(zeta) -> complex:
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) > 1e-12:
        raise OutOfDomain(f"|zeta| = {abs(zeta)} is not 1")
    return zeta


def _depths(f, config):
    """Schedule depth and cap matching the resolvable range of ``f``."""
    if not f.truncated or not f.degree:
        return config.schedule_depth, 32
    k = int(math.floor(-math.log2(max(1.0 - f.resolvable_radius, 2.0 ** -48))))
    k = max(4, k)
    return k, k


def _as_norm(res: IntegralResult) -> NormValue:
    prof = tuple(enumerate(np.abs(np.asarray(res.panel_sums, dtype=complex)).tolist()))
    if res.converged:
        v = max(0.0, float(res.value))
        err = res.error_estimate / (2.0 * math.sqrt(v)) if v > 0 else math.sqrt(res.error_estimate)
        return NormValue(math.sqrt(v), (), FINITE, res.decay_exponent, prof, err)
    return NormValue(min(VALUE_CAP, math.sqrt(max(0.0, float(res.value)))), (), UNBOUNDED,
                     res.decay_exponent, prof, math.inf)


def g_function(f: DiskFunction, zeta, config: QuadratureConfig = DEFAULT_CONFIG) -> NormValue:
    """``g(f)(zeta) = (int_0^1 |f'(r zeta)|**2 (1 - r) dr) ** 1/2``."""
    if not f.is_analytic:
        raise MalformedSpec("g_function needs an analytic function")
    zeta = _unit(zeta)
    depth, cap = _depths(f, config)

    def h(t):
        t = np.asarray(t, dtype=float)
        d = np.asarray(f.wirtinger(t * zeta)[0])
        return np.abs(d) ** 2 * (1.0 - t)

    return _as_norm(radial_improper_integral(h, config, depth=depth, max_depth=cap))


def _mean_over_angles(fn, t, n_angles):
    """``mean_theta fn(t e^{i theta})`` per radius, chunked to bound memory."""
    unit = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    step = max(1, _CHUNK_POINTS // n_angles)
    out = np.empty(t.size)
    for i in range(0, t.size, step):
        z = t[i:i + step, None] * unit[None, :]
        out[i:i + step] = np.mean(fn(z), axis=1)
    return out


def g_function_mean_square(f: DiskFunction, phi: SelfMap | None = None,
                           config: QuadratureConfig = DEFAULT_CONFIG,
                           n_angles: int | None = None) -> IntegralResult:
    """``(1/2pi) int g(f o phi)(e^{i theta})**2 d theta`` (``phi`` defaults to the identity).

    For polynomial inputs the angular trapezoid rule is exact: ``|p|**2``
    averages correctly on ``n > deg p`` equispaced nodes.
    """
    if not f.is_analytic:
        raise MalformedSpec("g_function needs an analytic function")
    depth, cap = _depths(f, config)
    dphi = phi.phi.degree if phi is not None else 1
    if n_angles is None:
        if f.degree and dphi:
            n_angles = int(2 ** math.ceil(math.log2(max(16, f.degree * dphi + 1))))
        else:
            n_angles = config.angular_nodes

    def integrand(z):
        if phi is None:
            return np.abs(f.wirtinger(z)[0]) ** 2
        w = phi(z)
        return np.abs(f.wirtinger(w)[0] * phi.derivative(z)) ** 2

    def h(t):
        t = np.asarray(t, dtype=float)
        return _mean_over_angles(integrand, t, n_angles) * (1.0 - t)

    return radial_improper_integral(h, config, depth=depth, max_depth=cap)


def _check_ab(alpha, beta):
    if not (alpha > 0) or beta > alpha:
        raise MalformedSpec(f"need alpha > 0 and beta <= alpha, got alpha={alpha}, beta={beta}")


def criterion_integral(phi: SelfMap, alpha: float, beta: float,
                       config: QuadratureConfig = DEFAULT_CONFIG,
                       n_angles: int = 16) -> IntegralResult:
    """``(1/2pi) int int |phi'|**2 (1 - r) / eta(|phi|; 2 alpha, 2 beta) dr d theta``.

    The angular rule doubles until two consecutive values agree to
    ``abs_tol`` or both report divergence.
    """
    _check_ab(alpha, beta)
    if not isinstance(phi, SelfMap):
        phi = SelfMap(phi)

    def integrand(z):
        w = np.abs(phi(z))
        if np.any(w >= 1.0):
            raise OutOfDomain("phi leaves the disk at a quadrature node")
        return np.abs(phi.derivative(z)) ** 2 / eta(w, 2.0 * alpha, 2.0 * beta)

    def at(n):
        def h(t):
            t = np.asarray(t, dtype=float)
            return _mean_over_angles(integrand, t, n) * (1.0 - t)
        return radial_improper_integral(h, config)

    n = max(16, int(n_angles))
    prev = at(n)
    while n < _MAX_ANGLES:
        n *= 2
        cur = at(n)
        if not (cur.converged or prev.converged):
            return cur
        change = abs(cur.value - prev.value)
        if cur.converged and prev.converged and change <= config.abs_tol * max(1.0, abs(cur.value)):
            return cur
        prev = cur
    # the angular rule never settled: keep the last value with a wider error
    return replace(prev, error_estimate=prev.error_estimate + change)


def adapted_battery(alpha: float, beta: float, n_terms: int = BATTERY_TERMS) -> list[DiskFunction]:
    """``z`` together with ``sum_k c_k z**(2**k)`` whose derivative mimics the weight.

    With ``c_k = 2**(k (alpha - 1)) (1 + k log 2)**-beta`` one has
    ``|f'(r)|**2 ~ d**(-2 alpha) log(e/d)**(-2 beta)`` up to constants
    for ``d = 1 - r >= 2**-(n_terms - 2)``.
    """
    _check_ab(alpha, beta)
    if not any(math.isclose(alpha, a) and math.isclose(beta, b) for a, b in _BATTERY_PARAMS):
        raise BatteryUnavailable(
            f"no precomputed battery for alpha={alpha}, beta={beta}; "
            f"available: {', '.join(f'({a:g}, {b:g})' for a, b in _BATTERY_PARAMS)}")
    k = np.arange(n_terms, dtype=float)
    c = 2.0 ** (k * (alpha - 1.0)) * (1.0 + k * math.log(2.0)) ** (-beta)
    return [PowerSeries([0, 1]), GapSeries(c)]


def boundedness_verdict(phi: SelfMap, alpha: float, beta: float,
                        config: QuadratureConfig = DEFAULT_CONFIG,
                        cross_check: bool = True) -> Report:
    """Bounded iff the criterion integral converges.

    The cross-check sums ``||g(f_k o phi)||_2**2`` over the adapted battery
    and compares finiteness with the criterion.  Disagreement downgrades the
    verdict to Inconclusive.
    """
    if not isinstance(phi, SelfMap):
        phi = SelfMap(phi)
    crit = criterion_integral(phi, alpha, beta, config)
    bounded = crit.converged
    detail = {"criterion": crit.verdict, "criterion_value": float(crit.value),
              "criterion_error": float(crit.error_estimate),
              "decay_exponent": float(crit.decay_exponent),
              "range_margin": phi.range_margin}
    verdict = Verdict.PASS if bounded else Verdict.FAIL
    message = "Bounded" if bounded else "Unbounded"
    if cross_check:
        battery = adapted_battery(alpha, beta)
        parts = [g_function_mean_square(f, phi, config) for f in battery]
        finite = all(p.converged for p in parts)
        detail["battery"] = [{"function": type(f).__name__, "verdict": p.verdict,
                              "value": float(p.value)} for f, p in zip(battery, parts)]
        detail["battery_finite"] = finite
        detail["agreement"] = finite == bounded
        if finite != bounded:
            verdict = Verdict.INCONCLUSIVE
            message += " (battery disagrees)"
    return Report("thm8", verdict, float(crit.value) if bounded else None, message, detail)

