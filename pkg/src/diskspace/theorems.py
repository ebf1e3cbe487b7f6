"""Executable checks of the inequalities and equivalences for disk function spaces.

Every check returns a :class:`~diskspace.reports.TheoremReport` whose samples
record ``(point, lhs, rhs)``.  Inequality checks pass when
``lhs <= rhs + tol * (1 + |rhs|)`` at every sample.  A failed hypothesis
raises :class:`~diskspace.errors.HypothesisViolated` instead of producing a
verdict, so a check can never "pass" on a function it does not cover.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (ConstraintViolated, DerivativeUnavailable, DivergentDirichletNorm,
                     HypothesisViolated, MalformedSpec, NotHarmonic, OutOfDomain,
                     ResolutionExceeded)
from .functions import _second_partials
from .majorants import BlochParams, Majorant, eta, parse_majorant
from .norms import (DEFAULT_SEARCH, SupSearchConfig, _Field, bloch_norm,
                    boundary_quotient_profile, classify_profile, dirichlet_norm,
                    lipschitz_quotient_sup, little_bloch_limit, limit_zero_verdict,
                    oscillation_profile, FINITE)
from .quadrature import (DEFAULT_CONFIG, QuadratureConfig, boundary_schedule, circle_mean,
                         disk_integral, radial_improper_integral)
from .reports import Report, Sample, TheoremReport, Verdict, report_from_samples

__all__ = [
    "HeinzCoefficients", "hypothesis_grid", "heinz_check", "thm4_verify", "thm4_rhs",
    "cor4_verify", "sharpness_fit", "monotone_means_verify", "log_weight_bound_verify",
    "subharmonic_verify", "gradient_decay_verify", "hardy_membership_estimate",
    "characterization_verify", "power_mean_inequality_check",
    "harmonic_gradient_bound_verify", "beta_function", "log_growth_exponent",
]

INEQ_TOL = 1e-8


# --------------------------------------------------------------------- shared pieces

def hypothesis_grid(n_angles: int = 32) -> np.ndarray:
    """Default 448-point sample set: 14 radii ``{0, 1/4} U {1 - 2**-k}`` x 32 angles."""
    radii = np.concatenate([[0.0, 0.25], boundary_schedule(12)])
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()


def _samples(samples, f=None, order: int = 2):
    """Explicit samples, or the default grid.

    Third-order checks on families without exact derivatives default to
    radii <= 3/4: nested differencing loses about ``h**-3`` in round-off and
    the step shrinks with the distance to the circle.
    """
    if samples is None:
        pts = hypothesis_grid()
        if f is not None and order >= 3 and not f.has_exact_derivatives:
            pts = pts[np.abs(pts) <= 0.75 + 1e-12]
        return pts
    pts = np.asarray(samples, dtype=complex).ravel()
    if pts.size and np.max(np.abs(pts)) >= 1.0:
        raise OutOfDomain("sample points must lie in the open unit disk")
    return pts


@dataclass(frozen=True)
class HeinzCoefficients:
    """Nonnegative fields ``a, b, q`` of ``|Delta f| <= a ||D_f|| + b |f| + q``.

    Each field is a constant or a vectorised callable.  ``sup_*`` default to
    the constant itself, or to the maximum over the hypothesis grid.
    """

    a: object = 0.0
    b: object = 0.0
    q: object = 0.0
    sup_a: float | None = None
    sup_b: float | None = None
    sup_q: float | None = None

    def field(self, name: str, z):
        v = getattr(self, name)
        z = np.asarray(z, dtype=complex)
        if callable(v):
            return np.asarray(v(z), dtype=float) * np.ones(z.shape)
        return np.full(z.shape, float(v))

    def fields(self, z):
        out = tuple(self.field(n, z) for n in "abq")
        if any(np.any(v < 0) for v in out):
            raise HypothesisViolated("Heinz coefficients must be nonnegative")
        return out

    def sup(self, name: str) -> float:
        given = getattr(self, "sup_" + name)
        if given is not None:
            return float(given)
        v = getattr(self, name)
        if not callable(v):
            return float(v)
        return float(np.max(self.field(name, hypothesis_grid())))

    def sups(self):
        return self.sup("a"), self.sup("b"), self.sup("q")


ZERO_COEFFS = HeinzCoefficients()


def _re_conj_lap(f, z):
    return np.real(np.conj(f(z)) * f.laplacian(z))


def _require_re_conj_lap(f, pts, name):
    v = np.atleast_1d(_re_conj_lap(f, pts))
    scale = 1e-10 * (1.0 + np.abs(np.atleast_1d(f(pts))) ** 2)
    if np.any(v < -scale):
        i = int(np.argmin(v + scale))
        raise HypothesisViolated(f"{name}: Re(conj(f) Delta f) < 0 at z={complex(pts[i]):.4g}")


def _lem9_quantity(f, z):
    try:
        lz, lzb = f.laplacian_wirtinger(z)
    except NotImplementedError:
        raise DerivativeUnavailable("third derivatives are not available for this family") from None
    fz, fzb = f.wirtinger(z)
    return np.real(lz * np.conj(fz) + lzb * np.conj(fzb))


def _lem9_slack(f, pts):
    if f.has_exact_derivatives:
        return 1e-10
    fz, fzb = f.wirtinger(pts)
    return 1e-4 * (1.0 + np.abs(np.atleast_1d(fz)) ** 2 + np.abs(np.atleast_1d(fzb)) ** 2)


def _require_lem9(f, pts, name):
    v = np.atleast_1d(_lem9_quantity(f, pts))
    if np.any(v < -_lem9_slack(f, pts)):
        i = int(np.argmin(v))
        raise HypothesisViolated(
            f"{name}: Re[(Delta f)_z conj(f_z) + (Delta f)_zbar conj(f_zbar)] < 0 at "
            f"z={complex(pts[i]):.4g}")


def _check_p(p, name):
    p = float(p)
    if not (2.0 <= p < math.inf):
        raise ConstraintViolated(f"{name} needs p in [2, inf), got {p}")
    return p


def beta_function(x: float, y: float) -> float:
    """``B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)`` through log-gamma."""
    if not (x > 0 and y > 0):
        raise OutOfDomain(f"Beta function needs x, y > 0, got ({x}, {y})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def log_growth_exponent(r, values) -> float:
    """Exponent ``e`` in ``values**2 ~ A * L**(2e) + B`` with ``L = log(1/(1-r))``.

    The constant ``B`` absorbs the bounded part, which a plain log-log fit
    would mistake for slower growth.
    """
    L = -np.log1p(-np.asarray(r, dtype=float))
    y = np.asarray(values, dtype=float) ** 2
    if L.size < 3:
        return math.nan

    def resid(e):
        X = np.vstack([L ** (2 * e), np.ones_like(L)]).T
        sol, *_ = np.linalg.lstsq(X, y, rcond=None)
        return float(np.sum((X @ sol - y) ** 2) / np.sum(y ** 2))

    res = minimize_scalar(resid, bounds=(0.01, 3.0), method="bounded", options={"xatol": 1e-8})
    return float(res.x)


# --------------------------------------------------------------------- Heinz class

def heinz_check(f, coeffs: HeinzCoefficients = ZERO_COEFFS, samples=None,
                tol: float = 1e-9) -> TheoremReport:
    """``|Delta f| <= a ||D_f|| + b |f| + q`` at every sample."""
    pts = _samples(samples)
    a, b, q = coeffs.fields(pts)
    lhs = np.abs(np.atleast_1d(f.laplacian(pts)))
    rhs = (a * np.atleast_1d(f.jacobian_norms(pts).op) + b * np.abs(np.atleast_1d(f(pts))) + q)
    s = [Sample(complex(z), float(l), float(r)) for z, l, r in zip(pts, lhs, rhs)]
    return report_from_samples("heinz", s, tol)


# --------------------------------------------------------------------- integral-mean bounds

def _weight_integral(r, alpha, beta, config):
    """``int_0^1 (1-t) / (d(rt)**alpha log(e/d(rt))**beta) dt``."""
    def h(t):
        return (1.0 - t) / eta(r * np.asarray(t), alpha, beta)
    res = radial_improper_integral(h, config)
    return res.value, res.error_estimate


def _bloch_norm_or_raise(f, params, w, search, config, name):
    nb = bloch_norm(f, params, w, search, config)
    if nb.verdict != FINITE:
        raise HypothesisViolated(f"{name}: Bloch-type norm appears unbounded "
                                 f"(growth exponent {nb.growth_exponent:.3g})")
    return nb.value


def thm4_rhs(f, params: BlochParams, w: Majorant, coeffs: HeinzCoefficients, r: float,
             lhs: float, bloch: float, config: QuadratureConfig = DEFAULT_CONFIG) -> dict:
    """Right-hand side of the Heinz-class integral-mean bound, term by term."""
    p = params.p
    sup_a, sup_b, sup_q = coeffs.sups()
    w1 = float(w(1.0))
    i2, e2 = _weight_integral(r, 2 * params.alpha, 2 * params.beta, config)
    i1, e1 = _weight_integral(r, params.alpha, params.beta, config)
    f0 = abs(complex(f(0.0)))
    terms = {
        "weight": (r * p * bloch / w1) ** 2 * i2,
        "a_term": p * r * r * bloch * sup_a / w1 * lhs * i1,
        "f0": f0 * f0,
        "q_term": p * r * r / 4.0 * sup_q * lhs,
    }
    prefactor = 1.0 / (1.0 - p * r * r / 4.0 * sup_b)
    bracket = sum(terms.values())
    return {"rhs": prefactor * math.sqrt(bracket), "prefactor": prefactor, "bracket": bracket,
            "I2": i2, "I1": i1, "quad_error": e1 + e2, **terms}


def thm4_verify(f, params: BlochParams = BlochParams(p=2.0), w=None,
                coeffs: HeinzCoefficients = ZERO_COEFFS, r: float = 0.5,
                search: SupSearchConfig = DEFAULT_SEARCH,
                config: QuadratureConfig = DEFAULT_CONFIG, tol: float = INEQ_TOL,
                samples=None) -> TheoremReport:
    """``M_p(r, f)`` against the displayed bound for Heinz-class functions.

    The right-hand side contains ``M_p(r, f)`` itself (through the ``a`` and
    ``q`` terms); the computed left-hand side is substituted there.
    """
    p = _check_p(params.p, "thm4")
    w = parse_majorant(w)
    if not (0.0 <= r < 1.0):
        raise OutOfDomain(f"r must lie in [0, 1), got {r}")
    sup_a, sup_b, sup_q = coeffs.sups()
    if not sup_b < 4.0 / p:
        raise HypothesisViolated(f"thm4: sup b = {sup_b} must be < 4/p = {4.0 / p}")
    if not (math.isfinite(sup_a) and math.isfinite(sup_q)):
        raise HypothesisViolated("thm4: sup a and sup q must be finite")
    pts = _samples(samples)
    heinz = heinz_check(f, coeffs, pts)
    if not heinz.passed:
        raise HypothesisViolated(f"thm4: f is not in the Heinz class for these coefficients "
                                 f"(worst excess {heinz.max_violation:.3g})")
    _require_re_conj_lap(f, pts, "thm4")
    bloch = _bloch_norm_or_raise(f, params, w, search, config, "thm4")
    lhs = circle_mean(f, r, p, config)
    parts = thm4_rhs(f, params, w, coeffs, r, lhs, bloch, config)
    detail = dict(parts, bloch_norm=bloch)
    return report_from_samples("thm4", [Sample(r, lhs, parts["rhs"])], tol, detail=detail)


def _yukawa_lambda_ok(f, pts, lam_sup):
    """Check ``Delta f = lambda f`` with ``0 <= lambda <= lam_sup`` at the samples."""
    lap = np.atleast_1d(f.laplacian(pts))
    val = np.atleast_1d(f(pts))
    big = np.abs(val) > 1e-12
    if np.any(np.abs(lap[~big]) > 1e-9):
        return False
    lam = lap[big] / val[big]
    tol = 1e-8 * (1.0 + lam_sup)
    return bool(np.all(np.abs(lam.imag) <= tol) and np.all(lam.real >= -tol)
                and np.all(lam.real <= lam_sup + tol))


def cor4_verify(f, params: BlochParams = BlochParams(p=2.0), w=None, lambda_sup: float = 0.0,
                r: float = 0.5, search: SupSearchConfig = DEFAULT_SEARCH,
                config: QuadratureConfig = DEFAULT_CONFIG, tol: float = INEQ_TOL,
                samples=None) -> TheoremReport:
    """``M_p(r,f) <= C(r) sqrt(|f(0)|^2 + (r p ||f|| / omega(1))^2 I(r))`` for Yukawa solutions."""
    p = _check_p(params.p, "cor4")
    w = parse_majorant(w)
    if not (0.0 <= lambda_sup < 4.0 / p):
        raise HypothesisViolated(f"cor4: sup lambda = {lambda_sup} must lie in [0, 4/p)")
    pts = _samples(samples)
    if not _yukawa_lambda_ok(f, pts, lambda_sup):
        raise HypothesisViolated("cor4: f does not solve Delta f = lambda f with "
                                 f"0 <= lambda <= {lambda_sup} on the samples")
    bloch = _bloch_norm_or_raise(f, params, w, search, config, "cor4")
    lhs = circle_mean(f, r, p, config)
    i2, err = _weight_integral(r, 2 * params.alpha, 2 * params.beta, config)
    c = 1.0 / (1.0 - p * r * r / 4.0 * lambda_sup)
    f0 = abs(complex(f(0.0)))
    rhs = c * math.sqrt(f0 * f0 + (r * p * bloch / float(w(1.0))) ** 2 * i2)
    return report_from_samples("cor4", [Sample(r, lhs, rhs)], tol,
                               detail={"C": c, "I2": i2, "bloch_norm": bloch, "quad_error": err})


def lacunary_m2(n_terms: int, r):
    """Exact ``M_2(r, sum_{n<N} z**(2**n))`` from Parseval."""
    r = np.asarray(r, dtype=float)
    e = 2.0 ** (np.arange(n_terms) + 1)
    return np.sqrt(np.sum(r[..., None] ** e, axis=-1))


def sharpness_fit(n_terms: int = 14, r_grid=None, band: float = 2.0,
                  cross_check: bool = True) -> TheoremReport:
    """Ratio ``M_2(r, f) / sqrt(log(1/(1-r)))`` for the truncated lacunary series.

    Passes when ``max/min <= band`` over ``r_grid``.  Radii beyond
    ``1 - 2**-N`` raise :class:`ResolutionExceeded`: past that point the
    truncated series no longer tracks the infinite one.
    """
    if r_grid is None:
        r_grid = 1.0 - np.logspace(-1, -4, 31)
    r = np.asarray(r_grid, dtype=float)
    if n_terms < 4:
        return TheoremReport("sharpness", Verdict.INCONCLUSIVE, math.nan, 0.0,
                             message=f"N={n_terms} is too few terms for asymptotics")
    limit = 1.0 - 2.0 ** -n_terms
    if np.any(r > limit + 1e-15) or np.any(r <= 0):
        raise ResolutionExceeded(f"radii must lie in (0, {limit}] for N={n_terms}")
    m2 = lacunary_m2(n_terms, r)
    ratio = m2 / np.sqrt(-np.log1p(-r))
    spread = float(np.max(ratio) / np.min(ratio))
    detail = {"radii": r.tolist(), "ratio": ratio.tolist(),
              "growth_exponent": log_growth_exponent(r, m2),
              "ratio_at_0.99": float(lacunary_m2(n_terms, 0.99) / math.sqrt(-math.log1p(-0.99)))}
    if cross_check:
        from .functions import Lacunary
        rc = float(r[len(r) // 2])
        detail["quadrature_check"] = abs(circle_mean(Lacunary(n_terms), rc, 2.0)
                                         - float(lacunary_m2(n_terms, rc)))
    return report_from_samples("sharpness", [Sample("max/min ratio", spread, band)], 0.0,
                               rel=False, detail=detail)


def monotone_means_verify(f, p: float = 2.0, r_grid=None,
                          config: QuadratureConfig = DEFAULT_CONFIG, samples=None,
                          tol: float = 1e-10) -> TheoremReport:
    """``M_p^p(r, f)`` nondecreasing along ``r_grid`` when ``Re(conj(f) Delta f) >= 0``."""
    p = _check_p(p, "monotone_means")
    _require_re_conj_lap(f, _samples(samples), "monotone_means")
    r = np.linspace(0.0, 0.99, 50) if r_grid is None else np.sort(np.asarray(r_grid, float))
    vals = np.array([circle_mean(f, x, p, config) ** p for x in r])
    s = [Sample(float(r[i + 1]), float(vals[i]), float(vals[i + 1])) for i in range(r.size - 1)]
    return report_from_samples("monotone_means", s, tol,
                               detail={"radii": r.tolist(), "means_p": vals.tolist()})


def log_weight_bound_verify(f, p: float = 2.0, r: float = 0.5,
                            config: QuadratureConfig = DEFAULT_CONFIG, samples=None,
                            tol: float = INEQ_TOL) -> TheoremReport:
    """``int_{|z|<r} |f|^p log(r/|z|) d sigma <= (r^2/2) M_p^p(r, f)``."""
    p = _check_p(p, "log_weight_bound")
    if not (0.0 < r < 1.0):
        raise OutOfDomain(f"r must lie in (0, 1), got {r}")
    _require_re_conj_lap(f, _samples(samples), "log_weight_bound")

    def g(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore"):
            return np.abs(f(z)) ** p * np.log(r / np.abs(z))
    lhs = float(np.real(disk_integral(_Field(g, f.degree), r, config)))
    rhs = 0.5 * r * r * circle_mean(f, r, p, config) ** p
    return report_from_samples("log_weight_bound", [Sample(r, lhs, rhs)], tol)


def subharmonic_verify(f, samples=None, tol: float = 1e-6, identity_tol: float = 1e-6,
                       strict: bool = True) -> TheoremReport:
    """``F = |f_z|^2 + |f_zbar|^2`` is subharmonic under the third-order sign condition.

    ``Delta F`` comes from the closed-form identity in second and third
    Wirtinger derivatives.  On samples with ``|z| <= 0.9`` it is also compared
    with a finite-difference Laplacian of ``F``.  With ``strict`` any sample
    violating the sign condition raises; otherwise such samples are skipped.
    """
    pts = _samples(samples, f, order=3)
    hyp = np.atleast_1d(_lem9_quantity(f, pts))
    ok = hyp >= -_lem9_slack(f, pts)
    if strict and not np.all(ok):
        raise HypothesisViolated("subharmonic: third-order sign condition fails at a sample")
    pts, hyp = pts[ok], hyp[ok]
    fzz, fzzb, fzbzb = (np.atleast_1d(v) for v in f.second_wirtinger(pts))
    lap = 4.0 * fzzb
    lap_F = 4.0 * (np.abs(fzz) ** 2 + np.abs(fzbzb) ** 2) + 0.5 * np.abs(lap) ** 2 + 2.0 * hyp

    def F(z):
        a, b = f.wirtinger(z)
        return np.abs(a) ** 2 + np.abs(b) ** 2

    inner = np.abs(pts) <= 0.9
    zi = pts[inner]
    h = 5e-3 * (1.0 - np.abs(zi))
    fxx, fyy, _ = _second_partials(F, zi, h)
    numeric = np.real(fxx + fyy)
    gap = np.abs(numeric - lap_F[inner]) / (1.0 + np.abs(lap_F[inner]))
    identity_gap = float(np.max(gap)) if gap.size else 0.0
    if not f.has_exact_derivatives:
        identity_tol = max(identity_tol, 1e-3)
    s = [Sample(complex(z), float(-v), 0.0) for z, v in zip(pts, lap_F)]
    rep = report_from_samples("subharmonic", s, tol, rel=False,
                              detail={"identity_gap": identity_gap})
    if rep.passed and identity_gap > identity_tol:
        return TheoremReport("subharmonic", Verdict.FAIL, rep.max_violation, tol, rep.samples,
                             rep.worst, f"Laplacian identity off by {identity_gap:.3g}",
                             rep.detail)
    return rep


def gradient_decay_verify(f, gamma: float = 1.0, samples=None,
                          config: QuadratureConfig = DEFAULT_CONFIG,
                          search: SupSearchConfig = DEFAULT_SEARCH,
                          tol: float = INEQ_TOL) -> TheoremReport:
    """``||D_f(z)|| <= C6 / d(z)**(1 + gamma/2)`` with ``C6 = 2**((gamma+3)/2) sqrt(||f||_D)``."""
    if not (0.0 < gamma <= 1.0):
        raise ConstraintViolated(f"gamma must lie in (0, 1], got {gamma}")
    _require_lem9(f, _samples(samples, f, order=3), "gradient_decay")
    pts = _samples(samples)
    dn = dirichlet_norm(f, gamma, 2.0, config)
    if dn.verdict != FINITE:
        raise DivergentDirichletNorm(f"Dirichlet-type norm with gamma={gamma} diverges")
    c6 = 2.0 ** ((gamma + 3.0) / 2.0) * math.sqrt(dn.value)
    op = np.atleast_1d(f.jacobian_norms(pts).op)
    bound = c6 / (1.0 - np.abs(pts)) ** (1.0 + gamma / 2.0)
    s = [Sample(complex(z), float(l), float(b)) for z, l, b in zip(pts, op, bound)]
    member = bloch_norm(f, BlochParams(math.inf, 1.0 + gamma / 2.0, 0.0), Majorant.identity(),
                        search, config)
    return report_from_samples("gradient_decay", s, tol,
                               detail={"C6": c6, "dirichlet_norm": dn.value,
                                       "bloch_norm": member.value, "bloch_verdict": member.verdict})


def hardy_membership_estimate(f, gamma: float = 1.0, coeffs: HeinzCoefficients | None = None,
                              search: SupSearchConfig = DEFAULT_SEARCH,
                              config: QuadratureConfig = DEFAULT_CONFIG,
                              samples=None) -> TheoremReport:
    """Numerical evidence that ``M_{2/gamma}(r, f)`` stays bounded.

    Pass means the means stabilize along the boundary schedule; Inconclusive
    means they still grow at the last resolvable radius.  Neither outcome is
    a proof of membership.
    """
    if not (0.0 < gamma <= 1.0):
        raise ConstraintViolated(f"gamma must lie in (0, 1], got {gamma}")
    if coeffs is None:
        raise HypothesisViolated("hardy_membership: Heinz coefficients are required "
                                 "(a + b + q must be a non-zero function)")
    pts = _samples(samples)
    a, b, q = coeffs.fields(pts)
    if np.all(a + b + q < 1e-14):
        raise HypothesisViolated("hardy_membership: a + b + q vanishes on every sample")
    if not all(math.isfinite(v) for v in coeffs.sups()):
        raise HypothesisViolated("hardy_membership: coefficient sups must be finite")
    if not heinz_check(f, coeffs, pts).passed:
        raise HypothesisViolated("hardy_membership: f violates the Heinz inequality")
    _require_re_conj_lap(f, pts, "hardy_membership")
    _require_lem9(f, _samples(samples, f, order=3), "hardy_membership")
    dn = dirichlet_norm(f, gamma, 2.0, config)
    if dn.verdict != FINITE:
        raise DivergentDirichletNorm(f"Dirichlet-type norm with gamma={gamma} diverges")
    p = 2.0 / gamma
    radii = np.concatenate([[0.0], boundary_schedule(search.depth)])
    radii = radii[radii <= f.resolvable_radius]
    means = np.array([circle_mean(f, r, p, config) for r in radii])
    verdict, expo, limit = classify_profile(radii, means)
    c7 = 2.0 ** ((gamma + 5.0) / 2.0) * math.sqrt(dn.value) / gamma
    s = tuple(Sample(float(r), float(m), float(limit)) for r, m in zip(radii, means))
    msg = ("means stabilize along the boundary schedule (numerical evidence, not a proof)"
           if verdict == FINITE else
           "means still grow at the last resolvable radius; membership not evidenced")
    return TheoremReport("hardy_membership",
                         Verdict.PASS if verdict == FINITE else Verdict.INCONCLUSIVE,
                         float(means[-1] - limit), 0.0, s, None, msg,
                         {"p": p, "limit_estimate": limit, "growth_exponent": expo, "C7": c7,
                          "dirichlet_norm": dn.value})


# --------------------------------------------------------------------- characterizations

def _agreement_report(theorem_id, left_name, left, right_name, right, detail):
    """Pass when both sides give the same membership answer."""
    if Verdict.INCONCLUSIVE in (left, right):
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.PASS if left == right else Verdict.FAIL
    msg = f"{left_name}: {left}; {right_name}: {right}"
    viol = 0.0 if verdict is Verdict.PASS else (1.0 if verdict is Verdict.FAIL else math.nan)
    return TheoremReport(theorem_id, verdict, viol, 0.0, (), None, msg, detail)


def _as_verdict(finite: bool) -> Verdict:
    return Verdict.PASS if finite else Verdict.FAIL


def characterization_verify(mode: str, f, w=None, s: float = 0.0, alpha: float = 1.0,
                            search: SupSearchConfig = DEFAULT_SEARCH,
                            config: QuadratureConfig = DEFAULT_CONFIG,
                            check_constraints: bool = True) -> TheoremReport:
    """Compare both sides of a membership equivalence.

    ``Thm1``: Bloch-type norm finite vs weighted Lipschitz quotient bounded.
    ``Thm2``: Bloch-type norm finite vs mean-oscillation profile bounded
    (harmonic ``f``).  ``Thm3``: little Bloch limit vs the boundary limit of
    the weighted quotient.
    """
    mode = mode.lower()
    w = parse_majorant(w)
    params = BlochParams(math.inf, alpha, 0.0) if alpha > 0 else None
    if mode in ("thm1", "thm3") and check_constraints:
        if not (0.0 <= s < 1.0 and s <= alpha < s + 1.0):
            raise ConstraintViolated(f"need 0 <= s < 1 and s <= alpha < s + 1, got s={s}, alpha={alpha}")
    if params is None:
        raise ConstraintViolated("alpha must be positive")
    if mode == "thm1":
        nb = bloch_norm(f, params, w, search, config)
        lq = lipschitz_quotient_sup(f, w, s, alpha, search, check_constraints=False)
        f0 = abs(complex(f(0.0)))
        semi = nb.value - f0
        ratio = lq.value / semi if semi > 1e-14 else math.nan
        detail = {"bloch": nb.value, "bloch_verdict": nb.verdict, "quotient": lq.value,
                  "quotient_verdict": lq.verdict, "observed_ratio": ratio,
                  "beta_factor": beta_function(1.0 - s, 1.0 + s - alpha)
                  if (s < 1 and 1 + s - alpha > 0) else math.nan,
                  "note": "observed constants are lower bounds for the true constants"}
        return _agreement_report("thm1", "bloch finite", _as_verdict(nb.finite),
                                 "quotient bounded", _as_verdict(lq.finite), detail)
    if mode == "thm2":
        if not f.is_harmonic:
            raise NotHarmonic("Thm2 needs a harmonic function")
        if check_constraints and not (1.0 <= alpha < 2.0):
            raise ConstraintViolated(f"Thm2 needs 1 <= alpha < 2, got {alpha}")
        nb = bloch_norm(f, params, w, search, config)
        op = oscillation_profile(f, w, alpha, search, check_constraints=False)
        detail = {"bloch": nb.value, "bloch_verdict": nb.verdict, "oscillation": op.value,
                  "oscillation_verdict": op.verdict}
        return _agreement_report("thm2", "bloch finite", _as_verdict(nb.finite),
                                 "oscillation bounded", _as_verdict(op.finite), detail)
    if mode == "thm3":
        lb = little_bloch_limit(f, params, w, search)
        radii, sups = boundary_quotient_profile(f, w, s, alpha, search, check_constraints=False)
        v, msg, expo = limit_zero_verdict(radii, sups)
        detail = {"little_bloch": lb.message, "boundary_limit": msg,
                  "annulus_sups": lb.detail.get("annulus_sups"), "quotient_sups": sups.tolist()}
        return _agreement_report("thm3", "little Bloch member", lb.verdict,
                                 "boundary limit zero", v, detail)
    raise MalformedSpec(f"unknown characterization mode {mode!r}")


# --------------------------------------------------------------------- elementary lemmas

def power_mean_inequality_check(a, b, q, tol: float = 1e-12) -> Report:
    """``(a + b)**q <= 2**max(q - 1, 0) * (a**q + b**q)`` (vectorised)."""
    a, b, q = (np.asarray(x, dtype=float) for x in (a, b, q))
    if np.any(a < 0) or np.any(b < 0) or np.any(q <= 0):
        raise OutOfDomain("need a, b >= 0 and q > 0")
    lhs = (a + b) ** q
    rhs = 2.0 ** np.maximum(q - 1.0, 0.0) * (a ** q + b ** q)
    excess = np.atleast_1d(lhs - rhs - tol * np.maximum(1.0, np.abs(rhs)))
    i = int(np.argmax(excess))
    if excess[i] > 0:
        return Report("power_mean", Verdict.FAIL, float(excess[i]), "inequality fails",
                      {"index": i})
    return Report("power_mean", Verdict.PASS, float(np.max(np.atleast_1d(lhs - rhs))),
                  f"{excess.size} triples")


def harmonic_gradient_bound_verify(f, a: complex, r: float, tol: float = INEQ_TOL,
                                   max_nodes: int = 2 ** 16) -> TheoremReport:
    """``||D_f(a)|| <= (2 / (pi r)) int_0^{2 pi} |f(a + r e^{it}) - f(a)| dt``."""
    if not f.is_harmonic:
        raise NotHarmonic("the gradient bound needs a harmonic function")
    a = complex(a)
    if not (r > 0 and abs(a) + r < 1.0):
        raise OutOfDomain("the closed disk D(a, r) must lie inside the unit disk")
    fa = complex(f(a))
    n, prev = 256, None
    while n <= max_nodes:
        t = 2.0 * np.pi * np.arange(n) / n
        mean = float(np.mean(np.abs(f(a + r * np.exp(1j * t)) - fa)))
        if prev is not None and abs(mean - prev) <= 1e-13 * max(1.0, mean):
            break
        prev, n = mean, 2 * n
    rhs = 4.0 * mean / r
    lhs = float(f.jacobian_norms(a).op)
    return report_from_samples("harmonic_gradient_bound", [Sample((a, r), lhs, rhs)], tol)
