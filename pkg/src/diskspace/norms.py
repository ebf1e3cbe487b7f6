"""Function-space functionals: Hardy, Bloch-type, Dirichlet-type, Lipschitz, BMO.

Suprema over the disk are estimated on a grid built from the boundary
schedule ``r_k = 1 - 2**-k`` crossed with equispaced angles, then refined
locally with bounded scalar searches.  Each sup also yields a per-ring profile
whose running maximum decides between a ``Finite`` and an
``ApparentlyUnbounded`` verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .errors import ConstraintViolated, MalformedSpec, NotHarmonic, OutOfDomain
from .majorants import BlochParams, Majorant, eta, parse_majorant
from .quadrature import (DEFAULT_CONFIG, QuadratureConfig, boundary_schedule, circle_mean,
                         gauss_panels, radial_improper_integral)
from .reports import Report, Verdict

__all__ = ["SupSearchConfig", "NormValue", "hardy_norm", "bloch_norm", "little_bloch_limit",
           "dirichlet_norm", "lipschitz_quotient_sup", "mean_oscillation",
           "oscillation_profile", "boundary_quotient_profile", "fit_growth_exponent", "classify_profile",
           "limit_zero_verdict", "FINITE", "UNBOUNDED", "VALUE_CAP"]

FINITE = "Finite"
UNBOUNDED = "ApparentlyUnbounded"
VALUE_CAP = 1e12


@dataclass(frozen=True)
class SupSearchConfig:
    depth: int = 14
    n_angles: int = 64
    refine_rounds: int = 3
    n_pairs: int = 10_000
    pair_angles: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.depth < 3:
            raise MalformedSpec("sup search needs at least 4 radii (depth >= 3)")
        if self.n_angles < 8 or self.pair_angles < 8:
            raise MalformedSpec("sup search needs at least 8 angles")
        if self.refine_rounds < 0 or self.n_pairs < 0:
            raise MalformedSpec("refine_rounds and n_pairs must be nonnegative")

    def replace(self, **changes) -> "SupSearchConfig":
        from dataclasses import replace
        return replace(self, **changes)


DEFAULT_SEARCH = SupSearchConfig()


@dataclass(frozen=True)
class NormValue:
    value: float
    attained_at: tuple = ()
    verdict: str = FINITE
    growth_exponent: float = math.nan
    profile: tuple = field(default=(), repr=False)
    error_estimate: float = 0.0

    @property
    def finite(self) -> bool:
        return self.verdict == FINITE


# --------------------------------------------------------------------- profile analysis

def fit_growth_exponent(r, values, window: int = 6) -> float:
    """Slope of ``log(value)`` against ``log(1/(1-r))`` over the last ``window`` radii."""
    r = np.asarray(r, dtype=float)
    v = np.asarray(values, dtype=float)
    keep = (r > 0) & (v > 0) & np.isfinite(v)
    r, v = r[keep][-window:], v[keep][-window:]
    if r.size < 3:
        return math.nan
    x = -np.log1p(-r)
    slope, _ = np.polyfit(x, np.log(v), 1)
    return float(slope)


def classify_profile(r, values, cauchy_tol: float = 1e-3, ratio_max: float = 0.8):
    """Decide whether the running sup of ``values`` along ``r`` stabilizes.

    Returns ``(verdict, growth_exponent, limit)``.  ``Finite`` when the last
    three increments of the running sup are below ``cauchy_tol`` relative, or
    shrink geometrically (ratio <= ``ratio_max``); ``limit`` then adds the
    geometric tail of the increments (settled case only).
    """
    v = np.minimum(np.asarray(values, dtype=float), VALUE_CAP)
    run = np.maximum.accumulate(v)
    expo = fit_growth_exponent(r, run)
    last = float(run[-1])
    if run.size < 4:
        return FINITE, expo, last
    inc = np.diff(run)[-3:]
    if np.all(inc <= cauchy_tol * max(last, np.finfo(float).tiny)):
        # already settled; close the gap with the geometric tail of the increments
        if inc[1] > 0 and inc[2] > 0:
            rho = min(inc[2] / inc[1], ratio_max)
            last += inc[2] * rho / (1.0 - rho)
        return FINITE, expo, last
    if inc[0] > 0 and inc[1] <= ratio_max * inc[0] and inc[2] <= ratio_max * inc[1]:
        return FINITE, expo, last
    return UNBOUNDED, expo, last


def limit_zero_verdict(r, values, tol: float | None = None) -> tuple[Verdict, str, float]:
    """Three-valued test that ``values`` (per boundary annulus) tend to zero.

    Pass: the last three values decrease and either fall below ``tol`` or decay
    with growth exponent <= -0.1.  Fail: the values are not small and show no
    decay (rising, or exponent above -0.02).  Anything between is Inconclusive.
    """
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return Verdict.INCONCLUSIVE, "fewer than 3 resolvable annuli", math.nan
    tol = 1e-3 * max(1.0, float(v[0])) if tol is None else tol
    expo = fit_growth_exponent(r, v)
    decreasing = bool(np.all(np.diff(v[-3:]) <= 1e-12 * max(1.0, float(v[-3]))))
    last = float(v[-1])
    if decreasing and (last < tol or (math.isfinite(expo) and expo <= -0.1)):
        return Verdict.PASS, f"annulus sups decay (last {last:.3g}, exponent {expo:.3g})", expo
    flat = not decreasing or not math.isfinite(expo) or expo > -0.02
    if last >= tol and flat:
        return Verdict.FAIL, f"annulus sups do not tend to 0 (last {last:.3g}, exponent {expo:.3g})", expo
    return Verdict.INCONCLUSIVE, f"slow decay (last {last:.3g}, exponent {expo:.3g})", expo


def _norm_value(r, values, attained, error=0.0, offset=0.0) -> NormValue:
    verdict, expo, limit = classify_profile(r, values)
    if verdict == FINITE:
        value = offset + limit
    else:
        value = min(VALUE_CAP, offset + float(np.max(values)))
    prof = tuple((float(a), float(b)) for a, b in zip(r, values))
    return NormValue(float(value), tuple(attained), verdict, expo, prof, float(error))


# --------------------------------------------------------------------- grids and refinement

class _Field:
    """Callable scalar field carrying the source degree for node selection."""

    def __init__(self, fn, degree=None):
        self.fn = fn
        self.degree = degree

    def __call__(self, z):
        return self.fn(z)


def _radii(f, search: SupSearchConfig) -> np.ndarray:
    sched = boundary_schedule(search.depth)
    rmax = f.resolvable_radius
    sched = sched[sched <= rmax]
    return np.concatenate([[0.0], sched])


def _angles(n: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n) / n


def _maximize_1d(fun, lo, hi, x0):
    if hi <= lo:
        return x0, fun(x0)
    res = minimize_scalar(lambda x: -fun(x), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-10 * max(1.0, abs(hi))})
    fx = -float(res.fun)
    f0 = fun(x0)
    return (float(res.x), fx) if fx > f0 else (x0, f0)


def _refine(fun, x0, lo, hi, rounds):
    """Coordinate-wise bounded maximization of ``fun(vector)`` inside a box."""
    x = np.array(x0, dtype=float)
    best = fun(x)
    for _ in range(rounds):
        for i in range(x.size):
            def along(t, i=i):
                y = x.copy()
                y[i] = t
                return fun(y)
            xi, val = _maximize_1d(along, lo[i], hi[i], x[i])
            if val > best:
                best, x[i] = val, xi
    return x, best


def _neighbour_box(radii, k, rmax):
    lo = radii[max(0, k - 1)]
    hi = radii[k + 1] if k + 1 < radii.size else min(rmax, radii[k])
    return lo, min(hi, rmax)


# --------------------------------------------------------------------- Hardy

def hardy_norm(f, p: float, search: SupSearchConfig = DEFAULT_SEARCH,
               config: QuadratureConfig = DEFAULT_CONFIG) -> NormValue:
    """``sup_r M_p(r, f)`` over the boundary schedule within the resolvable range."""
    p = float(p)
    if not (p > 0):
        raise MalformedSpec(f"p must be positive, got {p}")
    radii = _radii(f, search)
    means = np.array([circle_mean(f, r, p, config) for r in radii])
    k = int(np.argmax(means))
    return _norm_value(radii, means, (complex(radii[k]),))


# --------------------------------------------------------------------- Bloch-type

def _weight(w: Majorant, params: BlochParams, r):
    return np.asarray(w(eta(r, params.alpha, params.beta)))


def _bloch_pointwise(f, params, w):
    def q(z):
        z = np.asarray(z, dtype=complex)
        return np.asarray(f.jacobian_norms(z).op) * _weight(w, params, np.abs(z))
    return q


def _ring_sups_pointwise(q, radii, angles):
    pts = radii[:, None] * np.exp(1j * angles)[None, :]
    vals = q(pts)
    j = np.argmax(vals, axis=1)
    return vals[np.arange(radii.size), j], angles[j]


def bloch_norm(f, params: BlochParams = BlochParams(), w=None,
               search: SupSearchConfig = DEFAULT_SEARCH,
               config: QuadratureConfig = DEFAULT_CONFIG) -> NormValue:
    """``|f(0)| + sup`` of the weighted Jacobian quantity.

    ``p = inf`` uses the pointwise quantity ``||D_f(z)|| omega(eta(|z|))`` on
    the grid; finite ``p`` uses the radial profile ``M_p(r, ||D_f||) omega(eta(r))``.
    """
    w = parse_majorant(w)
    f0 = float(abs(f(0.0)))
    radii = _radii(f, search)
    rmax = min(radii[-1], f.resolvable_radius)
    if math.isinf(params.p):
        q = _bloch_pointwise(f, params, w)
        sups, where = _ring_sups_pointwise(q, radii, _angles(search.n_angles))
        k = int(np.argmax(sups))
        dth = 2.0 * np.pi / search.n_angles
        lo_r, hi_r = _neighbour_box(radii, k, rmax)

        def obj(x):
            return float(q(x[0] * np.exp(1j * x[1])))
        x, best = _refine(obj, (radii[k], where[k]), (lo_r, where[k] - dth),
                          (hi_r, where[k] + dth), search.refine_rounds)
        sups = sups.copy()
        sups[k] = max(sups[k], best)
        nv = _norm_value(radii, sups, (complex(x[0] * np.exp(1j * x[1])),), offset=f0)
        return nv
    op = _Field(lambda z: f.jacobian_norms(z).op, f.degree)

    def radial(r):
        return circle_mean(op, r, params.p, config) * float(_weight(w, params, r))
    vals = np.array([radial(r) for r in radii])
    k = int(np.argmax(vals))
    lo_r, hi_r = _neighbour_box(radii, k, rmax)
    x, best = _refine(lambda x: radial(x[0]), (radii[k],), (lo_r,), (hi_r,),
                      min(1, search.refine_rounds))
    vals[k] = max(vals[k], best)
    return _norm_value(radii, vals, (complex(x[0]),), offset=f0)


def _annulus_sups(q, f, search: SupSearchConfig, per_annulus: int = 4):
    """Sup of a pointwise quantity on each annulus ``[r_k, r_{k+1}]`` inside the resolvable range."""
    radii = _radii(f, search)[1:]
    angles = _angles(search.n_angles)
    dth = 2.0 * np.pi / search.n_angles
    out = []
    for a, b in zip(radii[:-1], radii[1:]):
        rs = np.linspace(a, b, per_annulus)
        sups, where = _ring_sups_pointwise(q, rs, angles)
        i = int(np.argmax(sups))

        def obj(x):
            return float(q(x[0] * np.exp(1j * x[1])))
        _, best = _refine(obj, (rs[i], where[i]), (a, where[i] - dth), (b, where[i] + dth),
                          min(search.refine_rounds, 1))
        out.append(max(float(sups[i]), best))
    return radii[:-1], np.array(out)


def little_bloch_limit(f, params: BlochParams = BlochParams(), w=None,
                       search: SupSearchConfig = DEFAULT_SEARCH, tol: float | None = None) -> Report:
    """Does ``||D_f(z)|| omega(eta(|z|))`` tend to 0 as ``|z| -> 1``?"""
    if not math.isinf(params.p):
        raise MalformedSpec("little Bloch limit is defined for p = inf only")
    w = parse_majorant(w)
    r, sups = _annulus_sups(_bloch_pointwise(f, params, w), f, search)
    verdict, msg, expo = limit_zero_verdict(r, sups, tol)
    return Report("little_bloch", verdict, float(sups[-1]) if sups.size else math.nan, msg,
                  {"radii": r.tolist(), "annulus_sups": sups.tolist(), "growth_exponent": expo})


# --------------------------------------------------------------------- Dirichlet-type

def dirichlet_norm(f, gamma: float, mu: float,
                   config: QuadratureConfig = DEFAULT_CONFIG) -> NormValue:
    """``|f(0)| + int d(z)**gamma ||D_f(z)||**mu d sigma`` with ``d sigma = dA/pi``."""
    if not (gamma > 0 and mu > 0):
        raise MalformedSpec("dirichlet_norm needs gamma > 0 and mu > 0")
    n_ang = config.angular_nodes
    if f.degree:
        n_ang = max(n_ang, int(2 ** math.ceil(math.log2(max(mu, 2.0) * f.degree + 2))))
    theta = _angles(n_ang)
    unit = np.exp(1j * theta)

    def h(t):
        t = np.asarray(t, dtype=float)
        op = np.asarray(f.jacobian_norms(t[:, None] * unit[None, :]).op)
        return 2.0 * t * (1.0 - t) ** gamma * np.mean(op ** mu, axis=1)

    res = radial_improper_integral(h, config)
    f0 = float(abs(f(0.0)))
    prof = tuple(zip(boundary_schedule(len(res.panel_sums)).tolist(),
                     np.abs(np.asarray(res.panel_sums, dtype=complex)).tolist()))
    if res.converged:
        return NormValue(f0 + float(res.value), (), FINITE, res.decay_exponent, prof,
                         res.error_estimate)
    return NormValue(min(VALUE_CAP, f0 + float(res.value)), (), UNBOUNDED,
                     res.decay_exponent, prof, math.inf)


# --------------------------------------------------------------------- weighted Lipschitz quotient

def _check_thm1_range(s, alpha):
    if not (0.0 <= s < 1.0 and s <= alpha < s + 1.0):
        raise ConstraintViolated(f"need 0 <= s < 1 and s <= alpha < s + 1, got s={s}, alpha={alpha}")


@dataclass(frozen=True)
class _PairData:
    """Pair sups attributed two ways: by the ring of z, and by the outer ring."""

    radii: np.ndarray
    by_z: np.ndarray
    by_outer: np.ndarray
    best: float
    best_pair: tuple


def _ring_index(radii, r):
    return np.clip(np.searchsorted(radii, r, side="right") - 1, 0, radii.size - 1)


def _quotient(f, w, s, alpha):
    def q(z, v):
        z = np.asarray(z, dtype=complex)
        v = np.asarray(v, dtype=complex)
        dz, dv = 1.0 - np.abs(z), 1.0 - np.abs(v)
        dist = np.abs(z - v)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.abs(f(z) - f(v)) * np.asarray(w(dz ** s * dv ** (alpha - s))) / dist
        return np.where(dist > 0, out, 0.0)
    return q


def _random_pairs(rng, n, radii):
    """Three strata: near-diagonal, independent, and boundary-to-interior pairs."""
    rmax = radii[-1]
    kmax = -math.log2(1.0 - rmax) if rmax > 0 else 1.0

    def boundaryish(m, k_lo=0.0):
        k = rng.uniform(k_lo, kmax, m)
        r = np.minimum(1.0 - 2.0 ** -k, rmax)
        return r * np.exp(2j * np.pi * rng.uniform(size=m))

    m = n // 3
    z1 = boundaryish(m)
    d1 = 1.0 - np.abs(z1)
    step = rng.uniform(0.0, 1.0, m) * np.minimum(0.01, 0.99 * d1)
    w1 = z1 + step * np.exp(2j * np.pi * rng.uniform(size=m))
    z2, w2 = boundaryish(m), boundaryish(m)
    m3 = n - 2 * m
    z3 = boundaryish(m3, k_lo=0.5 * kmax)
    w3 = rng.uniform(0.0, 0.5, m3) * np.exp(2j * np.pi * rng.uniform(size=m3))
    return np.concatenate([z1, z2, z3]), np.concatenate([w1, w2, w3])


def _pair_data(f, w, s, alpha, search: SupSearchConfig) -> _PairData:
    radii = _radii(f, search)
    rmax = radii[-1]
    ng = radii.size
    ang = _angles(search.pair_angles)
    P = (radii[:, None] * np.exp(1j * ang)[None, :]).ravel()
    group = np.repeat(np.arange(ng), ang.size)
    F = np.asarray(f(P), dtype=complex)
    d = 1.0 - np.abs(P)
    kind, param, kt, kw = w.kernel_args()
    args = (P, F, d ** s, d ** (alpha - s), group, ng, kind, param, kt, kw)
    by_z, zi, zj = _kernels.pair_quotient_profile(*args, outer_only=False)
    by_outer, _, _ = _kernels.pair_quotient_profile(*args, outer_only=True)
    by_z, by_outer = by_z.copy(), by_outer.copy()
    k = int(np.argmax(by_z))
    best, pair = float(by_z[k]), (complex(P[zi[k]]), complex(P[zj[k]]))

    # exact diagonal limit: sup over directions of the difference quotient is ||D_f||
    diag = np.asarray(f.jacobian_norms(P).op) * np.asarray(w(d ** alpha))
    for g in range(ng):
        m = float(np.max(diag[group == g]))
        by_z[g] = max(by_z[g], m)
        by_outer[g] = max(by_outer[g], m)
    i = int(np.argmax(diag))
    if diag[i] > best:
        best, pair = float(diag[i]), (complex(P[i]), complex(P[i]))

    q = _quotient(f, w, s, alpha)
    if search.n_pairs:
        rng = np.random.default_rng(search.seed)
        Z, V = _random_pairs(rng, search.n_pairs, radii)
        Z = np.where(np.abs(Z) < 1.0, Z, Z * rmax / np.maximum(np.abs(Z), 1e-300))
        V = np.where(np.abs(V) <= rmax, V, V * rmax / np.abs(V))
        vals = q(Z, V)
        gz = _ring_index(radii, np.abs(Z))
        go = np.maximum(gz, _ring_index(radii, np.abs(V)))
        np.maximum.at(by_z, gz, vals)
        np.maximum.at(by_outer, go, vals)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, pair = float(vals[i]), (complex(Z[i]), complex(V[i]))

    if search.refine_rounds and pair[0] != pair[1]:
        z0, v0 = pair

        def obj(x):
            zz = x[0] * np.exp(1j * x[1])
            vv = x[2] * np.exp(1j * x[3])
            return float(q(zz, vv))
        x0 = (abs(z0), np.angle(z0), abs(v0), np.angle(v0))
        span = 2.0 * np.pi / search.pair_angles
        lo = (max(0.0, x0[0] - 0.1), x0[1] - span, max(0.0, x0[2] - 0.1), x0[3] - span)
        hi = (min(rmax, x0[0] + 0.1), x0[1] + span, min(rmax, x0[2] + 0.1), x0[3] + span)
        x, val = _refine(obj, x0, lo, hi, search.refine_rounds)
        if val > best:
            best = val
            pair = (complex(x[0] * np.exp(1j * x[1])), complex(x[2] * np.exp(1j * x[3])))
            g = int(_ring_index(radii, np.array([x[0]]))[0])
            by_z[g] = max(by_z[g], val)
            go = int(_ring_index(radii, np.array([max(x[0], x[2])]))[0])
            by_outer[go] = max(by_outer[go], val)
    return _PairData(radii, by_z, by_outer, best, pair)


def lipschitz_quotient_sup(f, w=None, s: float = 0.0, alpha: float = 1.0,
                           search: SupSearchConfig = DEFAULT_SEARCH,
                           check_constraints: bool = True) -> NormValue:
    """``sup |f(z)-f(w)| omega(d(z)**s d(w)**(alpha-s)) / |z-w|`` over ``z != w``.

    Combines all grid pairs, stratified random pairs (seeded), the exact
    diagonal limit ``||D_f(z)|| omega(d(z)**alpha)``, and local refinement of
    the best pair.  The profile attributes each pair to its outer ring.
    """
    if check_constraints:
        _check_thm1_range(s, alpha)
    w = parse_majorant(w)
    pd = _pair_data(f, w, s, alpha, search)
    nv = _norm_value(pd.radii, pd.by_outer, pd.best_pair)
    if nv.verdict == FINITE:
        nv = NormValue(max(nv.value, pd.best), nv.attained_at, nv.verdict, nv.growth_exponent,
                       nv.profile, nv.error_estimate)
    return nv


def boundary_quotient_profile(f, w=None, s: float = 0.5, alpha: float = 1.0,
                              search: SupSearchConfig = DEFAULT_SEARCH,
                              check_constraints: bool = True):
    """Per-ring ``sup_w`` of the weighted quotient with ``z`` in ring ``k``.

    Returns ``(radii, sups)`` for rings ``k >= 1``; the boundary-limit
    condition asks these to tend to zero.
    """
    if check_constraints:
        _check_thm1_range(s, alpha)
    pd = _pair_data(f, parse_majorant(w), s, alpha, search)
    return pd.radii[1:], pd.by_z[1:]


# --------------------------------------------------------------------- mean oscillation

def _disk_rule(r, n_radial, n_angular):
    """Polar tensor rule on the disk of radius ``r``; weights sum to ``pi r**2``."""
    breaks = np.linspace(0.0, r, max(2, n_radial // 16) + 1)
    rho, wr, _ = gauss_panels(breaks, 16)
    theta = _angles(n_angular)
    pts = rho[:, None] * np.exp(1j * theta)[None, :]
    wts = (wr * rho)[:, None] * np.full(n_angular, 2.0 * np.pi / n_angular)[None, :]
    return pts.ravel(), wts.ravel()


def mean_oscillation(f, z: complex, r: float, n_radial: int = 64, n_angular: int = 1024) -> float:
    """L1 mean oscillation of ``f`` over the disk ``D(z, r)`` (Lebesgue area)."""
    z = complex(z)
    d = 1.0 - abs(z)
    if not (0 < r <= d + 1e-15):
        raise OutOfDomain(f"need 0 < r <= d(z) = {d}, got r={r}")
    pts, wts = _disk_rule(r, n_radial, n_angular)
    vals = np.asarray(f(z + pts), dtype=complex)
    area = math.pi * r * r
    avg = np.sum(wts * vals) / area
    return float(np.sum(wts * np.abs(vals - avg)) / area)


def oscillation_profile(f, w=None, alpha: float = 1.0, search: SupSearchConfig = DEFAULT_SEARCH,
                        n_angles: int = 8, scales=(1.0, 0.5, 0.25, 0.125),
                        check_constraints: bool = True) -> NormValue:
    """``sup MO(f, z, r) omega(r**alpha) / r`` over ``z`` on the grid and ``r = c d(z)``."""
    if not f.is_harmonic:
        raise NotHarmonic("oscillation_profile requires a harmonic function")
    if check_constraints and not (1.0 <= alpha < 2.0):
        raise ConstraintViolated(f"need 1 <= alpha < 2, got {alpha}")
    w = parse_majorant(w)
    radii = _radii(f, search)
    ang = _angles(n_angles)
    sups = np.zeros(radii.size)
    best, where = -1.0, ()
    for k, rk in enumerate(radii):
        for th in (ang if rk > 0 else ang[:1]):
            z = rk * np.exp(1j * th)
            d = 1.0 - rk
            for c in scales:
                r = c * d
                val = mean_oscillation(f, z, r, n_radial=32, n_angular=256) * float(w(r ** alpha)) / r
                if val > sups[k]:
                    sups[k] = val
                if val > best:
                    best, where = val, (complex(z), r)
    nv = _norm_value(radii, sups, where[:1])
    return NormValue(max(nv.value, best) if nv.finite else nv.value, where, nv.verdict,
                     nv.growth_exponent, nv.profile)
