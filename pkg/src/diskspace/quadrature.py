"""Circle means, disk integrals and improper radial integrals."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedSpec, NonConvergence, OutOfDomain

__all__ = ["QuadratureConfig", "IntegralResult", "boundary_schedule", "circle_mean",
           "circle_average", "disk_integral", "green_identity_residual",
           "radial_improper_integral", "gauss_panels", "DEFAULT_CONFIG"]

CONVERGED = "Converged"
DIVERGENT = "Divergent"


@dataclass(frozen=True)
class QuadratureConfig:
    angular_nodes: int = 512
    radial_panels: int = 64
    panel_nodes: int = 16
    schedule_depth: int = 14
    abs_tol: float = 1e-10
    # panel sums must decay at least like k**-threshold to count as summable
    decay_exponent_threshold: float = 1.1
    max_angular_nodes: int = 2 ** 20

    def __post_init__(self):
        if self.angular_nodes < 16 or self.angular_nodes % 2:
            raise MalformedSpec("angular_nodes must be even and >= 16")
        if self.abs_tol <= 0:
            raise MalformedSpec("abs_tol must be positive")
        if self.panel_nodes < 2 or self.radial_panels < 4:
            raise MalformedSpec("need at least 4 radial panels of 2 nodes")
        if not (4 <= self.schedule_depth <= 48):
            raise MalformedSpec("schedule_depth must lie in [4, 48]")

    def replace(self, **changes) -> "QuadratureConfig":
        from dataclasses import replace
        return replace(self, **changes)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    verdict: str
    decay_exponent: float = math.nan
    tail: float = 0.0
    panel_sums: tuple = field(default=(), repr=False)

    @property
    def converged(self) -> bool:
        return self.verdict == CONVERGED


def boundary_schedule(depth: int = 14) -> np.ndarray:
    """Radii ``1 - 2**-k`` for ``k = 1..depth``."""
    return 1.0 - 2.0 ** -np.arange(1, depth + 1, dtype=float)


@functools.lru_cache(maxsize=32)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_panels(breaks, n: int):
    """Composite Gauss-Legendre nodes/weights; also returns the panel index per node."""
    breaks = np.asarray(breaks, dtype=float)
    x, w = _leggauss(n)
    a, b = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (b - a)
    nodes = (a + half * (x[None, :] + 1.0)).ravel()
    weights = (half * w[None, :]).ravel()
    panel = np.repeat(np.arange(breaks.size - 1), n)
    return nodes, weights, panel


def _base_breaks(b: float, n_uniform: int, n_geometric: int = 24) -> np.ndarray:
    """Breakpoints on ``[0, b]``: geometric toward 0, uniform on ``[b/2, b]``."""
    geo = b * 2.0 ** -np.arange(n_geometric, 0, -1, dtype=float)
    uni = np.linspace(0.5 * b, b, n_uniform + 1)[1:]
    return np.concatenate([[0.0], geo, uni])


def _field(g):
    return g if callable(g) else (lambda z: np.full(np.shape(z), g, dtype=complex))


def _degree_nodes(g, nodes: int, power: float = 2.0) -> int:
    deg = getattr(g, "degree", None)
    if deg:
        need = int(2 ** math.ceil(math.log2(max(16, (power if math.isfinite(power) else 2.0) * deg + 2))))
        nodes = max(nodes, need)
    return nodes


def _ring(r, n):
    theta = 2.0 * np.pi * np.arange(n) / n
    return r * np.exp(1j * theta)


def circle_average(g, r: float, config: QuadratureConfig = DEFAULT_CONFIG, nodes=None):
    """``(1/2pi) int g(r e^{i theta}) d theta`` by the periodic trapezoid rule."""
    if not (0 <= r < 1):
        raise OutOfDomain(f"radius {r} outside [0, 1)")
    g = _field(g)
    n = nodes or _degree_nodes(g, config.angular_nodes)
    prev = None
    while n <= config.max_angular_nodes:
        val = np.mean(g(_ring(r, n)))
        if prev is not None and abs(val - prev) <= config.abs_tol * max(1.0, abs(val)):
            return complex(val)
        prev = val
        n *= 2
    raise NonConvergence(f"circle average at r={r} did not settle by {config.max_angular_nodes} nodes")


def circle_mean(f, r: float, p: float, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Integral mean ``M_p(r, f)``; ``f`` may be a DiskFunction or any field.

    Node count doubles until successive values agree to ``abs_tol`` (relative
    to the value when it exceeds 1).
    """
    if not (0 <= r < 1):
        raise OutOfDomain(f"radius {r} outside [0, 1)")
    if not (p > 0):
        raise MalformedSpec(f"p must be positive, got {p}")
    g = _field(f)
    if r == 0:
        return float(np.abs(g(np.zeros(1, complex)))[0])
    n = _degree_nodes(g, config.angular_nodes, p)
    prev = None
    while n <= config.max_angular_nodes:
        a = np.abs(g(_ring(r, n)))
        if math.isinf(p):
            val = float(np.max(a))
        else:
            val = float(np.mean(a ** p)) ** (1.0 / p)
        if prev is not None and abs(val - prev) <= config.abs_tol * max(1.0, abs(val)):
            return val
        prev = val
        n *= 2
    if math.isinf(p):
        return prev
    raise NonConvergence(f"M_{p}({r}) did not settle by {config.max_angular_nodes} nodes")


def _radial_profile(g, rho, n_ang):
    """Angular means of ``g`` on each radius of ``rho`` (vectorised)."""
    theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
    pts = rho[:, None] * np.exp(1j * theta)[None, :]
    return np.mean(g(pts), axis=1)


def disk_integral(g, r: float = 1.0, config: QuadratureConfig = DEFAULT_CONFIG):
    """``int_{|z|<r} g d sigma`` with ``d sigma = dA / pi``.

    ``r = 1`` goes through :func:`radial_improper_integral`; a divergent
    integral raises :class:`NonConvergence`.
    """
    if not (0 < r <= 1):
        raise OutOfDomain(f"radius {r} outside (0, 1]")
    g = _field(g)
    n_ang = _degree_nodes(g, config.angular_nodes)
    if r == 1.0:
        res = radial_improper_integral(lambda t: 2.0 * t * _radial_profile(g, t, n_ang), config)
        if not res.converged:
            raise NonConvergence("disk integral diverges at the boundary")
        return res.value
    breaks = _base_breaks(r, config.radial_panels)
    rho, wts, _ = gauss_panels(breaks, config.panel_nodes)
    prof = _radial_profile(g, rho, n_ang)
    val = 2.0 * np.sum(wts * rho * prof)
    return float(val.real) if np.isrealobj(val) or abs(val.imag) == 0 else complex(val)


def green_identity_residual(g, r: float, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``|circle average - (g(0) + 1/2 int Delta g log(r/|z|) d sigma)|``.

    ``g`` must expose ``laplacian``; complex values are handled componentwise
    by linearity.
    """
    if not (0 < r < 1):
        raise OutOfDomain(f"radius {r} outside (0, 1)")
    lhs = circle_average(g, r, config)
    lap = g.laplacian

    def weighted(z):
        return lap(z) * np.log(r / np.abs(z))

    rhs = complex(g(0.0)) + 0.5 * complex(disk_integral(weighted, r, config))
    return abs(lhs - rhs)


# --------------------------------------------------------------------- improper radial integrals

def _fit_slope(x, y):
    A = np.vstack([np.ones_like(x), x]).T
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ sol
    return float(sol[1]), float(np.sqrt(np.mean(resid ** 2)))


def radial_improper_integral(h, config: QuadratureConfig = DEFAULT_CONFIG,
                             depth: int | None = None, window: int = 6,
                             max_depth: int = 32) -> IntegralResult:
    """``int_0^1 h(t) dt`` for ``h`` possibly singular at ``t = 1``.

    ``[0, 1/2]`` is covered by ordinary panels, then one Gauss panel per
    boundary-schedule interval ``[1-2**-k, 1-2**-(k+1)]``.  The panel sums
    ``c_k`` classify the tail: over the last ``window`` panels a geometric
    model ``c_k ~ rho**k`` and an algebraic model ``c_k ~ k**-q`` are fitted;
    the better fit decides.  Converged when ``rho < 1`` (geometric) or
    ``q > decay_exponent_threshold`` (algebraic), with the tail beyond the
    last radius extrapolated from that model.  Otherwise Divergent, and
    ``value`` is the partial integral up to ``1 - 2**-depth``.

    A geometric tail still above ``abs_tol`` triggers deeper panels (up to
    ``max_depth``) to shrink the extrapolated part.
    """
    K = depth or config.schedule_depth
    res, geometric = _improper_at_depth(h, config, K, window)
    while (geometric and K < max_depth
           and abs(res.tail) > config.abs_tol * max(1.0, abs(res.value))):
        K = min(max_depth, K + 6)
        deeper, geometric = _improper_at_depth(h, config, K, window)
        if not deeper.converged:
            break
        res = deeper
    return res


def _improper_at_depth(h, config, K, window):
    n = config.panel_nodes
    m = max(2, n // 2)
    base = _base_breaks(0.5, max(1, config.radial_panels // 8), n_geometric=4)
    tail_breaks = boundary_schedule(K)
    breaks = np.concatenate([base, tail_breaks[1:]])
    t, w, panel = gauss_panels(breaks, n)
    t2, w2, panel2 = gauss_panels(breaks, m)
    vals = np.asarray(h(np.concatenate([t, t2])))
    v1, v2 = vals[: t.size], vals[t.size:]
    n_panels = breaks.size - 1
    sums = np.bincount(panel, weights=(w * v1).real, minlength=n_panels).astype(complex)
    sums2 = np.bincount(panel2, weights=(w2 * v2).real, minlength=n_panels).astype(complex)
    if np.iscomplexobj(vals):
        sums += 1j * np.bincount(panel, weights=(w * v1).imag, minlength=n_panels)
        sums2 += 1j * np.bincount(panel2, weights=(w2 * v2).imag, minlength=n_panels)
    quad_err = float(np.sum(np.abs(sums - sums2)))
    n_base = base.size - 1
    c = sums[n_base:]                      # c[j] covers [r_{j+1}, r_{j+2}]
    total = complex(np.sum(sums))
    is_real = not np.iscomplexobj(vals) or np.all(np.abs(np.imag(vals)) == 0)

    def _out(v):
        return float(v.real) if is_real else complex(v)

    a = np.abs(c)
    W = min(window, a.size)
    aw = a[-W:]
    k = np.arange(a.size - W + 1, a.size + 1, dtype=float)
    scale = max(1.0, abs(total))
    if np.all(aw <= config.abs_tol * scale):
        return (IntegralResult(_out(total), quad_err + float(aw[-1]), CONVERGED,
                                       math.inf, 0.0, tuple(np.real_if_close(c))), False)
    if np.any(aw == 0):
        aw = np.maximum(aw, np.finfo(float).tiny)
    log_a = np.log(aw)
    g_slope, g_res = _fit_slope(k, log_a)
    q_slope, q_res = _fit_slope(np.log(k), log_a)
    rho, q = math.exp(g_slope), -q_slope
    last = c[-1]
    kl = k[-1]
    geometric = g_res <= q_res
    if geometric and rho < 1.0:
        tail = last * rho / (1.0 - rho)
        r_last = abs(c[-1] / c[-2]) if abs(c[-2]) > 0 else rho
        alt = abs(last) * r_last / (1.0 - r_last) if r_last < 1 else abs(tail)
        err = quad_err + abs(abs(tail) - alt) + 1e-3 * abs(tail) * g_res
        return (IntegralResult(_out(total + tail), err, CONVERGED, q, _out(tail),
                                       tuple(np.real_if_close(c))), True)
    if (not geometric or rho >= 1.0) and q > config.decay_exponent_threshold:
        tail = last * kl ** q * (kl + 0.5) ** (1.0 - q) / (q - 1.0)
        err = quad_err + 0.5 * abs(tail)
        return (IntegralResult(_out(total + tail), err, CONVERGED, q, _out(tail),
                                       tuple(np.real_if_close(c))), False)
    return (IntegralResult(_out(total), math.inf, DIVERGENT, q, 0.0,
                                   tuple(np.real_if_close(c))), False)
