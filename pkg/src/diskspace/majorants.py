"""Majorant weights and the boundary weight ``eta``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import EmptyGrid, MajorantError, MalformedSpec, OutOfDomain
from .reports import Report, Verdict

__all__ = ["Majorant", "BlochParams", "validate_majorant", "scaling_law_check", "eta",
           "log_e_over_d", "eta_monotonicity_check", "parse_majorant"]

# arguments reaching a majorant are boundary weights, all <= 1 in practice
_ARG_GUARD = 10.0


@dataclass(frozen=True, eq=False)
class Majorant:
    """A weight ``omega`` on ``[0, inf)``.

    Use the constructors :meth:`identity`, :meth:`power`, :meth:`log_smoothed`
    and :meth:`table`; instances are immutable.
    """

    kind: str
    s: float = 1.0
    knots_t: np.ndarray = field(default_factory=lambda: np.zeros(0))
    knots_w: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @classmethod
    def identity(cls) -> "Majorant":
        return cls("identity")

    @classmethod
    def power(cls, s: float) -> "Majorant":
        if not (0.0 < s <= 1.0):
            raise MajorantError(f"power majorant needs s in (0, 1], got {s}")
        return cls("power", s=float(s))

    @classmethod
    def log_smoothed(cls) -> "Majorant":
        return cls("logsmoothed")

    @classmethod
    def table(cls, points, strict: bool = True) -> "Majorant":
        """Piecewise-linear majorant through ``points = [(t, omega(t)), ...]``.

        ``(0, 0)`` is prepended when absent; past the last knot the value is held
        constant.  With ``strict`` the majorant axioms are checked on the knots,
        which is sufficient for piecewise-linear interpolation.
        """
        pts = sorted((float(t), float(w)) for t, w in points)
        if not pts:
            raise MajorantError("table majorant needs at least one knot")
        if pts[0][0] < 0 or any(not (math.isfinite(t) and math.isfinite(w)) for t, w in pts):
            raise MajorantError("table knots must be finite with t >= 0")
        if len({t for t, _ in pts}) != len(pts):
            raise MajorantError("table knots must have distinct abscissae")
        if pts[0][0] > 0:
            pts.insert(0, (0.0, 0.0))
        kt = np.array([t for t, _ in pts])
        kw = np.array([w for _, w in pts])
        kt.setflags(write=False)
        kw.setflags(write=False)
        m = cls("table", knots_t=kt, knots_w=kw)
        if strict:
            rep = validate_majorant(m, kt[1:])
            if not rep.passed:
                raise MajorantError(f"table is not a majorant: {rep.message}")
        return m

    def kernel_args(self):
        code = {"identity": _kernels.OMEGA_IDENTITY, "power": _kernels.OMEGA_POWER,
                "logsmoothed": _kernels.OMEGA_LOGSMOOTHED, "table": _kernels.OMEGA_TABLE}[self.kind]
        kt = self.knots_t if self.kind == "table" else np.zeros(1)
        kw = self.knots_w if self.kind == "table" else np.zeros(1)
        return code, self.s, kt, kw

    def __call__(self, t):
        arr = np.asarray(t, dtype=np.float64)
        if arr.size and float(np.max(arr)) > _ARG_GUARD:
            raise OutOfDomain(f"majorant queried at {float(np.max(arr)):.3g} > {_ARG_GUARD}")
        if arr.size and float(np.min(arr)) < 0:
            raise OutOfDomain("majorant queried at a negative argument")
        out = _kernels.omega_numpy(*self.kernel_args(), arr)
        return out[()] if out.ndim == 0 else out

    def to_spec(self) -> dict:
        if self.kind == "power":
            return {"kind": "power", "s": self.s}
        if self.kind == "table":
            return {"kind": "table", "points": [[float(t), float(w)] for t, w in
                                                zip(self.knots_t, self.knots_w)]}
        return {"kind": self.kind}

    def __repr__(self) -> str:
        return f"Majorant({self.to_spec()})"


def parse_majorant(spec) -> Majorant:
    """Accept a :class:`Majorant`, a kind name, or a JSON-style dict."""
    if isinstance(spec, Majorant):
        return spec
    if spec is None:
        return Majorant.identity()
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = str(spec.get("kind", "")).lower()
    try:
        if kind == "identity":
            return Majorant.identity()
        if kind == "power":
            return Majorant.power(float(spec["s"]))
        if kind in ("logsmoothed", "log"):
            return Majorant.log_smoothed()
        if kind == "table":
            return Majorant.table(spec["points"])
    except KeyError as exc:
        raise MalformedSpec(f"majorant kind {kind!r} needs field {exc.args[0]!r}") from None
    except MajorantError as exc:
        raise MalformedSpec(str(exc)) from None
    raise MalformedSpec(f"unknown majorant kind {kind!r}")


@dataclass(frozen=True)
class BlochParams:
    p: float = math.inf
    alpha: float = 1.0
    beta: float = 0.0

    def __post_init__(self):
        p = float(self.p)
        if not (p > 0):
            raise MalformedSpec(f"p must lie in (0, inf], got {self.p}")
        if not (self.alpha > 0):
            raise MalformedSpec(f"alpha must be > 0, got {self.alpha}")
        if not (self.beta <= self.alpha):
            raise MalformedSpec(f"beta must be <= alpha, got beta={self.beta}, alpha={self.alpha}")
        object.__setattr__(self, "p", p)


def _pairwise_violation(t, w, tol):
    """First index where omega decreases or omega(t)/t increases, else None."""
    dw = np.diff(w)
    ratio = w / t
    dr = np.diff(ratio)
    bad_w = np.flatnonzero(dw < -tol * np.maximum(1.0, np.abs(w[:-1])))
    bad_r = np.flatnonzero(dr > tol * np.maximum(1.0, np.abs(ratio[:-1])))
    first = min([i for i in (bad_w[:1].tolist() + bad_r[:1].tolist())], default=None)
    if first is None:
        return None
    what = "omega decreases" if first in set(bad_w.tolist()) else "omega(t)/t increases"
    return first, what


def validate_majorant(w: Majorant, grid, tol: float = 1e-12) -> Report:
    """Check the majorant axioms on a sorted positive grid."""
    t = np.asarray(grid, dtype=np.float64).ravel()
    if t.size == 0:
        raise EmptyGrid("validate_majorant needs a nonempty grid")
    if np.any(t <= 0) or np.any(np.diff(t) < 0):
        raise MalformedSpec("grid must be positive and sorted ascending")
    w0 = float(w(0.0))
    if abs(w0) > tol:
        return Report("majorant", Verdict.FAIL, w0, f"omega(0) = {w0} != 0")
    vals = np.asarray(w(t))
    if np.any(vals < 0):
        i = int(np.argmax(vals < 0))
        return Report("majorant", Verdict.FAIL, float(vals[i]), f"omega({t[i]}) < 0")
    hit = _pairwise_violation(t, vals, tol)
    if hit is not None:
        i, what = hit
        return Report("majorant", Verdict.FAIL, None,
                      f"{what} between t={t[i]:.6g} and t={t[i + 1]:.6g}",
                      {"pair": (float(t[i]), float(t[i + 1])),
                       "omega": (float(vals[i]), float(vals[i + 1]))})
    return Report("majorant", Verdict.PASS, None, f"axioms hold on {t.size} points")


def scaling_law_check(w: Majorant, nu, t, tol: float = 1e-12) -> Report:
    """``omega(nu t) >= nu omega(t)`` for ``0 < nu <= 1``, ``t > 0`` (vectorised)."""
    nu = np.asarray(nu, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    if np.any((nu <= 0) | (nu > 1)) or np.any(t <= 0):
        raise OutOfDomain("scaling law needs 0 < nu <= 1 and t > 0")
    lhs = np.asarray(w(nu * t))
    rhs = nu * np.asarray(w(t))
    gap = np.atleast_1d(rhs - lhs - tol)
    worst = int(np.argmax(gap))
    if gap[worst] > 0:
        return Report("scaling_law", Verdict.FAIL, float(gap[worst] + tol),
                      "omega(nu t) < nu omega(t)",
                      {"nu": float(np.ravel(nu * np.ones_like(t))[worst]),
                       "t": float(np.ravel(t * np.ones_like(nu))[worst])})
    return Report("scaling_law", Verdict.PASS, float(gap[worst] + tol), f"{gap.size} pairs")


def log_e_over_d(d):
    """``log(e / d)`` computed as ``1 - log d``."""
    return 1.0 - np.log(d)


def _log_d(r):
    r = np.asarray(r, dtype=np.float64)
    if np.any(r >= 1.0) or np.any(r < 0.0):
        raise OutOfDomain("eta needs 0 <= r < 1")
    return np.log1p(-r)


def eta(r, alpha: float, beta: float):
    """``(1-r)**alpha * log(e/(1-r))**beta``, evaluated in log space."""
    if not (alpha > 0) or beta > alpha:
        raise MalformedSpec("eta needs alpha > 0 and beta <= alpha")
    logd = _log_d(r)
    out = np.exp(alpha * logd + beta * np.log1p(-logd))
    return out[()] if out.ndim == 0 else out


def eta_monotonicity_check(alpha: float, beta: float, grid, w: Majorant | None = None,
                           tol: float = 1e-12) -> Report:
    """``eta`` and ``eta / omega(eta)`` nonincreasing along an ascending grid in (0,1)."""
    r = np.asarray(grid, dtype=np.float64).ravel()
    if r.size == 0:
        raise EmptyGrid("eta_monotonicity_check needs a nonempty grid")
    if np.any(np.diff(r) < 0) or np.any(r <= 0) or np.any(r >= 1):
        raise MalformedSpec("grid must be sorted ascending inside (0, 1)")
    w = w or Majorant.identity()
    e = np.atleast_1d(eta(r, alpha, beta))
    q = e / np.asarray(w(e))
    for name, seq in (("eta", e), ("eta/omega(eta)", q)):
        inc = np.diff(seq) - tol * np.maximum(1.0, np.abs(seq[:-1]))
        if inc.size and np.max(inc) > 0:
            i = int(np.argmax(inc))
            return Report("eta_monotonicity", Verdict.FAIL, float(np.max(inc)),
                          f"{name} increases between r={r[i]:.6g} and r={r[i + 1]:.6g}")
    return Report("eta_monotonicity", Verdict.PASS, None, f"{r.size} radii")
