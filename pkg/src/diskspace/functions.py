"""Complex-valued functions on the unit disk with Wirtinger calculus.

All families accept scalar or array arguments and return numpy values of the
same shape.  Closed-form families return exact derivatives; the numeric
wrapper uses fourth-order central differences whose step shrinks with the
distance to the unit circle.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple

import numpy as np

from . import _kernels
from .errors import MalformedSpec, OutOfDomain, StepUnderflow

__all__ = [
    "DiskFunction", "PowerSeries", "Lacunary", "GapSeries", "HarmonicPair", "YukawaExp",
    "NumericWrapper", "JacobianNorms", "construct", "numeric_wirtinger",
    "numeric_laplacian", "constant", "neg_log_series", "geometric_series",
]


class JacobianNorms(NamedTuple):
    op: np.ndarray   # |f_z| + |f_zbar|
    co: np.ndarray   # ||f_z| - |f_zbar||


def _as_points(z, strict=True):
    z = np.asarray(z, dtype=np.complex128)
    if strict and z.size and not np.all(np.abs(z) < 1.0):
        bad = z.ravel()[np.argmax(np.abs(z.ravel()))]
        raise OutOfDomain(f"point {complex(bad)} is not in the open unit disk")
    return z


def _ret(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


@dataclass(frozen=True, eq=False)
class DiskFunction:
    """Base class.  ``factor`` multiplies the whole function (and derivatives)."""

    factor: complex = field(default=1.0 + 0j, kw_only=True)

    is_analytic = False
    is_harmonic = False
    has_exact_derivatives = True

    # family hooks, all vectorised over complex arrays
    def _value(self, z):
        raise NotImplementedError

    def _first(self, z):
        raise NotImplementedError

    def _second(self, z):
        """Return ``(f_zz, f_zzbar, f_zbarzbar)``."""
        raise NotImplementedError

    def _lap_first(self, z):
        """Return ``((Delta f)_z, (Delta f)_zbar)``."""
        raise NotImplementedError

    # --- public API
    @property
    def degree(self) -> int | None:
        return None

    @property
    def truncated(self) -> bool:
        return False

    @property
    def resolvable_radius(self) -> float:
        """Largest radius at which a truncated series still tracks its limit."""
        if not self.truncated or not self.degree:
            return 1.0
        return max(0.0, 1.0 - 2.0 / self.degree)

    def __call__(self, z):
        z = _as_points(z)
        return _ret(self.factor * self._value(z))

    def wirtinger(self, z):
        z = _as_points(z)
        fz, fzb = self._first(z)
        return _ret(self.factor * fz), _ret(self.factor * fzb)

    def second_wirtinger(self, z):
        z = _as_points(z)
        return tuple(_ret(self.factor * v) for v in self._second(z))

    def laplacian(self, z):
        z = _as_points(z)
        return _ret(4.0 * self.factor * self._second(z)[1])

    def laplacian_wirtinger(self, z):
        z = _as_points(z)
        return tuple(_ret(self.factor * v) for v in self._lap_first(z))

    def jacobian_norms(self, z) -> JacobianNorms:
        fz, fzb = self.wirtinger(z)
        a, b = np.abs(fz), np.abs(fzb)
        return JacobianNorms(_ret(a + b), _ret(np.abs(a - b)))

    def scaled(self, c: complex) -> "DiskFunction":
        return replace(self, factor=self.factor * complex(c))

    @property
    def capabilities(self) -> dict:
        return {"isAnalytic": self.is_analytic, "isHarmonic": self.is_harmonic,
                "hasExactDerivatives": self.has_exact_derivatives}


# --------------------------------------------------------------------- power series

def _check_growth(coeffs: np.ndarray) -> None:
    """Reject coefficient tails that grow geometrically (radius < 1).

    Fits ``log|a_n| = c + n log(rho)`` over the nonzero coefficients in the
    upper half of the degree range.  Polynomial growth ``n**k`` has slope
    about ``k/n``, so up to quadratic growth is tolerated, and the slope must
    also clear three standard errors to count.
    """
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return
    tail = nz[nz >= nz[-1] / 2]
    if tail.size < 4:
        return
    n = tail.astype(float)
    y = np.log(np.abs(coeffs[tail]))
    A = np.vstack([np.ones_like(n), n]).T
    sol, res, *_ = np.linalg.lstsq(A, y, rcond=None)
    slope = sol[1]
    dof = max(1, n.size - 2)
    resid = y - A @ sol
    stderr = math.sqrt(float(resid @ resid) / dof / float(((n - n.mean()) ** 2).sum()))
    allowance = 2.0 / n.mean()
    if slope > allowance + 3.0 * stderr and slope > 0:
        raise MalformedSpec(
            f"coefficients grow like rho**n with rho ~ {math.exp(slope):.3g} > 1; "
            "the series would not converge on the whole disk")


def _coerce_coeffs(coeffs) -> np.ndarray:
    try:
        arr = np.array([_parse_complex(c) for c in coeffs], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise MalformedSpec(f"bad coefficient list: {exc}") from None
    if arr.size == 0:
        raise MalformedSpec("coefficient list is empty")
    if not np.all(np.isfinite(arr)):
        raise MalformedSpec("non-finite coefficient")
    return arr


def _parse_complex(c) -> complex:
    if isinstance(c, (list, tuple)):
        if len(c) != 2:
            raise ValueError(f"complex pair must have two entries, got {c!r}")
        return complex(float(c[0]), float(c[1]))
    if isinstance(c, str):
        return complex(c.replace(" ", "").replace("i", "j"))
    return complex(c)


@dataclass(frozen=True, eq=False)
class PowerSeries(DiskFunction):
    """``f(z) = sum a_n z**n`` evaluated by Horner's rule."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, complex))
    is_truncated: bool = False

    is_analytic = True
    is_harmonic = True

    def __post_init__(self):
        arr = _coerce_coeffs(self.coeffs)
        _check_growth(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self):
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    @property
    def truncated(self):
        return self.is_truncated

    def _value(self, z):
        return _kernels.horner(self.coeffs, z)[0]

    def derivatives(self, z):
        return _kernels.horner(self.coeffs, z)

    def _first(self, z):
        _, d1, _ = _kernels.horner(self.coeffs, z)
        return d1, np.zeros_like(z)

    def _second(self, z):
        _, _, d2 = _kernels.horner(self.coeffs, z)
        zero = np.zeros_like(z)
        return d2, zero, zero

    def _lap_first(self, z):
        return np.zeros_like(z), np.zeros_like(z)


@dataclass(frozen=True, eq=False)
class Lacunary(DiskFunction):
    """Partial sum ``sum_{n=0}^{N-1} z**(2**n)`` of the gap series."""

    terms: int = 1

    is_analytic = True
    is_harmonic = True

    def __post_init__(self):
        if isinstance(self.terms, bool) or int(self.terms) != self.terms or self.terms < 1:
            raise MalformedSpec(f"lacunary term count must be an integer >= 1, got {self.terms!r}")
        if self.terms > 60:
            raise MalformedSpec("lacunary term count above 60 underflows double precision")
        object.__setattr__(self, "terms", int(self.terms))

    @property
    def degree(self):
        return 2 ** (self.terms - 1)

    @property
    def truncated(self):
        return True

    def derivatives(self, z):
        return _kernels.lacunary(self.terms, z)

    def _value(self, z):
        return _kernels.lacunary(self.terms, z)[0]

    def _first(self, z):
        return _kernels.lacunary(self.terms, z)[1], np.zeros_like(z)

    def _second(self, z):
        zero = np.zeros_like(z)
        return _kernels.lacunary(self.terms, z)[2], zero, zero

    def _lap_first(self, z):
        return np.zeros_like(z), np.zeros_like(z)


@dataclass(frozen=True, eq=False)
class GapSeries(DiskFunction):
    """Weighted gap series ``sum_n c_n z**(2**n)``, always treated as truncated."""

    weights: np.ndarray = field(default_factory=lambda: np.ones(1, complex))

    is_analytic = True
    is_harmonic = True

    def __post_init__(self):
        arr = _coerce_coeffs(self.weights)
        if arr.size > 60:
            raise MalformedSpec("gap series with more than 60 terms underflows double precision")
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)

    @property
    def degree(self):
        return 2 ** (self.weights.size - 1)

    @property
    def truncated(self):
        return True

    def _value(self, z):
        return _kernels.gap(self.weights, z)[0]

    def _first(self, z):
        return _kernels.gap(self.weights, z)[1], np.zeros_like(z)

    def _second(self, z):
        zero = np.zeros_like(z)
        return _kernels.gap(self.weights, z)[2], zero, zero

    def _lap_first(self, z):
        return np.zeros_like(z), np.zeros_like(z)


@dataclass(frozen=True, eq=False)
class HarmonicPair(DiskFunction):
    """``f = h + conj(g)`` with analytic ``h`` and ``g``."""

    h: DiskFunction = None
    g: DiskFunction = None

    is_harmonic = True

    def __post_init__(self):
        for name in ("h", "g"):
            part = getattr(self, name)
            if not isinstance(part, (PowerSeries, Lacunary)):
                raise MalformedSpec(f"harmonic pair component {name} must be a power series")

    @property
    def degree(self):
        return max(self.h.degree, self.g.degree)

    @property
    def truncated(self):
        return self.h.truncated or self.g.truncated

    def _value(self, z):
        return self.h._value(z) * self.h.factor + np.conj(self.g._value(z) * self.g.factor)

    def _first(self, z):
        hp = self.h._first(z)[0] * self.h.factor
        gp = self.g._first(z)[0] * self.g.factor
        return hp, np.conj(gp)

    def _second(self, z):
        hpp = self.h._second(z)[0] * self.h.factor
        gpp = self.g._second(z)[0] * self.g.factor
        return hpp, np.zeros_like(z), np.conj(gpp)

    def _lap_first(self, z):
        return np.zeros_like(z), np.zeros_like(z)


@dataclass(frozen=True, eq=False)
class YukawaExp(DiskFunction):
    """``f(z) = exp(sqrt(lam) * Re z)``, a solution of ``Delta f = lam f``."""

    lam: float = 0.0

    def __post_init__(self):
        lam = float(self.lam)
        if not math.isfinite(lam) or lam < 0:
            raise MalformedSpec(f"Yukawa parameter must be finite and >= 0, got {self.lam!r}")
        object.__setattr__(self, "lam", lam)

    @property
    def is_harmonic(self):
        return self.lam == 0.0

    @property
    def k(self) -> float:
        return math.sqrt(self.lam)

    def _value(self, z):
        return np.exp(self.k * z.real).astype(np.complex128)

    def _first(self, z):
        v = 0.5 * self.k * self._value(z)
        return v, v.copy()

    def _second(self, z):
        v = 0.25 * self.lam * self._value(z)
        return v, v.copy(), v.copy()

    def _lap_first(self, z):
        v = self.lam * 0.5 * self.k * self._value(z)
        return v, v.copy()


# --------------------------------------------------------------------- numeric wrapper

_STENCIL = ((2.0, -1.0), (1.0, 8.0), (-1.0, -8.0), (-2.0, 1.0))


def _step(z):
    d = 1.0 - np.abs(z)
    return np.maximum(1e-6, 1e-3 * d), d


def _dx(func, z, h, direction):
    acc = 0
    for k, w in _STENCIL:
        acc = acc + w * func(z + k * h * direction)
    return acc / (12.0 * h)


def _check_reach(z, h, d, depth):
    if np.any(2.0 * depth * h >= d):
        raise StepUnderflow(
            "point too close to the unit circle for a stable difference stencil "
            f"(min distance {float(np.min(d)):.3g})")


def numeric_wirtinger(func: Callable, z):
    """Central-difference ``(f_z, f_zbar)`` for any vectorised callable."""
    z = _as_points(z)
    h, d = _step(z)
    _check_reach(z, h, d, 1)
    fx = _dx(func, z, h, 1.0)
    fy = _dx(func, z, h, 1j)
    return _ret(0.5 * (fx - 1j * fy)), _ret(0.5 * (fx + 1j * fy))


def _second_partials(func, z, h):
    dxf = lambda p: _dx(func, p, h, 1.0)
    dyf = lambda p: _dx(func, p, h, 1j)
    fxx = _dx(dxf, z, h, 1.0)
    fyy = _dx(dyf, z, h, 1j)
    fxy = _dx(dxf, z, h, 1j)
    return fxx, fyy, fxy


def numeric_laplacian(func: Callable, z):
    z = _as_points(z)
    h, d = _step(z)
    _check_reach(z, h, d, 2)
    fxx, fyy, _ = _second_partials(func, z, h)
    return _ret(fxx + fyy)


def _vectorise(sampler):
    def call(z):
        z = np.asarray(z, dtype=np.complex128)
        try:
            out = np.asarray(sampler(z), dtype=np.complex128)
            if out.shape == z.shape:
                return out
        except Exception:
            pass
        return np.asarray(np.frompyfunc(lambda v: complex(sampler(v)), 1, 1)(z),
                          dtype=np.complex128)
    return call


@dataclass(frozen=True, eq=False)
class NumericWrapper(DiskFunction):
    """Arbitrary callable; derivatives by nested central differences.

    ``analytic``/``harmonic`` are caller-declared capability flags; they are
    trusted, not verified.
    """

    sampler: Callable = None
    analytic: bool = False
    harmonic: bool = False
    label: str = "numeric"

    has_exact_derivatives = False

    def __post_init__(self):
        if not callable(self.sampler):
            raise MalformedSpec("numeric wrapper needs a callable sampler")
        object.__setattr__(self, "_call", _vectorise(self.sampler))

    @property
    def is_analytic(self):
        return self.analytic

    @property
    def is_harmonic(self):
        return self.harmonic or self.analytic

    def _value(self, z):
        return self._call(z)

    def _first(self, z):
        h, d = _step(z)
        _check_reach(z, h, d, 1)
        fx = _dx(self._call, z, h, 1.0)
        fy = _dx(self._call, z, h, 1j)
        return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)

    def _second(self, z):
        h, d = _step(z)
        _check_reach(z, h, d, 2)
        fxx, fyy, fxy = _second_partials(self._call, z, h)
        return (0.25 * (fxx - fyy - 2j * fxy), 0.25 * (fxx + fyy),
                0.25 * (fxx - fyy + 2j * fxy))

    def _lap_first(self, z):
        h, d = _step(z)
        _check_reach(z, h, d, 3)

        def lap(p):
            fxx, fyy, _ = _second_partials(self._call, p, h)
            return fxx + fyy

        lx = _dx(lap, z, h, 1.0)
        ly = _dx(lap, z, h, 1j)
        return 0.5 * (lx - 1j * ly), 0.5 * (lx + 1j * ly)


# --------------------------------------------------------------------- convenience builders

def constant(c: complex) -> PowerSeries:
    return PowerSeries(coeffs=[c])


def neg_log_series(terms: int = 200) -> PowerSeries:
    """Truncation of ``-log(1-z) = sum_{n>=1} z**n / n``."""
    return PowerSeries(coeffs=[0.0] + [1.0 / n for n in range(1, terms + 1)], is_truncated=True)


def geometric_series(terms: int = 60) -> PowerSeries:
    """Truncation of ``1/(1-z)``."""
    return PowerSeries(coeffs=[1.0] * terms, is_truncated=True)


# --------------------------------------------------------------------- spec parsing

_ALLOWED_CALLS = {
    "abs": np.abs, "exp": np.exp, "log": np.log, "sqrt": np.sqrt, "sin": np.sin,
    "cos": np.cos, "conj": np.conj, "real": np.real, "imag": np.imag,
    "sinh": np.sinh, "cosh": np.cosh,
}
_ALLOWED_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load,
                  ast.Constant, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub,
                  ast.UAdd)


def compile_expression(expr: str) -> Callable:
    """Compile a small arithmetic expression in ``z`` (e.g. ``"abs(z)**2"``)."""
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise MalformedSpec(f"cannot parse expression {expr!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise MalformedSpec(f"disallowed syntax {type(node).__name__} in {expr!r}")
        if isinstance(node, ast.Name) and node.id not in _ALLOWED_CALLS and node.id not in ("z", "pi", "j"):
            raise MalformedSpec(f"unknown name {node.id!r} in {expr!r}")
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name)
                                               and node.func.id in _ALLOWED_CALLS):
            raise MalformedSpec(f"disallowed call in {expr!r}")
    code = compile(tree, "<expr>", "eval")
    env = dict(_ALLOWED_CALLS, pi=math.pi, j=1j, __builtins__={})

    def sampler(z):
        return eval(code, env, {"z": z})  # noqa: S307 - AST whitelisted above

    return sampler


def construct(spec) -> DiskFunction:
    """Build a :class:`DiskFunction` from a JSON-style dict.

    Families: ``power`` (``coeffs``, optional ``truncated``), ``lacunary``
    (``terms``), ``gap`` (``weights``), ``harmonic`` (``h``, ``g`` coefficient lists), ``yukawa``
    (``lambda``), ``numeric`` (``expr`` or ``sampler``), and the shortcuts
    ``identity``, ``constant`` (``value``), ``neglog`` and ``geometric``
    (``terms``).
    """
    if isinstance(spec, DiskFunction):
        return spec
    if isinstance(spec, str):
        spec = {"family": spec}
    if not isinstance(spec, dict) or "family" not in spec:
        raise MalformedSpec("function spec must be an object with a 'family' key")
    fam = str(spec["family"]).lower()
    scale = spec.get("scale")
    try:
        if fam in ("power", "powerseries", "polynomial"):
            f = PowerSeries(coeffs=spec["coeffs"], is_truncated=bool(spec.get("truncated", False)))
        elif fam == "lacunary":
            f = Lacunary(terms=spec.get("terms", spec.get("termCount")))
        elif fam in ("gap", "gapseries"):
            f = GapSeries(weights=spec["weights"])
        elif fam in ("harmonic", "harmonicpair"):
            f = HarmonicPair(h=PowerSeries(coeffs=spec["h"]), g=PowerSeries(coeffs=spec["g"]))
        elif fam in ("yukawa", "yukawaexp"):
            f = YukawaExp(lam=spec.get("lambda", spec.get("lam")))
        elif fam == "numeric":
            sampler = spec.get("sampler") or compile_expression(spec["expr"])
            f = NumericWrapper(sampler=sampler, analytic=bool(spec.get("analytic", False)),
                               harmonic=bool(spec.get("harmonic", False)),
                               label=spec.get("expr", "numeric"))
        elif fam == "identity":
            f = PowerSeries(coeffs=[0, 1])
        elif fam == "constant":
            f = constant(_parse_complex(spec.get("value", 1.0)))
        elif fam == "neglog":
            f = neg_log_series(int(spec.get("terms", 200)))
        elif fam == "geometric":
            f = geometric_series(int(spec.get("terms", 60)))
        else:
            raise MalformedSpec(f"unknown family {fam!r}")
    except KeyError as exc:
        raise MalformedSpec(f"family {fam!r} needs field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise MalformedSpec(str(exc)) from None
    if scale is not None:
        f = f.scaled(_parse_complex(scale))
    return f
