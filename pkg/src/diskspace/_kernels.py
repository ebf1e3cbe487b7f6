"""Hot numeric loops, compiled with numba when available.

Every kernel has a pure-numpy twin with the same signature.  The public
names (``horner``, ``gap``, ``lacunary``, ``pair_quotient_profile``) are bound to the
numba versions unless ``DISKSPACE_DISABLE_NUMBA`` is set to a truthy value or
numba cannot be imported.  Both twins stay importable so tests and the
benchmark can compare them directly.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda func: func


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not _flag("DISKSPACE_DISABLE_NUMBA")

# omega kind codes shared with majorants.Majorant.kernel_args()
OMEGA_IDENTITY, OMEGA_POWER, OMEGA_LOGSMOOTHED, OMEGA_TABLE = 0, 1, 2, 3


def set_threads(n: int | None = None) -> None:
    """Cap numba's thread pool (``DISKSPACE_THREADS`` when ``n`` is None)."""
    if n is None:
        raw = os.environ.get("DISKSPACE_THREADS")
        if not raw:
            return
        n = int(raw)
    if HAVE_NUMBA:
        numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))


# ---------------------------------------------------------------- Horner

def horner_numpy(coeffs, z):
    """Return ``(p(z), p'(z), p''(z))`` for ``p = sum coeffs[n] z**n``."""
    z = np.asarray(z, dtype=np.complex128)
    p = np.zeros_like(z)
    d1 = np.zeros_like(z)
    d2 = np.zeros_like(z)
    for a in coeffs[::-1]:
        d2 = d2 * z + 2.0 * d1
        d1 = d1 * z + p
        p = p * z + a
    return p, d1, d2


@njit(cache=True)
def _horner_flat(coeffs, z):
    n = z.shape[0]
    p = np.zeros(n, dtype=np.complex128)
    d1 = np.zeros(n, dtype=np.complex128)
    d2 = np.zeros(n, dtype=np.complex128)
    m = coeffs.shape[0]
    for i in range(n):
        zi = z[i]
        pv = 0j
        v1 = 0j
        v2 = 0j
        for k in range(m - 1, -1, -1):
            v2 = v2 * zi + 2.0 * v1
            v1 = v1 * zi + pv
            pv = pv * zi + coeffs[k]
        p[i] = pv
        d1[i] = v1
        d2[i] = v2
    return p, d1, d2


def horner_numba(coeffs, z):
    z = np.asarray(z, dtype=np.complex128)
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    p, d1, d2 = _horner_flat(c, np.ascontiguousarray(z.ravel()))
    return p.reshape(z.shape), d1.reshape(z.shape), d2.reshape(z.shape)


# ---------------------------------------------------------------- gap (lacunary) sums

def gap_numpy(weights, z):
    """Value, first and second derivative of ``sum_n c_n z**(2**n)``.

    Powers are built by repeated squaring so no division by ``z`` occurs.
    """
    z = np.asarray(z, dtype=np.complex128)
    w = z.copy()                      # z**(2**n)
    pm1 = np.ones_like(z)             # z**(2**n - 1)
    pm2 = np.ones_like(z)             # z**(2**n - 2), valid from n = 1
    p = np.zeros_like(z)
    d1 = np.zeros_like(z)
    d2 = np.zeros_like(z)
    for n, c in enumerate(np.asarray(weights, dtype=np.complex128)):
        e = float(2 ** n)
        p = p + c * w
        d1 = d1 + (c * e) * pm1
        if n >= 1:
            d2 = d2 + (c * e * (e - 1.0)) * pm2
            pm2 = pm2 * w
        pm1 = pm1 * w
        w = w * w
    return p, d1, d2


@njit(cache=True)
def _gap_flat(weights, z):
    n = z.shape[0]
    p = np.zeros(n, dtype=np.complex128)
    d1 = np.zeros(n, dtype=np.complex128)
    d2 = np.zeros(n, dtype=np.complex128)
    m = weights.shape[0]
    for i in range(n):
        w = z[i]
        pm1 = 1.0 + 0j
        pm2 = 1.0 + 0j
        pv = 0j
        v1 = 0j
        v2 = 0j
        e = 1.0
        for k in range(m):
            c = weights[k]
            pv += c * w
            v1 += c * e * pm1
            if k >= 1:
                v2 += c * e * (e - 1.0) * pm2
                pm2 = pm2 * w
            pm1 = pm1 * w
            w = w * w
            e *= 2.0
        p[i] = pv
        d1[i] = v1
        d2[i] = v2
    return p, d1, d2


def gap_numba(weights, z):
    z = np.asarray(z, dtype=np.complex128)
    c = np.ascontiguousarray(weights, dtype=np.complex128)
    p, d1, d2 = _gap_flat(c, np.ascontiguousarray(z.ravel()))
    return p.reshape(z.shape), d1.reshape(z.shape), d2.reshape(z.shape)


def lacunary_numpy(n_terms, z):
    """Unit-weight gap series ``sum_{n<N} z**(2**n)`` and two derivatives."""
    return gap_numpy(np.ones(int(n_terms)), z)


def lacunary_numba(n_terms, z):
    return gap_numba(np.ones(int(n_terms)), z)


# ---------------------------------------------------------------- majorant evaluation

def omega_numpy(kind, param, kt, kw, t):
    t = np.asarray(t, dtype=np.float64)
    if kind == OMEGA_IDENTITY:
        return t.copy()
    if kind == OMEGA_POWER:
        return np.power(t, param)
    if kind == OMEGA_LOGSMOOTHED:
        out = np.ones_like(t)
        small = t < 1.0
        ts = t[small]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[small] = np.where(ts > 0.0, ts * (1.0 - np.log(np.where(ts > 0, ts, 1.0))), 0.0)
        return out
    # piecewise linear through knots, constant past the last knot
    return np.interp(t, kt, kw, right=kw[-1])


@njit(cache=True)
def _omega_scalar(kind, param, kt, kw, t):
    if kind == 0:
        return t
    if kind == 1:
        return t ** param
    if kind == 2:
        if t >= 1.0:
            return 1.0
        if t <= 0.0:
            return 0.0
        return t * (1.0 - np.log(t))
    m = kt.shape[0]
    if t >= kt[m - 1]:
        return kw[m - 1]
    j = np.searchsorted(kt, t, side="right") - 1
    if j < 0:
        return kw[0]
    frac = (t - kt[j]) / (kt[j + 1] - kt[j])
    return kw[j] + frac * (kw[j + 1] - kw[j])


# ---------------------------------------------------------------- pair quotient

@njit(cache=True)
def _pair_profile_nb(P, F, ds, das, group, n_groups, kind, param, kt, kw, outer_only):
    best = np.zeros(n_groups)
    bi = -np.ones(n_groups, dtype=np.int64)
    bj = -np.ones(n_groups, dtype=np.int64)
    n = P.shape[0]
    px, py = P.real.copy(), P.imag.copy()
    fx, fy = F.real.copy(), F.imag.copy()
    for i in range(n):
        g = group[i]
        # row maximum first, so omega and the sqrt run once per row winner
        row_best = -1.0
        row_j = -1
        for j in range(n):
            if i == j or (outer_only and group[j] > g):
                continue
            dx = px[i] - px[j]
            dy = py[i] - py[j]
            dz2 = dx * dx + dy * dy
            if dz2 == 0.0:
                continue
            ex = fx[i] - fx[j]
            ey = fy[i] - fy[j]
            # omega is not monotone in j, so it cannot be hoisted out of the loop
            q = np.sqrt((ex * ex + ey * ey) / dz2) * _omega_scalar(kind, param, kt, kw,
                                                                  ds[i] * das[j])
            if q > row_best:
                row_best = q
                row_j = j
        if row_j >= 0 and (row_best > best[g] or bi[g] < 0):
            best[g] = row_best
            bi[g] = i
            bj[g] = row_j
    return best, bi, bj


def pair_quotient_profile_numba(P, F, ds, das, group, n_groups, kind, param, kt, kw,
                                outer_only=False):
    """Per-group sup of ``|F_i-F_j| * omega(ds_i*das_j) / |P_i-P_j|`` over ordered pairs.

    Group is taken from the first point of the pair.  With ``outer_only`` a
    pair counts only when its first point lies in the higher (or equal) group,
    so group ``k`` collects pairs whose outer point sits in ring ``k``.
    Returns ``(best, i_index, j_index)`` arrays of length ``n_groups``.
    """
    return _pair_profile_nb(
        np.ascontiguousarray(P, dtype=np.complex128),
        np.ascontiguousarray(F, dtype=np.complex128),
        np.ascontiguousarray(ds, dtype=np.float64),
        np.ascontiguousarray(das, dtype=np.float64),
        np.ascontiguousarray(group, dtype=np.int64),
        int(n_groups), int(kind), float(param),
        np.ascontiguousarray(kt, dtype=np.float64),
        np.ascontiguousarray(kw, dtype=np.float64),
        bool(outer_only),
    )


def pair_quotient_profile_numpy(P, F, ds, das, group, n_groups, kind, param, kt, kw,
                                outer_only=False, chunk=256):
    P = np.asarray(P, dtype=np.complex128)
    F = np.asarray(F, dtype=np.complex128)
    group = np.asarray(group, dtype=np.int64)
    ds = np.asarray(ds, dtype=np.float64)
    das = np.asarray(das, dtype=np.float64)
    best = np.zeros(n_groups)
    bi = -np.ones(n_groups, dtype=np.int64)
    bj = -np.ones(n_groups, dtype=np.int64)
    n = P.shape[0]
    for start in range(0, n, chunk):
        rows = np.arange(start, min(n, start + chunk))
        dz = np.abs(P[rows, None] - P[None, :])
        om = omega_numpy(kind, param, kt, kw, ds[rows, None] * das[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.abs(F[rows, None] - F[None, :]) * om / dz
        q[dz == 0.0] = -1.0
        if outer_only:
            q[group[None, :] > group[rows, None]] = -1.0
        jmax = np.argmax(q, axis=1)
        qmax = q[np.arange(rows.size), jmax]
        # sequential per-row scan keeps the first maximiser, as the compiled loop does
        for r, i in enumerate(rows):
            g = group[i]
            if qmax[r] < 0:
                continue
            if qmax[r] > best[g] or bi[g] < 0:
                best[g] = qmax[r]
                bi[g] = i
                bj[g] = jmax[r]
    return best, bi, bj


if USE_NUMBA:
    horner = horner_numba
    gap = gap_numba
    lacunary = lacunary_numba
    pair_quotient_profile = pair_quotient_profile_numba
else:
    horner = horner_numpy
    gap = gap_numpy
    lacunary = lacunary_numpy
    pair_quotient_profile = pair_quotient_profile_numpy
