"""Hot loops: brute-force planarity checks and coefficient-space sweeps.

A function f on GF(2^n) is planar when x -> f(x+a) + f(x) + a*x is a
bijection for every nonzero a. Given the value table of f and the field's
log/antilog tables, the check is a tight integer loop, so it ships in two
interchangeable backends:

  * numba @njit kernels (the default whenever numba imports), and
  * vectorized numpy, selected by setting PLANAR2_NO_NUMBA=1.

Both backends take the same arrays and return the same answers;
benchmarks/bench_kernels.py times them against each other.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    njit = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not os.environ.get("PLANAR2_NO_NUMBA")


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

_A_CHUNK = 256  # rows of the (a, x) value matrix processed at once


def planar_check_numpy(fvals: np.ndarray, logt: np.ndarray, expt: np.ndarray) -> bool:
    n_ord = fvals.shape[0]
    xs = np.arange(n_ord, dtype=np.int64)
    logx = logt[xs[1:]]
    for a0 in range(1, n_ord, _A_CHUNK):
        aa = np.arange(a0, min(a0 + _A_CHUNK, n_ord), dtype=np.int64)[:, None]
        prod = np.zeros((aa.shape[0], n_ord), dtype=np.int64)
        prod[:, 1:] = expt[logt[aa] + logx[None, :]]
        vals = fvals[xs[None, :] ^ aa] ^ fvals[None, :] ^ prod
        vals.sort(axis=1)
        if not np.array_equal(vals, np.broadcast_to(xs, vals.shape)):
            return False
    return True


def planar_sweep_numpy(pows: np.ndarray, coeffs: np.ndarray,
                       logt: np.ndarray, expt: np.ndarray) -> np.ndarray:
    nrows, nterms = coeffs.shape
    n_ord = pows.shape[1]
    fvals = np.zeros((nrows, n_ord), dtype=np.int64)
    for t in range(nterms):
        c = coeffs[:, t][:, None]
        p = pows[t][None, :]
        nz = (c != 0) & (p != 0)
        contrib = np.zeros((nrows, n_ord), dtype=np.int64)
        cb, pb = np.broadcast_arrays(c, p)
        contrib[nz] = expt[logt[cb[nz]] + logt[pb[nz]]]
        fvals ^= contrib
    xs = np.arange(n_ord, dtype=np.int64)
    alive = np.arange(nrows)
    out = np.zeros(nrows, dtype=bool)
    for a in range(1, n_ord):
        if alive.size == 0:
            break
        prod = np.zeros(n_ord, dtype=np.int64)
        prod[1:] = expt[logt[a] + logt[xs[1:]]]
        sub = fvals[alive]
        vals = sub[:, xs ^ a] ^ sub ^ prod[None, :]
        vals.sort(axis=1)
        ok = (vals == xs[None, :]).all(axis=1)
        alive = alive[ok]
    out[alive] = True
    return out


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _planar_check_njit(fvals, logt, expt):  # pragma: no cover - jitted
        n_ord = fvals.shape[0]
        p1 = n_ord - 1
        seen = np.zeros(n_ord, dtype=np.int64)
        for a in range(1, n_ord):
            la = logt[a]
            for x in range(n_ord):
                if x == 0:
                    v = fvals[a] ^ fvals[0]
                else:
                    s = la + logt[x]
                    if s >= p1:
                        s -= p1
                    v = fvals[x ^ a] ^ fvals[x] ^ expt[s]
                if seen[v] == a:
                    return False
                seen[v] = a
        return True

    @njit(cache=True, nogil=True)
    def _planar_sweep_njit(pows, coeffs, logt, expt):  # pragma: no cover - jitted
        nrows, nterms = coeffs.shape
        n_ord = pows.shape[1]
        p1 = n_ord - 1
        out = np.zeros(nrows, dtype=np.bool_)
        fvals = np.zeros(n_ord, dtype=np.int64)
        seen = np.zeros(n_ord, dtype=np.int64)
        epoch = 0
        for r in range(nrows):
            for x in range(n_ord):
                acc = 0
                for t in range(nterms):
                    c = coeffs[r, t]
                    p = pows[t, x]
                    if c != 0 and p != 0:
                        s = logt[c] + logt[p]
                        if s >= p1:
                            s -= p1
                        acc ^= expt[s]
                fvals[x] = acc
            planar = True
            for a in range(1, n_ord):
                epoch += 1
                la = logt[a]
                ok = True
                for x in range(n_ord):
                    if x == 0:
                        v = fvals[a] ^ fvals[0]
                    else:
                        s = la + logt[x]
                        if s >= p1:
                            s -= p1
                        v = fvals[x ^ a] ^ fvals[x] ^ expt[s]
                    if seen[v] == epoch:
                        ok = False
                        break
                    seen[v] = epoch
                if not ok:
                    planar = False
                    break
            out[r] = planar
        return out

    def planar_check_numba(fvals, logt, expt) -> bool:
        return bool(_planar_check_njit(fvals, logt, expt))

    def planar_sweep_numba(pows, coeffs, logt, expt) -> np.ndarray:
        return _planar_sweep_njit(pows, coeffs, logt, expt)

else:  # pragma: no cover - exercised only without numba installed
    planar_check_numba = None
    planar_sweep_numba = None


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def planar_check_table(spec, fvals: np.ndarray) -> bool:
    """True iff the tabulated f is planar over spec's field."""
    fvals = np.ascontiguousarray(fvals, dtype=np.int64)
    if USE_NUMBA:
        return planar_check_numba(fvals, spec.log, spec.exp)
    return planar_check_numpy(fvals, spec.log, spec.exp)


def planar_sweep(spec, exponents: list[int], coeffs: np.ndarray) -> np.ndarray:
    """Planarity mask for many coefficient rows of a fixed monomial shape.

    Row r encodes f(x) = sum_t coeffs[r, t] * x^exponents[t].
    """
    pows = np.stack([spec.pow_table(e) for e in exponents])
    coeffs = np.ascontiguousarray(coeffs, dtype=np.int64)
    if USE_NUMBA:
        return planar_sweep_numba(pows, coeffs, spec.log, spec.exp)
    return planar_sweep_numpy(pows, coeffs, spec.log, spec.exp)


def warmup():
    """Force jit compilation on a toy field so timed runs exclude it."""
    from . import fields

    spec = fields.field(2)
    planar_check_table(spec, np.zeros(4, dtype=np.int64))
    planar_sweep(spec, [3], np.arange(4, dtype=np.int64)[:, None])
