"""Integer kernels for the exhaustive lattice-box scan.

Everything is scaled to int64 so the scan is exact: for beta0 = p/q a class
(r, c, d) with d = d2/2 has twisted coordinates c' = cc/q, d' = dd/(2 q^2) with

    cc = q c - p r,   dd = q^2 d2 - 2 p q c + p^2 r.

The numba path is used unless TILTWALL_DISABLE_NUMBA is set or numba is
missing.  TILTWALL_THREADS caps the numba thread pool.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

DISABLED = os.environ.get("TILTWALL_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = HAVE_NUMBA and not DISABLED


def _configure_threads():
    cap = os.environ.get("TILTWALL_THREADS")
    if not (USE_NUMBA and cap):
        return
    n = max(1, min(int(cap), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)


def box_mask_numpy(bound, p, q, R, CC, DD, delta):
    r = np.arange(-bound, bound + 1, dtype=np.int64)[:, None, None]
    c = np.arange(-bound, bound + 1, dtype=np.int64)[None, :, None]
    d2 = np.arange(-2 * bound, 2 * bound + 1, dtype=np.int64)[None, None, :]
    q2 = q * q
    cc = q * c - p * r
    dd = q2 * d2 - 2 * p * q * c + p * p * r
    lattice = (c * c - d2) % 2 == 0
    c1 = (cc > 0) & (cc < CC)
    rd = r * dd
    c2 = (cc * cc - delta * q2 <= rd) & (rd <= cc * cc)
    ccg = CC - cc
    rdg = (R - r) * (DD - dd)
    c3 = (ccg * ccg - delta * q2 <= rdg) & (rdg <= ccg * ccg)
    x = r * CC - R * cc
    num = dd * CC - DD * cc
    c56 = (x != 0) & (np.sign(num) * np.sign(x) > 0)
    c4 = 2 * CC * cc - R * dd - DD * r >= 0
    return lattice & c1 & c2 & c3 & c4 & c56


if HAVE_NUMBA:

    @njit(parallel=True, cache=False)
    def _box_mask_numba(bound, p, q, R, CC, DD, delta):
        n = 2 * bound + 1
        nd = 4 * bound + 1
        out = np.zeros((n, n, nd), dtype=np.bool_)
        q2 = q * q
        for i in prange(n):
            r = i - bound
            for j in range(n):
                c = j - bound
                cc = q * c - p * r
                if cc <= 0 or cc >= CC:
                    continue
                ccg = CC - cc
                x = r * CC - R * cc
                if x == 0:
                    continue
                for k in range(nd):
                    d2 = k - 2 * bound
                    if (c * c - d2) % 2 != 0:
                        continue
                    dd = q2 * d2 - 2 * p * q * c + p * p * r
                    rd = r * dd
                    if rd > cc * cc or rd < cc * cc - delta * q2:
                        continue
                    rdg = (R - r) * (DD - dd)
                    if rdg > ccg * ccg or rdg < ccg * ccg - delta * q2:
                        continue
                    num = dd * CC - DD * cc
                    if (num > 0) != (x > 0) or num == 0:
                        continue
                    if 2 * CC * cc - R * dd - DD * r < 0:
                        continue
                    out[i, j, k] = True
        return out


def box_mask(bound, p, q, R, CC, DD, delta, backend=None):
    """Boolean mask over (r, c, d2) in [-B, B]^2 x [-2B, 2B] of classes passing all checks."""
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    args = tuple(int(a) for a in (bound, p, q, R, CC, DD, delta))
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        return _box_mask_numba(*(np.int64(a) for a in args))
    if backend == "numpy":
        return box_mask_numpy(*args)
    raise ValueError(f"unknown backend {backend!r}")


_configure_threads()
