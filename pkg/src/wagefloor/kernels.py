"""Hot numeric kernels over binned wage distributions.

Every kernel exists twice: a pure-numpy implementation (``*_np``) and a
numba ``@njit`` compilation of the same loop. Which one the package uses
is decided once at import time:

* default: numba, compiled lazily with on-disk caching;
* ``WAGEFLOOR_PURE_NUMPY=1`` in the environment selects the numpy path;
* if numba is not importable the numpy path is used silently.

Both paths implement identical arithmetic on float64 arrays; they may
differ in the last ulp because numpy reduces pairwise while the jitted
loops reduce sequentially. Nothing downstream asserts bit-equality
across paths, only within a path.

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "compress_wages",
    "weighted_mean",
    "weighted_median",
    "weighted_gini",
    "wage_bill",
]

_PURE_NUMPY = os.environ.get("WAGEFLOOR_PURE_NUMPY", "") not in ("", "0")

try:  # pragma: no cover - exercised implicitly by the import
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    _HAVE_NUMBA = False

NUMBA_ENABLED = _HAVE_NUMBA and not _PURE_NUMPY


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def compress_wages_np(wages, old_min, new_min, ceiling):
    """Shift each bin wage up by ``(new_min - old_min) * k(w)``.

    Linear decay kernel: k(w) = clamp((ceiling - w) / (ceiling - old_min), 0, 1).
    The bin sitting exactly at ``old_min`` is assigned ``new_min`` outright so
    the new minimum is exact rather than a rounded ``old_min + delta``; bins
    at or above the ceiling are returned untouched, bit for bit.
    """
    delta = new_min - old_min
    k = (ceiling - wages) / (ceiling - old_min)
    k = np.clip(k, 0.0, 1.0)
    out = wages + delta * k
    out = np.where(wages == old_min, new_min, out)
    out = np.where(wages >= ceiling, wages, out)
    return out


def weighted_mean_np(wages, masses):
    return float(np.sum(wages * masses) / np.sum(masses))


def weighted_median_np(wages, masses):
    """Mass-weighted median with lower-bin tie-breaking.

    Returns the wage of the first bin whose cumulative mass reaches half
    the total. Assumes wages sorted ascending.
    """
    total = np.sum(masses)
    cum = np.cumsum(masses)
    idx = int(np.searchsorted(cum, 0.5 * total))
    if idx >= len(wages):
        idx = len(wages) - 1
    return float(wages[idx])


def weighted_gini_np(wages, masses):
    """Mass-weighted Gini over bins (each bin = identical wages).

    Trapezoid rule on the discrete Lorenz curve; exact for binned data.
    Assumes wages sorted ascending, total mass > 0, wages >= 0.
    """
    total_mass = np.sum(masses)
    total_wage = np.sum(wages * masses)
    if total_wage <= 0.0:
        return 0.0
    p = masses / total_mass
    share = wages * masses / total_wage
    lorenz = np.cumsum(share)
    prev = np.concatenate(([0.0], lorenz[:-1]))
    return float(1.0 - np.sum(p * (lorenz + prev)))


def wage_bill_np(wages, masses):
    return float(np.sum(wages * masses))


# ---------------------------------------------------------------------------
# numba implementations (same arithmetic, explicit loops)
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:
    _njit = numba.njit(cache=True)

    @_njit
    def _compress_wages_jit(wages, old_min, new_min, ceiling):
        n = wages.shape[0]
        out = np.empty(n, dtype=np.float64)
        delta = new_min - old_min
        span = ceiling - old_min
        for i in range(n):
            w = wages[i]
            if w == old_min:
                out[i] = new_min
            elif w >= ceiling:
                out[i] = w
            else:
                k = (ceiling - w) / span
                if k > 1.0:
                    k = 1.0
                elif k < 0.0:
                    k = 0.0
                out[i] = w + delta * k
        return out

    @_njit
    def _weighted_mean_jit(wages, masses):
        acc = 0.0
        tot = 0.0
        for i in range(wages.shape[0]):
            acc += wages[i] * masses[i]
            tot += masses[i]
        return acc / tot

    @_njit
    def _weighted_median_jit(wages, masses):
        tot = 0.0
        for i in range(masses.shape[0]):
            tot += masses[i]
        half = 0.5 * tot
        cum = 0.0
        for i in range(masses.shape[0]):
            cum += masses[i]
            if cum >= half:
                return wages[i]
        return wages[wages.shape[0] - 1]

    @_njit
    def _weighted_gini_jit(wages, masses):
        total_mass = 0.0
        total_wage = 0.0
        for i in range(wages.shape[0]):
            total_mass += masses[i]
            total_wage += wages[i] * masses[i]
        if total_wage <= 0.0:
            return 0.0
        acc = 0.0
        lorenz = 0.0
        for i in range(wages.shape[0]):
            prev = lorenz
            lorenz += wages[i] * masses[i] / total_wage
            acc += (masses[i] / total_mass) * (lorenz + prev)
        return 1.0 - acc

    @_njit
    def _wage_bill_jit(wages, masses):
        acc = 0.0
        for i in range(wages.shape[0]):
            acc += wages[i] * masses[i]
        return acc

    def compress_wages_nb(wages, old_min, new_min, ceiling):
        return _compress_wages_jit(wages, old_min, new_min, ceiling)

    def weighted_mean_nb(wages, masses):
        return float(_weighted_mean_jit(wages, masses))

    def weighted_median_nb(wages, masses):
        return float(_weighted_median_jit(wages, masses))

    def weighted_gini_nb(wages, masses):
        return float(_weighted_gini_jit(wages, masses))

    def wage_bill_nb(wages, masses):
        return float(_wage_bill_jit(wages, masses))


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:
    compress_wages = compress_wages_nb
    weighted_mean = weighted_mean_nb
    weighted_median = weighted_median_nb
    weighted_gini = weighted_gini_nb
    wage_bill = wage_bill_nb
else:
    compress_wages = compress_wages_np
    weighted_mean = weighted_mean_np
    weighted_median = weighted_median_np
    weighted_gini = weighted_gini_np
    wage_bill = wage_bill_np
