"""Numba and numpy kernel paths compute the same numbers."""

import numpy as np
import pytest

from wagefloor import kernels

pytestmark = pytest.mark.skipif(
    not kernels._HAVE_NUMBA, reason="numba not installed; single path only")


def _random_dist(rng, n):
    wages = np.sort(rng.uniform(1.0, 80.0, n))
    wages = np.unique(wages)
    masses = rng.uniform(0.01, 5.0, len(wages))
    return wages, masses


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_compress_parity(seed):
    rng = np.random.default_rng(seed)
    for _ in range(200):
        wages, _ = _random_dist(rng, rng.integers(1, 20))
        old_min = wages[0]
        ceiling = wages[-1] * rng.uniform(1.01, 2.0)
        new_min = old_min + rng.uniform(0.0, 0.9) * (ceiling - old_min)
        a = kernels.compress_wages_np(wages, old_min, new_min, ceiling)
        b = kernels.compress_wages_nb(wages, old_min, new_min, ceiling)
        np.testing.assert_allclose(a, b, rtol=1e-13, atol=0.0)


def test_reduction_parity():
    rng = np.random.default_rng(42)
    for _ in range(200):
        wages, masses = _random_dist(rng, rng.integers(1, 50))
        assert kernels.weighted_mean_np(wages, masses) == pytest.approx(
            kernels.weighted_mean_nb(wages, masses), rel=1e-12)
        assert kernels.weighted_median_np(wages, masses) == \
            kernels.weighted_median_nb(wages, masses)
        assert kernels.weighted_gini_np(wages, masses) == pytest.approx(
            kernels.weighted_gini_nb(wages, masses), rel=1e-10, abs=1e-12)
        assert kernels.wage_bill_np(wages, masses) == pytest.approx(
            kernels.wage_bill_nb(wages, masses), rel=1e-12)


def test_dispatch_reflects_environment():
    """The active path follows WAGEFLOOR_PURE_NUMPY at import time."""
    import os
    import subprocess
    import sys

    code = ("import wagefloor.kernels as k; "
            "print(k.NUMBA_ENABLED, k.compress_wages is k.compress_wages_np)")
    env = dict(os.environ, WAGEFLOOR_PURE_NUMPY="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "True"]
    env.pop("WAGEFLOOR_PURE_NUMPY")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["True", "False"]
