"""Independent oracles used by the test suite.

Everything here is deliberately written by a different route than the library
code it checks: pairing enumeration instead of recursion, quadrature instead
of series, brute force instead of closed forms.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad


def isserlis_xy_moment(a: int, b: int, rho: float) -> float:
    """Gaussian product moment by explicit enumeration of pairings.

    ``E[X^a Y^b]`` equals the sum over perfect matchings of the a+b slots of
    the product of pair covariances (1 for like pairs, rho for mixed).
    """
    labels = [0] * a + [1] * b
    if len(labels) % 2:
        return 0.0

    def rec(items):
        if not items:
            return 1.0
        first = items[0]
        total = 0.0
        for j in range(1, len(items)):
            cov = rho if items[j] != first else 1.0
            total += cov * rec(items[1:j] + items[j + 1 :])
        return total

    return rec(tuple(labels))


def gauss_hermite_pearson_moment(idx, rho: float, nodes: int = 24) -> float:
    """Joint central moment of the five correlation variables by quadrature.

    Uses a tensor Gauss-Hermite rule on the conditional construction
    X = sqrt(2) s, Y = sqrt(2) (rho s + sqrt(1-rho^2) t).
    """
    i1, i2, i3, i4, i5 = idx
    t, w = np.polynomial.hermite.hermgauss(nodes)
    s_grid, t_grid = np.meshgrid(t, t, indexing="ij")
    w_grid = np.outer(w, w)
    x = math.sqrt(2.0) * s_grid
    y = math.sqrt(2.0) * (rho * s_grid + math.sqrt(1.0 - rho * rho) * t_grid)
    g = (
        x**i1
        * y**i2
        * (x * x - 1.0) ** i3
        * (y * y - 1.0) ** i4
        * (x * y - rho) ** i5
    )
    return float(np.sum(w_grid * g) / math.pi)


def euler_2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric value from Euler's integral representation.

    Valid for c > b > 0.  The substitution t = u**2 removes the endpoint
    singularity of the t**(b-1) factor for b = 1/2.
    """
    if not c > b > 0:
        raise ValueError("Euler's integral needs c > b > 0")
    coef = math.exp(math.lgamma(c) - math.lgamma(b) - math.lgamma(c - b))

    def integrand(u):
        t = u * u
        return 2.0 * u ** (2.0 * b - 1.0) * (1.0 - t) ** (c - b - 1.0) * (1.0 - x * t) ** (-a)

    value, _ = quad(integrand, 0.0, 1.0, limit=200, epsabs=1e-13, epsrel=1e-13)
    return coef * value


def brute_force_interval_error(diff: np.ndarray) -> float:
    """Largest |D_j - D_i| over all grid index pairs, O(N^2)."""
    diff = np.asarray(diff, dtype=float)
    return float(np.max(np.abs(diff[None, :] - diff[:, None])))


def plugin_r(deltas, rho: float) -> float:
    """The plug-in correlation statistic as an explicit function of the five
    centered sample means."""
    d1, d2, d3, d4, d5 = deltas
    numerator = rho + d5 - d1 * d2
    return numerator / math.sqrt((1.0 + d3 - d1 * d1) * (1.0 + d4 - d2 * d2))
