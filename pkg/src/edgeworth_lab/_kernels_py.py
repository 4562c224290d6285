"""Pure-numpy implementations of the hot kernels.

These mirror the compiled Cython kernels in ``_kernels.pyx``: same stream
consumption for the sampler (so both backends see identical Gaussian draws
for a given bit generator) and the same term recurrence for the
hypergeometric series.  Results agree with the compiled backend to rounding;
reduction order differs, so agreement is close but not bitwise.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def mc_r_batch(bit_generator, n: int, rho: float, count: int) -> np.ndarray:
    """Plug-in correlation of ``count`` bivariate-normal samples of size ``n``.

    Consumes the stream as one ``(count, n)`` block of X draws followed by
    one block of noise draws; Y = rho*X + sqrt(1-rho**2)*noise.
    """
    g = np.random.Generator(bit_generator)
    x = g.standard_normal((count, n))
    y = rho * x + np.sqrt(1.0 - rho * rho) * g.standard_normal((count, n))
    mx = x.mean(axis=1)
    my = y.mean(axis=1)
    cov = (x * y).mean(axis=1) - mx * my
    var_x = (x * x).mean(axis=1) - mx * mx
    var_y = (y * y).mean(axis=1) - my * my
    r = cov / np.sqrt(var_x * var_y)
    return np.clip(r, -1.0, 1.0)


def hyp2f1(a: float, b: float, c: float, x: float, rtol: float, max_terms: int):
    """Gauss series at one point: returns (value, terms_used, converged)."""
    total = 1.0
    term = 1.0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * x
        total += term
        if abs(term) <= rtol * abs(total):
            return total, k + 1, True
    return total, max_terms, False


def hyp2f1_grid(a: float, b: float, c: float, xs: np.ndarray, rtol: float, max_terms: int):
    """Gauss series on a grid: returns (values, max_terms_used, all_converged).

    Each point stops adding terms once its own increment is below tolerance,
    matching the scalar recurrence term for term.
    """
    xs = np.asarray(xs, dtype=float)
    total = np.ones_like(xs)
    term = np.ones_like(xs)
    active = np.ones(xs.shape, dtype=bool)
    terms_used = np.zeros(xs.shape, dtype=np.int64)
    for k in range(max_terms):
        if not active.any():
            break
        factor = (a + k) * (b + k) / ((c + k) * (1.0 + k))
        term[active] = term[active] * factor * xs[active]
        total[active] = total[active] + term[active]
        terms_used[active] = k + 1
        still = np.abs(term[active]) > rtol * np.abs(total[active])
        active[active] = still
    return total, int(terms_used.max(initial=0)), not active.any()
