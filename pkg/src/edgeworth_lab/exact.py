"""Ground-truth oracles: the exact density of the sample correlation
coefficient under bivariate-normal sampling, and a seeded Monte Carlo sampler.

The closed-form density is treated as a hypothesis to be validated inside
this repository (normalization and Monte Carlo agreement), not as revealed
truth; see the test suite.  It is evaluated in log space so large sample
sizes cannot overflow the prefactor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError, NumericError, UsageError

#: Relative-increment stopping tolerance of the hypergeometric series.
HYP2F1_RTOL = 1e-14
#: Hard iteration cap; exceeding it raises :class:`NumericError`.
HYP2F1_MAX_TERMS = 100_000

#: Replicates per sub-seeded batch of the Monte Carlo sampler.  Each batch
#: draws from ``PCG64(SeedSequence(seed).spawn(...)[batch])``, so the output
#: is reproducible for a given seed and batches could run concurrently.
MC_BATCH = 1 << 14


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError("log_gamma requires a positive argument")
    return math.lgamma(x)


def gauss_2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric series ``2F1(a, b; c; x)`` for ``0 <= x < 1``.

    Terms are summed until the relative increment drops below 1e-14; failing
    to converge within 100000 terms raises :class:`NumericError` carrying the
    term count.
    """
    if not c > 0:
        raise UsageError("series parameter c must be positive")
    if not 0.0 <= x < 1.0:
        raise DomainError("series argument must lie in [0, 1)")
    value, terms, converged = _backend.hyp2f1(a, b, c, x, HYP2F1_RTOL, HYP2F1_MAX_TERMS)
    if not converged:
        raise NumericError(
            f"hypergeometric series did not converge within {terms} terms", terms=terms
        )
    return value


def gauss_2f1_with_terms(a: float, b: float, c: float, x: float):
    """Like :func:`gauss_2f1` but also returns the number of terms summed."""
    if not c > 0:
        raise UsageError("series parameter c must be positive")
    if not 0.0 <= x < 1.0:
        raise DomainError("series argument must lie in [0, 1)")
    value, terms, converged = _backend.hyp2f1(a, b, c, x, HYP2F1_RTOL, HYP2F1_MAX_TERMS)
    if not converged:
        raise NumericError(
            f"hypergeometric series did not converge within {terms} terms", terms=terms
        )
    return value, terms


def hotelling_pdf_r(n: int, rho: float, r):
    """Exact density of the sample correlation coefficient at ``r``.

    ``f(r) = (n-2) Gamma(n-1) (1-rho^2)^((n-1)/2) (1-r^2)^((n-4)/2)
             / (sqrt(2 pi) Gamma(n-1/2) (1-rho*r)^(n-3/2))
             * 2F1(1/2, 1/2; n-1/2; (1+rho*r)/2)``

    Accepts a scalar or an array of ``r`` values.
    """
    n = int(n)
    if n < 5:
        raise UsageError("the exact density is used for n >= 5")
    if not -1.0 < rho < 1.0:
        raise DomainError("correlation must lie strictly inside (-1, 1)")
    r_arr = np.asarray(r, dtype=float)
    if np.any(np.abs(r_arr) >= 1.0):
        raise DomainError("correlation values must lie strictly inside (-1, 1)")

    log_pref = (
        math.log(n - 2.0)
        + log_gamma(n - 1.0)
        - 0.5 * math.log(2.0 * math.pi)
        - log_gamma(n - 0.5)
        + 0.5 * (n - 1.0) * math.log1p(-rho * rho)
    )
    flat = np.atleast_1d(r_arr).ravel()
    values, _, converged = _backend.hyp2f1_grid(
        0.5, 0.5, n - 0.5, 0.5 * (1.0 + rho * flat), HYP2F1_RTOL, HYP2F1_MAX_TERMS
    )
    if not converged:
        raise NumericError("hypergeometric series did not converge on the grid")
    log_density = (
        log_pref
        + 0.5 * (n - 4.0) * np.log1p(-flat * flat)
        - (n - 1.5) * np.log1p(-rho * flat)
        + np.log(values)
    )
    out = np.exp(log_density).reshape(r_arr.shape)
    return out if np.ndim(r) else float(out)


@dataclass(frozen=True)
class McConfig:
    """Configuration of one Monte Carlo run; identical configs give identical output."""

    n: int
    rho: float
    replicates: int
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise UsageError("each replicate needs at least two observations")
        if not -1.0 < self.rho < 1.0:
            raise UsageError("correlation must lie strictly inside (-1, 1)")
        if self.replicates < 1:
            raise UsageError("at least one replicate is required")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must fit in an unsigned 64-bit integer")


def mc_sample_r(cfg: McConfig) -> np.ndarray:
    """Plug-in correlation coefficients of seeded bivariate-normal samples.

    Deterministic for a given config and backend build; values lie in [-1, 1].
    """
    out = np.empty(cfg.replicates, dtype=np.float64)
    n_batches = (cfg.replicates + MC_BATCH - 1) // MC_BATCH
    children = np.random.SeedSequence(cfg.seed).spawn(n_batches)
    start = 0
    for child in children:
        count = min(MC_BATCH, cfg.replicates - start)
        out[start : start + count] = _backend.mc_r_batch(
            np.random.PCG64(child), cfg.n, cfg.rho, count
        )
        start += count
    return out
