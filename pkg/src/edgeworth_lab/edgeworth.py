"""Four-term Edgeworth density of the standardized statistic, and the
approximate densities of the correlation coefficient it induces."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .delta import OuterTransform, SummaryStats
from .errors import DegenerateStatisticError, DomainError, UsageError

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def edgeworth_pdf_z(z, gamma3: float, gamma4: float):
    """Normal density times the Hermite correction bracket.

    ``1 + gamma3*He3/6 + gamma4*He4/24 + gamma3**2*He6/72`` with the
    probabilists' Hermite polynomials He3 = z**3 - 3z, He4 = z**4 - 6z**2 + 3,
    He6 = z**6 - 15z**4 + 45z**2 - 15.  Values are returned raw: the bracket
    can push the density negative in the tails, and downstream integration
    relies on seeing those raw values.  Accepts scalars or arrays.
    """
    z = np.asarray(z, dtype=float)
    z2 = z * z
    phi = np.exp(-0.5 * z2) / _SQRT_2PI
    bracket = 1.0 + gamma3 * (z2 - 3.0) * z / 6.0
    bracket += gamma4 * (z2 * (z2 - 6.0) + 3.0) / 24.0
    bracket += gamma3 * gamma3 * (z2 * (z2 * (z2 - 15.0) + 45.0) - 15.0) / 72.0
    out = phi * bracket
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class EdgeworthModel:
    """Everything needed to evaluate the approximate density at one sample size."""

    n: int
    m: float
    v: float
    gamma3: float
    gamma4: float
    transform: OuterTransform

    def __post_init__(self):
        if self.n < 5:
            raise UsageError("Edgeworth models require n >= 5")
        if not self.v > 0:
            raise DegenerateStatisticError("model variance must be positive")


def build_model(
    stats: SummaryStats,
    n: int,
    transform: OuterTransform,
    include_gamma3: bool = True,
    include_gamma4: bool = True,
) -> EdgeworthModel:
    """Evaluate the summary coefficients at a concrete sample size.

    The skewness and kurtosis corrections can be switched off individually;
    with both off the model degenerates to a plain normal in transform space.
    """
    n = int(n)
    if n < 5:
        raise UsageError("Edgeworth models require n >= 5")
    return EdgeworthModel(
        n=n,
        m=stats.m0 + stats.m1 / n,
        v=stats.v1 / n + stats.v2 / n**2,
        gamma3=stats.g3coef / math.sqrt(n) if include_gamma3 else 0.0,
        gamma4=stats.g4coef / n if include_gamma4 else 0.0,
        transform=transform,
    )


def approx_pdf_r(model: EdgeworthModel, r):
    """Approximate density of the correlation coefficient at ``r``.

    Change of variables through the model's transform G:
    ``f(r) = f_Z((G(r) - m)/sqrt(V)) * G'(r) / sqrt(V)``.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(np.abs(r_arr) >= 1.0):
        raise DomainError("correlation values must lie strictly inside (-1, 1)")
    sd = math.sqrt(model.v)
    z = (model.transform.forward(r_arr) - model.m) / sd
    out = edgeworth_pdf_z(z, model.gamma3, model.gamma4) * model.transform.deriv(r_arr) / sd
    return out if np.ndim(r) else float(out)


def basic_fisher_pdf_r(n: int, rho: float, r):
    """Classical variance-stabilized baseline density of ``r``.

    Normal in arctanh space with mean ``arctanh(rho)`` and variance
    ``1/(n - 3)``: no mean correction, no skewness or kurtosis terms.
    """
    if n < 4:
        raise UsageError("the baseline needs n >= 4")
    if not -1.0 < rho < 1.0:
        raise DomainError("correlation must lie strictly inside (-1, 1)")
    r_arr = np.asarray(r, dtype=float)
    if np.any(np.abs(r_arr) >= 1.0):
        raise DomainError("correlation values must lie strictly inside (-1, 1)")
    sd = 1.0 / math.sqrt(n - 3.0)
    z = (np.arctanh(r_arr) - math.atanh(rho)) / sd
    out = np.exp(-0.5 * z * z) / (_SQRT_2PI * sd) / (1.0 - r_arr * r_arr)
    return out if np.ndim(r) else float(out)
