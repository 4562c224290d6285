"""Deviation expansion of a statistic and its reduction to summary numbers.

The statistic is written as a function of centered sample means and expanded
to third total degree in those deviations.  Expected values of its first four
powers are then taken with per-power degree caps of 2, 4, 4 and 6: exactly
the terms whose sample-mean moments can still contribute to the retained
1/n orders, and no more.  The four raw power series collapse to

* ``m``  — mean, constant plus the 1/n coefficient,
* ``V``  — variance, 1/n and 1/n**2 coefficients,
* skewness at order ``n**-1/2`` and excess kurtosis at order ``n**-1``,

with the last two extracted as leading terms of exact truncated series
ratios rather than hand-derived coefficient formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateStatisticError, UsageError
from .moments import MeanMomentTable, mean_moment_table, pearson_cumulants
from .series import (
    InvNPoly,
    TruncatedTaylor,
    compose_inverse_sqrt,
    index_order,
    invn_div,
    invn_mul,
    invn_sqrt,
    poly_add,
    poly_mul,
)

#: Degree caps for the first four powers of the centered statistic.
POWER_CAPS = (2, 4, 4, 6)

#: Half-power horizon carried through the series ratios; extractions stop at 4.
_RATIO_CAP = 8

#: Order of the deviation variables in every five-variable expansion:
#: (mean of X, mean of Y, mean of X**2 minus 1, mean of Y**2 minus 1,
#:  mean of X*Y minus rho).
PEARSON_VARIABLES = ("x_mean", "y_mean", "x2_dev", "y2_dev", "xy_dev")


@dataclass(frozen=True)
class OuterTransform:
    """A smooth monotone map applied to the statistic, with its derivatives.

    ``g0..g3`` are the value and first three derivatives at the expansion
    point; ``forward`` and ``deriv`` evaluate the map and its first
    derivative anywhere, for the change of variables in density space.
    """

    name: str
    g0: float
    g1: float
    g2: float
    g3: float
    forward: Callable
    deriv: Callable

    def __post_init__(self):
        if self.g1 == 0:
            raise UsageError("outer transform must have a nonzero slope")


def identity_transform(rho) -> OuterTransform:
    return OuterTransform(
        "identity",
        g0=rho,
        g1=1.0,
        g2=0.0,
        g3=0.0,
        forward=lambda r: r,
        deriv=lambda r: 1.0 + 0.0 * r,
    )


def arctanh_transform(rho) -> OuterTransform:
    one = 1.0 - rho * rho
    return OuterTransform(
        "arctanh",
        g0=np.arctanh(rho),
        g1=1.0 / one,
        g2=2.0 * rho / one**2,
        g3=(2.0 + 6.0 * rho * rho) / one**3,
        forward=np.arctanh,
        deriv=lambda r: 1.0 / (1.0 - r * r),
    )


def make_transform(name: str, rho) -> OuterTransform:
    if name == "identity":
        return identity_transform(rho)
    if name == "arctanh":
        return arctanh_transform(rho)
    raise UsageError(f"unknown transform {name!r}; expected 'identity' or 'arctanh'")


@dataclass(frozen=True)
class SummaryStats:
    """Truncated summary coefficients of a transformed statistic.

    mean      = m0 + m1 / n
    variance  = v1 / n + v2 / n**2
    skewness  = g3coef / sqrt(n)
    excess kurtosis = g4coef / n
    """

    m0: float
    m1: float
    v1: float
    v2: float
    g3coef: float
    g4coef: float


def pearson_r_expansion(rho) -> TruncatedTaylor:
    """Third-degree deviation expansion of the sample correlation coefficient.

    Variables follow :data:`PEARSON_VARIABLES`; writing them d1..d5, the
    plug-in statistic is

        (rho + d5 - d1*d2) / sqrt((1 + d3 - d1**2) * (1 + d4 - d2**2))

    and the two inverse square roots are expanded around 1.
    """
    if not -1.0 < rho < 1.0:
        raise UsageError("correlation must lie strictly inside (-1, 1)")
    d, cap = 5, 3
    var = lambda i: TruncatedTaylor.variable(i, d, cap)
    const = lambda c: TruncatedTaylor.constant(c, d, cap)
    numerator = poly_add(poly_add(const(rho), var(4)), poly_mul(var(0), var(1)).scaled(-1.0))
    u_x = poly_add(var(2), poly_mul(var(0), var(0)).scaled(-1.0))
    u_y = poly_add(var(3), poly_mul(var(1), var(1)).scaled(-1.0))
    return poly_mul(poly_mul(numerator, compose_inverse_sqrt(u_x)), compose_inverse_sqrt(u_y))


def apply_outer_transform(s: TruncatedTaylor, t: OuterTransform) -> TruncatedTaylor:
    """Compose the transform's own Taylor series with the statistic's expansion."""
    w = s.without_constant()
    result = TruncatedTaylor.constant(t.g0, s.dimension, s.degree_cap)
    result = poly_add(result, w.scaled(t.g1))
    w2 = poly_mul(w, w)
    result = poly_add(result, w2.scaled(t.g2 / 2.0))
    result = poly_add(result, poly_mul(w2, w).scaled(t.g3 / 6.0))
    return result


def raw_power_moments(s: TruncatedTaylor, mm: MeanMomentTable):
    """Expected values of the first four powers of the centered statistic.

    Returns four :class:`InvNPoly` values ``E[(H - H0)**p]`` for p = 1..4,
    where H0 is the constant term of ``s``.  The p-th power is truncated at
    total degree ``POWER_CAPS[p-1]`` before taking expectations.
    """
    if s.dimension != mm.dimension:
        raise UsageError("statistic and mean-moment table dimensions differ")
    centered = s.without_constant()
    results = []
    for exponent, cap in enumerate(POWER_CAPS, start=1):
        base = centered.with_cap(cap)
        power = base
        for _ in range(exponent - 1):
            power = poly_mul(power, base)
        by_power = {}
        for idx, coeff in power.terms.items():
            if index_order(idx) == 1:
                continue  # centered variables: order-1 expectations vanish
            for p, value in mm.mean_moment(idx).terms.items():
                by_power.setdefault(p, []).append(coeff * value)
        results.append(InvNPoly({p: sum(v) for p, v in by_power.items()}))
    return tuple(results)


def summarize(h0, p1: InvNPoly, p2: InvNPoly, p3: InvNPoly, p4: InvNPoly) -> SummaryStats:
    """Reduce the four raw power series to truncated summary coefficients."""
    mc2 = p2 - invn_mul(p1, p1)
    mc3 = p3 - invn_mul(p2, p1).scaled(3.0) + invn_mul(invn_mul(p1, p1), p1).scaled(2.0)
    p1sq = invn_mul(p1, p1)
    mc4 = (
        p4
        - invn_mul(p3, p1).scaled(4.0)
        + invn_mul(p2, p1sq).scaled(6.0)
        - invn_mul(p1sq, p1sq).scaled(3.0)
    )

    v1 = mc2.coefficient(2)
    if not v1 > 0:
        raise DegenerateStatisticError("leading variance coefficient is not positive")
    v2 = mc2.coefficient(4)
    m1 = p1.coefficient(2)

    # Skewness: leading n**-1/2 term of mc3 / mc2**(3/2).
    skew_series = invn_div(mc3, invn_mul(mc2, invn_sqrt(mc2, _RATIO_CAP)), _RATIO_CAP)
    g3coef = skew_series.coefficient(1)

    # Excess kurtosis: leading n**-1 term of mc4 / mc2**2 - 3.
    kurt_series = invn_div(mc4, invn_mul(mc2, mc2), _RATIO_CAP) - InvNPoly.constant(3.0)
    g4coef = kurt_series.coefficient(2)

    return SummaryStats(
        m0=float(h0),
        m1=float(m1),
        v1=float(v1),
        v2=float(v2),
        g3coef=float(g3coef),
        g4coef=float(g4coef),
    )


def gamma3_functional(g1: float, g2: float, rho: float) -> float:
    """Closed-form skewness functional ``3*g1*((1 - rho**2)*g2 - 2*rho*g1)``.

    Its zero set characterizes the slope-normalized skewness-free transforms;
    the unique solution (up to affine maps) is the inverse hyperbolic tangent.
    For unit-slope transforms it coincides with the ``g3coef`` that
    :func:`summarize` extracts; in general it carries an extra ``g1**2``
    factor relative to the scale-invariant standardized skewness.
    """
    return 3.0 * g1 * ((1.0 - rho * rho) * g2 - 2.0 * rho * g1)


# ---------------------------------------------------------------------------
# Convenience pipeline for the correlation coefficient
# ---------------------------------------------------------------------------


def _resolve_transform(transform, rho):
    if isinstance(transform, OuterTransform):
        return transform
    return make_transform(transform, rho)


def pearson_power_moments(rho: float, transform="identity", cumulants=None):
    """Raw power series of the (transformed) correlation coefficient.

    Returns ``(h0, (p1, p2, p3, p4))``.  The cumulant table may be overridden
    (e.g. with high orders zeroed) to probe truncation behaviour; by default
    the exact bivariate-normal table is used.

    The whole computation runs in numpy extended precision: the series
    cancellations at high ``|rho|`` cost roughly eight decimal digits in
    plain double precision, which extended precision buys back.
    """
    rho_wide = np.longdouble(rho)
    ct = cumulants if cumulants is not None else pearson_cumulants(rho_wide)
    mm = mean_moment_table(ct)
    t = _resolve_transform(transform, rho_wide)
    expansion = apply_outer_transform(pearson_r_expansion(rho_wide), t)
    h0 = expansion.constant_term
    return h0, raw_power_moments(expansion, mm)


def pearson_summary(rho: float, transform="identity", cumulants=None) -> SummaryStats:
    """Summary coefficients of the (transformed) correlation coefficient."""
    h0, (p1, p2, p3, p4) = pearson_power_moments(rho, transform, cumulants)
    return summarize(h0, p1, p2, p3, p4)
