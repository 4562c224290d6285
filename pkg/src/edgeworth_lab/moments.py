"""Joint central moments, cumulants, and moments of sample means.

The generic machinery works for any dimension: tables are keyed by
multi-indices, conversions walk set partitions, and moments of sample means
come out as polynomials in 1/n via the cumulant scaling rule (the cumulant of
a sample mean is the underlying cumulant times ``n**(1 - order)``).

The bivariate-normal builders are specialized to the five centered variables
behind the sample correlation coefficient,

    X,  Y,  X**2 - 1,  Y**2 - 1,  X*Y - rho,

whose joint central moments are polynomials in ``rho`` with integer
coefficients.  Those polynomials are carried exactly (Python integers) and
evaluated only at the requested ``rho``, which keeps the heavy cancellations
of the high-order entries out of floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import IncompleteTableError, UsageError
from .series import InvNPoly, index_order

#: Highest joint order any table carries; the fourth power of the deviation
#: expansion is truncated at total degree six, and nothing above is consumed.
MAX_ORDER = 6


def multi_indices(dimension, min_order, max_order):
    """Yield every exponent vector of the given dimension and order range."""

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for order in range(min_order, max_order + 1):
        yield from compositions(order, dimension)


@lru_cache(maxsize=None)
def set_partitions(k):
    """All partitions of ``{0, .., k-1}`` as tuples of blocks (cached; Bell(6) = 203)."""
    if k == 0:
        return ((),)
    out = []
    for part in set_partitions(k - 1):
        new = k - 1
        for i in range(len(part)):
            out.append(part[:i] + (part[i] + (new,),) + part[i + 1 :])
        out.append(part + ((new,),))
    return tuple(out)


def _positions(idx):
    """Expand an exponent vector into one slot per unit of order."""
    pos = []
    for variable, exponent in enumerate(idx):
        pos.extend([variable] * exponent)
    return pos


def _block_index(positions, block, dimension):
    idx = [0] * dimension
    for p in block:
        idx[positions[p]] += 1
    return tuple(idx)


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentTable:
    """Central moments ``mu_idx`` for orders 2..max_order.

    Order-0 is implicitly 1 and every order-1 entry is implicitly 0: the
    variables are centered.
    """

    dimension: int
    max_order: int
    entries: dict = field(default_factory=dict)

    def moment(self, idx):
        idx = tuple(idx)
        order = index_order(idx)
        if order == 0:
            return 1.0
        if order == 1:
            return 0.0
        try:
            return self.entries[idx]
        except KeyError:
            raise IncompleteTableError(f"moment table has no entry for {idx}") from None


@dataclass(frozen=True)
class CumulantTable:
    """Joint cumulants ``kappa_idx``, same shape and conventions as MomentTable."""

    dimension: int
    max_order: int
    entries: dict = field(default_factory=dict)

    def cumulant(self, idx):
        idx = tuple(idx)
        order = index_order(idx)
        if order == 0:
            return 0.0
        if order == 1:
            return 0.0
        try:
            return self.entries[idx]
        except KeyError:
            raise IncompleteTableError(f"cumulant table has no entry for {idx}") from None


@dataclass(frozen=True)
class MeanMomentTable:
    """Moments of centered sample means as 1/n polynomials, per multi-index."""

    dimension: int
    entries: dict = field(default_factory=dict)

    def mean_moment(self, idx):
        idx = tuple(idx)
        order = index_order(idx)
        if order == 0:
            return InvNPoly.constant(1.0)
        if order == 1:
            return InvNPoly.zero()
        try:
            return self.entries[idx]
        except KeyError:
            raise IncompleteTableError(f"mean-moment table has no entry for {idx}") from None


# ---------------------------------------------------------------------------
# Exact integer polynomials in rho for the bivariate-normal builders
# ---------------------------------------------------------------------------
# A polynomial is a tuple of integer coefficients, index = power of rho.

_IP_ZERO = (0,)
_IP_ONE = (1,)


def _ip_add(a, b):
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _ip_scale(a, c):
    return tuple(c * x for x in a)


def _ip_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return tuple(out)


def _ip_shift(a, k):
    return (0,) * k + tuple(a)


def _ip_eval(a, rho):
    """Evaluate at ``rho``; exact integer coefficients, one rounding per term."""
    terms = [c * rho**k for k, c in enumerate(a) if c]
    if not terms:
        return 0.0 * rho
    if isinstance(terms[0], float):
        return math.fsum(terms)
    return sum(terms)


@lru_cache(maxsize=None)
def _gxy_poly(a, b):
    # E[X^a Y^b] for a standard bivariate normal pair, as an integer polynomial
    # in rho; Stein recursion E[X^a Y^b] = (a-1) E[X^(a-2) Y^b] + rho b E[X^(a-1) Y^(b-1)].
    if a < 0 or b < 0:
        return _IP_ZERO
    if a == 0 and b == 0:
        return _IP_ONE
    if a == 0:
        a, b = b, a
    out = _IP_ZERO
    if a >= 2:
        out = _ip_add(out, _ip_scale(_gxy_poly(a - 2, b), a - 1))
    if b >= 1:
        out = _ip_add(out, _ip_shift(_ip_scale(_gxy_poly(a - 1, b - 1), b), 1))
    return out


@lru_cache(maxsize=None)
def _pearson_moment_poly(idx):
    # Binomial expansion of E[X^i1 Y^i2 (X^2-1)^i3 (Y^2-1)^i4 (XY-rho)^i5]
    # into raw Gaussian product moments; exact in Z[rho].
    i1, i2, i3, i4, i5 = idx
    total = _IP_ZERO
    for u in range(i3 + 1):
        cu = math.comb(i3, u) * (-1) ** (i3 - u)
        for v in range(i4 + 1):
            cv = math.comb(i4, v) * (-1) ** (i4 - v)
            for w in range(i5 + 1):
                cw = math.comb(i5, w) * (-1) ** (i5 - w)
                raw = _gxy_poly(i1 + 2 * u + w, i2 + 2 * v + w)
                total = _ip_add(total, _ip_shift(_ip_scale(raw, cu * cv * cw), i5 - w))
    return total


@lru_cache(maxsize=None)
def _pearson_cumulant_poly(idx):
    positions = _positions(idx)
    total = _IP_ZERO
    for part in set_partitions(len(positions)):
        if any(len(block) == 1 for block in part):
            continue  # order-1 central moments vanish
        weight = (-1) ** (len(part) - 1) * math.factorial(len(part) - 1)
        product = _IP_ONE
        for block in part:
            product = _ip_mul(product, _pearson_moment_poly(_block_index(positions, block, 5)))
        total = _ip_add(total, _ip_scale(product, weight))
    return total


def gaussian_xy_moment(a: int, b: int, rho: float) -> float:
    """Raw product moment ``E[X**a * Y**b]`` of a standard bivariate normal pair.

    Exact up to one rounding per polynomial term; odd total orders are zero.
    """
    if a < 0 or b < 0:
        raise UsageError("moment exponents must be non-negative")
    if not -1.0 < rho < 1.0:
        raise UsageError("correlation must lie strictly inside (-1, 1)")
    return _ip_eval(_gxy_poly(int(a), int(b)), rho)


def pearson_central_moments(rho: float) -> MomentTable:
    """Joint central moments (orders 2..6) of the five correlation variables."""
    if not -1.0 < rho < 1.0:
        raise UsageError("correlation must lie strictly inside (-1, 1)")
    entries = {
        idx: _ip_eval(_pearson_moment_poly(idx), rho)
        for idx in multi_indices(5, 2, MAX_ORDER)
    }
    return MomentTable(5, MAX_ORDER, entries)


def pearson_cumulants(rho) -> CumulantTable:
    """Joint cumulants of the five correlation variables, evaluated exactly.

    ``rho`` may be a plain float or an extended-precision numpy scalar; the
    entries inherit its type, which is how the summary pipeline obtains its
    extra working precision.
    """
    if not -1.0 < rho < 1.0:
        raise UsageError("correlation must lie strictly inside (-1, 1)")
    entries = {
        idx: _ip_eval(_pearson_cumulant_poly(idx), rho)
        for idx in multi_indices(5, 2, MAX_ORDER)
    }
    return CumulantTable(5, MAX_ORDER, entries)


# ---------------------------------------------------------------------------
# Generic conversions
# ---------------------------------------------------------------------------


def cumulants_from_moments(mt: MomentTable) -> CumulantTable:
    """Set-partition Moebius sum: ``kappa_S = sum_pi (-1)^(|pi|-1) (|pi|-1)! prod mu_B``."""
    entries = {}
    for idx in multi_indices(mt.dimension, 2, mt.max_order):
        positions = _positions(idx)
        terms = []
        for part in set_partitions(len(positions)):
            if any(len(block) == 1 for block in part):
                continue
            term = (-1.0) ** (len(part) - 1) * math.factorial(len(part) - 1)
            for block in part:
                term = term * mt.moment(_block_index(positions, block, mt.dimension))
            terms.append(term)
        entries[idx] = sum(terms)
    return CumulantTable(mt.dimension, mt.max_order, entries)


def moments_from_cumulants(ct: CumulantTable) -> MomentTable:
    """Inverse partition sum: ``mu_S = sum_pi prod kappa_B``."""
    entries = {}
    for idx in multi_indices(ct.dimension, 2, ct.max_order):
        positions = _positions(idx)
        terms = []
        for part in set_partitions(len(positions)):
            if any(len(block) == 1 for block in part):
                continue
            term = 1.0
            for block in part:
                term = term * ct.cumulant(_block_index(positions, block, ct.dimension))
            terms.append(term)
        entries[idx] = sum(terms)
    return MomentTable(ct.dimension, ct.max_order, entries)


def sample_mean_moment(ct: CumulantTable, idx) -> InvNPoly:
    """Moment of centered sample means for one multi-index, exact in 1/n.

    Cumulants of sample means scale as ``kappa * n**(1 - order)``, so the
    partition sum for the moment puts each partition ``pi`` of an order-k
    index at the whole power ``n**-(k - |pi|)``; blocks of size one vanish
    because the variables are centered.
    """
    idx = tuple(idx)
    order = index_order(idx)
    if order > ct.max_order:
        raise UsageError(
            f"index order {order} exceeds the supported maximum {ct.max_order}"
        )
    positions = _positions(idx)
    by_power = {}
    for part in set_partitions(len(positions)):
        if any(len(block) == 1 for block in part):
            continue
        term = 1.0
        for block in part:
            term = term * ct.cumulant(_block_index(positions, block, ct.dimension))
        # whole 1/n power (order - |pi|), stored on the half-power grid
        by_power.setdefault(2 * (order - len(part)), []).append(term)
    return InvNPoly({p: sum(terms) for p, terms in by_power.items()})


def mean_moment_table(ct: CumulantTable) -> MeanMomentTable:
    """Sample-mean moments for every index of order 2..max_order."""
    entries = {
        idx: sample_mean_moment(ct, idx)
        for idx in multi_indices(ct.dimension, 2, ct.max_order)
    }
    return MeanMomentTable(ct.dimension, entries)


def zero_cumulants_above(ct: CumulantTable, order: int) -> CumulantTable:
    """Copy of the table with every cumulant of order > ``order`` set to zero."""
    entries = {
        idx: (value if index_order(idx) <= order else 0.0 * value)
        for idx, value in ct.entries.items()
    }
    return CumulantTable(ct.dimension, ct.max_order, entries)
