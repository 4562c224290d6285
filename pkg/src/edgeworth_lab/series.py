"""Degree-capped multivariate polynomials and half-power series in 1/n.

Two small arithmetic substrates live here:

* :class:`TruncatedTaylor` — a polynomial in ``d`` deviation variables whose
  stored terms never exceed a fixed total degree.  The total degree of a
  monomial doubles as its perturbation grade, so truncation by degree is the
  bookkeeping device for asymptotic expansions in the deviations.
* :class:`InvNPoly` — a finite sum ``sum_p c_p * n**(-p/2)`` over non-negative
  integer half-powers ``p``, the carrier for every 1/n expansion.

All values are immutable after construction and every operation is a pure
function, so instances are safe to share across threads.  Coefficient
arithmetic is dtype-agnostic: plain floats and numpy scalar types both work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import UsageError

#: Exponent vector over the deviation variables; the moment/cumulant key type.
MultiIndex = tuple


def index_order(idx: MultiIndex) -> int:
    """Total degree (sum of exponents) of a multi-index."""
    return sum(idx)


def _validated_terms(dimension, degree_cap, terms):
    clean = {}
    for key, coeff in terms.items():
        key = tuple(int(e) for e in key)
        if len(key) != dimension:
            raise UsageError(f"index {key} does not have dimension {dimension}")
        if any(e < 0 for e in key):
            raise UsageError(f"index {key} has a negative exponent")
        if sum(key) > degree_cap:
            raise UsageError(f"index {key} exceeds the degree cap {degree_cap}")
        if coeff != 0:
            clean[key] = coeff
    return clean


@dataclass(frozen=True)
class TruncatedTaylor:
    """Polynomial in ``dimension`` variables, truncated at ``degree_cap``.

    ``terms`` maps a :data:`MultiIndex` of order <= ``degree_cap`` to its
    coefficient; an absent key is a zero coefficient.
    """

    dimension: int
    degree_cap: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dimension < 1:
            raise UsageError("dimension must be at least 1")
        if self.degree_cap < 0:
            raise UsageError("degree cap must be non-negative")
        object.__setattr__(
            self, "terms", _validated_terms(self.dimension, self.degree_cap, self.terms)
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dimension, degree_cap):
        return cls(dimension, degree_cap, {})

    @classmethod
    def constant(cls, value, dimension, degree_cap):
        return cls(dimension, degree_cap, {(0,) * dimension: value})

    @classmethod
    def variable(cls, i, dimension, degree_cap, coefficient=1.0):
        if not 0 <= i < dimension:
            raise UsageError(f"variable index {i} out of range for dimension {dimension}")
        key = tuple(1 if j == i else 0 for j in range(dimension))
        return cls(dimension, degree_cap, {key: coefficient})

    # -- accessors ----------------------------------------------------------

    def coefficient(self, idx):
        return self.terms.get(tuple(idx), 0.0)

    @property
    def constant_term(self):
        return self.terms.get((0,) * self.dimension, 0.0)

    def with_cap(self, degree_cap):
        """Same polynomial under a new cap; lowering the cap drops terms."""
        kept = {k: v for k, v in self.terms.items() if sum(k) <= degree_cap}
        return TruncatedTaylor(self.dimension, degree_cap, kept)

    def without_constant(self):
        kept = {k: v for k, v in self.terms.items() if sum(k) > 0}
        return TruncatedTaylor(self.dimension, self.degree_cap, kept)

    def scaled(self, factor):
        return TruncatedTaylor(
            self.dimension, self.degree_cap, {k: factor * v for k, v in self.terms.items()}
        )

    def evaluate(self, point):
        """Numeric value at a concrete deviation vector."""
        if len(point) != self.dimension:
            raise UsageError("point dimension mismatch")
        total = 0.0
        for key, coeff in self.terms.items():
            term = coeff
            for value, exponent in zip(point, key):
                if exponent:
                    term = term * value**exponent
            total += term
        return total

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_add(self, other.scaled(-1.0))

    def __mul__(self, other):
        if isinstance(other, TruncatedTaylor):
            return poly_mul(self, other)
        return self.scaled(other)

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.terms.items())) or "0"
        return f"TruncatedTaylor(d={self.dimension}, cap={self.degree_cap}, {{{body}}})"


def poly_add(a: TruncatedTaylor, b: TruncatedTaylor) -> TruncatedTaylor:
    """Coefficient-wise sum; both operands must share dimension and cap."""
    if a.dimension != b.dimension:
        raise UsageError("dimension mismatch in polynomial addition")
    if a.degree_cap != b.degree_cap:
        raise UsageError("degree-cap mismatch in polynomial addition")
    terms = dict(a.terms)
    for key, coeff in b.terms.items():
        terms[key] = terms.get(key, 0.0) + coeff
    return TruncatedTaylor(a.dimension, a.degree_cap, terms)


def poly_mul(a: TruncatedTaylor, b: TruncatedTaylor) -> TruncatedTaylor:
    """Convolution product truncated at the smaller of the two caps.

    Truncation is silent by design: discarding monomials beyond the cap is
    the whole point of the representation, not an error condition.
    """
    if a.dimension != b.dimension:
        raise UsageError("dimension mismatch in polynomial multiplication")
    cap = min(a.degree_cap, b.degree_cap)
    terms = {}
    for ka, va in a.terms.items():
        if sum(ka) > cap:
            continue
        for kb, vb in b.terms.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            if sum(key) > cap:
                continue
            contribution = va * vb
            if key in terms:
                terms[key] = terms[key] + contribution
            else:
                terms[key] = contribution
    return TruncatedTaylor(a.dimension, cap, terms)


def poly_pow(a: TruncatedTaylor, exponent: int) -> TruncatedTaylor:
    if exponent < 0:
        raise UsageError("negative polynomial powers are not defined here")
    result = TruncatedTaylor.constant(1.0, a.dimension, a.degree_cap)
    for _ in range(exponent):
        result = poly_mul(result, a)
    return result


def compose_inverse_sqrt(u: TruncatedTaylor) -> TruncatedTaylor:
    """Cap-truncated expansion of ``(1 + u)**(-1/2)``.

    ``u`` must have a vanishing constant term, so ``u**k`` has minimum degree
    ``k`` and the binomial series terminates at the cap.
    """
    if u.constant_term != 0:
        raise UsageError("(1+u)**(-1/2) expansion requires u with zero constant term")
    result = TruncatedTaylor.constant(1.0, u.dimension, u.degree_cap)
    power = TruncatedTaylor.constant(1.0, u.dimension, u.degree_cap)
    coeff = 1.0
    for k in range(1, u.degree_cap + 1):
        coeff *= (-0.5 - (k - 1)) / k  # binomial(-1/2, k), built incrementally
        power = poly_mul(power, u)
        if not power.terms:
            break
        result = poly_add(result, power.scaled(coeff))
    return result


# ---------------------------------------------------------------------------
# Half-power series in 1/n
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvNPoly:
    """Finite sum of ``coefficient * n**(-p/2)`` terms, ``p`` a non-negative int."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, coeff in self.terms.items():
            p = int(p)
            if p < 0:
                raise UsageError("half-powers must be non-negative")
            if coeff != 0:
                clean[p] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def single(cls, half_power, value):
        return cls({half_power: value})

    def coefficient(self, half_power):
        return self.terms.get(half_power, 0.0)

    def scaled(self, factor):
        return InvNPoly({p: factor * c for p, c in self.terms.items()})

    def min_half_power(self):
        if not self.terms:
            return None
        return min(self.terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, 0.0) + c
        return InvNPoly(terms)

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def __mul__(self, other):
        if isinstance(other, InvNPoly):
            return invn_mul(self, other)
        return self.scaled(other)

    __rmul__ = __mul__

    def __repr__(self):
        body = " + ".join(f"{c}*n^(-{p}/2)" for p, c in sorted(self.terms.items())) or "0"
        return f"InvNPoly({body})"


def invn_mul(a: InvNPoly, b: InvNPoly) -> InvNPoly:
    """Exact convolution; both operands are finite so no truncation happens."""
    terms = {}
    for pa, ca in a.terms.items():
        for pb, cb in b.terms.items():
            key = pa + pb
            contribution = ca * cb
            if key in terms:
                terms[key] = terms[key] + contribution
            else:
                terms[key] = contribution
    return InvNPoly(terms)


def invn_truncate(a: InvNPoly, max_half_power: int) -> InvNPoly:
    """Hard cutoff: drop every term with half-power above ``max_half_power``."""
    return InvNPoly({p: c for p, c in a.terms.items() if p <= max_half_power})


def invn_eval(a: InvNPoly, n) -> float:
    """Numeric value at sample size ``n > 0``."""
    if n <= 0:
        raise UsageError("sample size must be positive")
    return sum((c * n ** (-0.5 * p) for p, c in sorted(a.terms.items())), 0.0)


def invn_div(num: InvNPoly, den: InvNPoly, max_half_power: int) -> InvNPoly:
    """Truncated series quotient ``num / den`` in half-powers of 1/n.

    The denominator's leading coefficient must be nonzero and the quotient
    must not require negative powers, i.e. the numerator's leading half-power
    must be at least the denominator's.
    """
    p0 = den.min_half_power()
    if p0 is None:
        raise UsageError("division by the zero series")
    pn = num.min_half_power()
    if pn is None:
        return InvNPoly.zero()
    if pn < p0:
        raise UsageError("series quotient would need negative half-powers")
    lead = den.terms[p0]
    # Neumann series for the reciprocal of the unit part of the denominator.
    w = InvNPoly({p - p0: -c / lead for p, c in den.terms.items() if p != p0})
    inv_unit = InvNPoly.constant(1.0)
    power = InvNPoly.constant(1.0)
    while True:
        power = invn_truncate(invn_mul(power, w), max_half_power)
        if not power.terms:
            break
        inv_unit = inv_unit + power
    shifted = InvNPoly({p - p0: c / lead for p, c in num.terms.items()})
    return invn_truncate(invn_mul(shifted, inv_unit), max_half_power)


def invn_sqrt(a: InvNPoly, max_half_power: int) -> InvNPoly:
    """Truncated square root; the leading term must sit at an even half-power
    with a positive coefficient."""
    p0 = a.min_half_power()
    if p0 is None:
        raise UsageError("square root of the zero series")
    if p0 % 2:
        raise UsageError("square root needs an even leading half-power")
    lead = a.terms[p0]
    if not lead > 0:
        raise UsageError("square root needs a positive leading coefficient")
    w = InvNPoly({p - p0: c / lead for p, c in a.terms.items() if p != p0})
    result = InvNPoly.constant(1.0)
    power = InvNPoly.constant(1.0)
    coeff = 1.0
    k = 0
    while True:
        k += 1
        coeff *= (0.5 - (k - 1)) / k  # binomial(1/2, k)
        power = invn_truncate(invn_mul(power, w), max_half_power)
        if not power.terms:
            break
        result = result + power.scaled(coeff)
    root_lead = lead**0.5  # ** keeps extended-precision scalars in their dtype
    return InvNPoly({p + p0 // 2: root_lead * c for p, c in result.terms.items()})
