"""Dimension counting for graded cells of semi-invariant algebras.

The weight multiplicities of the degree-m slice of the coefficient ring are
generated by a product of Gaussian binomial coefficients, one per form.  The
dimension of the (multidegree m, order j) cell is then a difference of two
coefficients of that product: with k = (sum(d_f * m_f) - j) / 2,

    dim = [t^k] prod_f qbinomial(d_f + m_f, m_f)  -  [t^(k-1)] same product.

This module also builds truncated Poincare series per total degree and
recovers the rational form P/Q of a univariate series by searching cyclotomic
product denominators, yielding the denominator degree beta used as a scan cap.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .forms import ComponentKey, FormSpec

logger = logging.getLogger("sl2forge")

DEFAULT_FACTOR_BOUND = 12


class PrecisionError(ValueError):
    """Series too short to attempt any reconstruction safely."""


@lru_cache(maxsize=None)
def qbinomial(a: int, b: int) -> tuple:
    """Gaussian binomial C(a,b)_t as a coefficient tuple, degree b*(a-b).

    Computed by the Pascal recurrence C(a,b) = C(a-1,b-1) + t^b * C(a-1,b),
    which stays in integer arithmetic throughout.
    """
    if a < 0 or b < 0:
        raise ValueError(f"qbinomial arguments must be >= 0, got ({a}, {b})")
    if b > a:
        raise ValueError(f"qbinomial requires b <= a, got ({a}, {b})")
    if b == 0 or b == a:
        return (1,)
    left = qbinomial(a - 1, b - 1)
    right = qbinomial(a - 1, b)
    out = [0] * (b * (a - b) + 1)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + b] += c
    return tuple(out)


def _poly_mul(a: tuple, b: tuple) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return tuple(out)


@lru_cache(maxsize=None)
def _weight_product(pairs: tuple) -> tuple:
    """Coefficients of prod qbinomial(d + m, m) over (d, m) pairs.

    The product only depends on the multiset of pairs, so callers pass them
    sorted and the cache collapses across form permutations.
    """
    out = (1,)
    for d, m in pairs:
        out = _poly_mul(out, qbinomial(d + m, m))
    return out


def cell_dim(spec: FormSpec, key: ComponentKey) -> int:
    """Dimension of the (multidegree, order) cell of the semi-invariant algebra."""
    mdeg, j = ComponentKey(*key)
    mdeg = tuple(int(m) for m in mdeg)
    if len(mdeg) != spec.nforms:
        raise ValueError(f"multidegree {mdeg} does not match {spec.nforms} forms")
    if any(m < 0 for m in mdeg) or j < 0:
        return 0
    top = sum(d * m for d, m in zip(spec.degrees, mdeg))
    if (top - j) % 2 or j > top:
        return 0
    k = (top - j) // 2
    wp = _weight_product(tuple(sorted(zip(spec.degrees, mdeg))))
    d = (wp[k] if k < len(wp) else 0) - (wp[k - 1] if 0 < k <= len(wp) else 0)
    if d < 0:
        logger.warning("negative multiplicity difference %d at multidegree %s order %d; "
                       "clamping to 0", d, mdeg, j)
        return 0
    return d


def _multidegrees(nforms: int, total: int):
    """All nonnegative vectors of the given length summing to total, lex descending."""
    def rec(f: int, remaining: int, acc: tuple):
        if f == nforms - 1:
            yield acc + (remaining,)
            return
        for m in range(remaining, -1, -1):
            yield from rec(f + 1, remaining - m, acc + (m,))
    yield from rec(0, total, ())


def poincare_table(spec: FormSpec, mode: str, degree_cap: int) -> dict:
    """All nonzero cell dimensions for total degree <= degree_cap.

    mode 'invariants' keeps only order 0; mode 'semi' keeps every order.
    The empty multidegree maps to 1 (the constants).
    """
    if mode not in ("invariants", "semi"):
        raise ValueError(f"mode must be 'invariants' or 'semi', got {mode!r}")
    if degree_cap < 1:
        raise ValueError(f"degree_cap must be >= 1, got {degree_cap}")
    table = {}
    for total in range(degree_cap + 1):
        for mdeg in _multidegrees(spec.nforms, total):
            top = sum(d * m for d, m in zip(spec.degrees, mdeg))
            orders = (0,) if mode == "invariants" else range(top % 2, top + 1, 2)
            for j in orders:
                d = cell_dim(spec, ComponentKey(mdeg, j))
                if d:
                    table[ComponentKey(mdeg, j)] = d
    return table


@dataclass(frozen=True)
class UnivariateSeries:
    """Truncated series: coeffs[m] = dimension of the degree-m slice."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def truncation_degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> int:
        return self.coeffs[m]


def univariate_series(spec: FormSpec, mode: str, cap: int) -> UnivariateSeries:
    """Per-total-degree dimensions of the invariant or semi-invariant algebra.

    One pass per variable: the degree-m weight multiplicities of the whole
    coefficient ring are accumulated as sparse Laurent data, then collapsed to
    mult(0)-mult(2) for invariants or mult(0)+mult(1) for semi-invariants.
    Agrees with summing poincare_table over each total degree.
    """
    if mode not in ("invariants", "semi"):
        raise ValueError(f"mode must be 'invariants' or 'semi', got {mode!r}")
    if cap < 0:
        raise ValueError(f"cap must be >= 0, got {cap}")
    # state[m] maps weight -> count of degree-m monomials of that weight
    state = [dict() for _ in range(cap + 1)]
    state[0][0] = 1
    for d in spec.degrees:
        for i in range(d + 1):
            w = d - 2 * i
            # geometric series in this variable: ascending m reuses updated rows
            for m in range(1, cap + 1):
                prev = state[m - 1]
                if prev:
                    row = state[m]
                    for wt, c in prev.items():
                        row[wt + w] = row.get(wt + w, 0) + c
    coeffs = []
    for m in range(cap + 1):
        mult = state[m]
        if mode == "invariants":
            coeffs.append(mult.get(0, 0) - mult.get(2, 0))
        else:
            coeffs.append(mult.get(0, 0) + mult.get(1, 0))
    return UnivariateSeries(tuple(coeffs))


@dataclass(frozen=True)
class RationalForm:
    """Series as P/Q with Q a product of (1 - t^a) factors; beta = deg Q.

    The unreconstructed sentinel carries numerator None and beta = +inf so
    that min(hard_cap, beta) still yields the hard cap.
    """

    numerator: Optional[tuple]
    denominator_factors: Optional[tuple]   # ((a, multiplicity), ...)
    beta: float

    @property
    def reconstructed(self) -> bool:
        return self.numerator is not None


UNRECONSTRUCTED = RationalForm(None, None, math.inf)


def _partitions(total: int, max_part: int):
    """Partitions of total with parts <= max_part, largest parts first."""
    if total == 0:
        yield ()
        return
    for p in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - p, p):
            yield (p,) + rest


def _poly_gcd_degree(p: tuple, q: tuple) -> int:
    """Degree of gcd of two rational-coefficient polynomials (Euclid)."""
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]
    while any(b):
        while b and not b[-1]:
            b.pop()
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            a, b = b, a
            continue
        lead = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= lead * c
        while a and not a[-1]:
            a.pop()
        a, b = b, a
    while a and not a[-1]:
        a.pop()
    return len(a) - 1 if a else -1


def expand_rational(numerator: tuple, factors: tuple, truncation: int) -> UnivariateSeries:
    """Series of P / prod (1-t^a)^e through the truncation degree."""
    coeffs = [0] * (truncation + 1)
    for i, c in enumerate(numerator):
        if i <= truncation:
            coeffs[i] = c
    for a, e in factors:
        for _ in range(e):
            # divide by (1 - t^a): running partial sums with lag a
            for m in range(a, truncation + 1):
                coeffs[m] += coeffs[m - a]
    return UnivariateSeries(tuple(coeffs))


def rational_reconstruct(series: UnivariateSeries,
                         factor_bound: int = DEFAULT_FACTOR_BOUND) -> RationalForm:
    """Minimal cyclotomic-product denominator matching the series, or a sentinel.

    Candidates Q = prod (1 - t^a)^e with a <= factor_bound are tried in order
    of increasing degree; Q fits when Q * series vanishes from degree deg(Q)
    through the truncation window, leaving a numerator of degree < deg(Q)
    coprime to Q.  Only degrees up to truncation/2 are searched, so a fit is
    confirmed over a window at least as long as the denominator itself; if
    nothing fits the caller falls back to its hard cap.
    """
    coeffs = series.coeffs
    trunc = len(coeffs) - 1
    if trunc < 2:
        raise PrecisionError(f"series truncated at degree {trunc} cannot support "
                             "any denominator candidate (need >= 2)")
    if not any(coeffs):
        raise ValueError("cannot reconstruct the zero series")
    for deg_q in range(1, trunc // 2 + 1):
        for parts in _partitions(deg_q, min(factor_bound, deg_q)):
            cur = list(coeffs)
            for a in parts:
                for m in range(trunc, a - 1, -1):
                    cur[m] -= cur[m - a]
            if any(cur[deg_q:]):
                continue
            numerator = cur[:deg_q]
            while numerator and numerator[-1] == 0:
                numerator.pop()
            q_poly = (1,)
            for a in parts:
                q_poly = _poly_mul(q_poly, (1,) + (0,) * (a - 1) + (-1,))
            if _poly_gcd_degree(tuple(numerator), q_poly) > 0:
                continue
            factors = []
            for a in sorted(set(parts)):
                factors.append((a, parts.count(a)))
            return RationalForm(tuple(numerator), tuple(factors), deg_q)
    return UNRECONSTRUCTED
