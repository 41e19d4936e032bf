"""Exact sparse polynomial arithmetic over the coefficient variables of binary forms.

A system of n binary forms of degrees d = (d1, ..., dn) has one coefficient
variable v(f, i) per form f and index 0 <= i <= d_f.  Internally a monomial is
a flat tuple of exponents, one slot per variable, ordered form-major and
index-minor; a polynomial maps monomials to nonzero Fractions.  Every object
carries an exact sl2 grading:

  multidegree  per-form total exponent vector (m1, ..., mn)
  weight       sum of exponent * (d_f - 2i) over all variable slots

A homogeneous component is addressed by a ComponentKey (multidegree, order j),
where the order is the weight of the component's highest-weight vectors.  The
component is empty unless sum(d_f * m_f) and j have equal parity.

All arithmetic is exact rational; nothing in this module floats.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from math import comb, gcd
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence, Union

logger = logging.getLogger("sl2forge")

# A monomial is a flat exponent tuple of length FormSpec.nvars.
Monomial = tuple

# Warn before enumerating component cells whose multidegree slice is larger
# than this; enumeration still proceeds, the size is the user's call.
DEFAULT_CELL_WARN_THRESHOLD = 200_000

Coefficient = Union[Fraction, int]


class Variable(NamedTuple):
    form: int
    index: int


class ComponentKey(NamedTuple):
    multidegree: tuple
    order: int


@dataclass(frozen=True)
class FormSpec:
    """Degrees (d1, ..., dn) of the binary forms; fixes the variable layout."""

    degrees: tuple

    def __init__(self, degrees: Sequence[int]):
        degrees = tuple(int(d) for d in degrees)
        if not degrees:
            raise ValueError("FormSpec needs at least one form")
        if any(d < 1 for d in degrees):
            raise ValueError(f"form degrees must be >= 1, got {degrees}")
        object.__setattr__(self, "degrees", degrees)
        offsets = []
        pos = 0
        for d in degrees:
            offsets.append(pos)
            pos += d + 1
        object.__setattr__(self, "_offsets", tuple(offsets))
        object.__setattr__(self, "_nvars", pos)
        weights = []
        for d in degrees:
            weights.extend(d - 2 * i for i in range(d + 1))
        object.__setattr__(self, "_weights", tuple(weights))

    @property
    def nforms(self) -> int:
        return len(self.degrees)

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def offsets(self) -> tuple:
        return self._offsets

    def slot(self, var: Variable) -> int:
        """Flat position of a variable; validates both indices."""
        f, i = var
        if not (0 <= f < len(self.degrees)):
            raise ValueError(f"form index {f} out of range for {self.degrees}")
        if not (0 <= i <= self.degrees[f]):
            raise ValueError(f"coefficient index {i} out of range for form of degree {self.degrees[f]}")
        return self._offsets[f] + i

    def var_weight(self, var: Variable) -> int:
        return self._weights[self.slot(var)]

    def variables(self) -> Iterator[Variable]:
        for f, d in enumerate(self.degrees):
            for i in range(d + 1):
                yield Variable(f, i)

    def variable_at(self, slot: int) -> Variable:
        for f in range(len(self.degrees) - 1, -1, -1):
            if slot >= self._offsets[f]:
                return Variable(f, slot - self._offsets[f])
        raise ValueError(f"slot {slot} out of range")

    def monomial(self, *vars_and_exps) -> Monomial:
        """Build a monomial from (form, index) pairs or ((form, index), exp) pairs."""
        exps = [0] * self._nvars
        for item in vars_and_exps:
            if len(item) == 2 and isinstance(item[0], tuple):
                var, e = item
            else:
                var, e = item, 1
            exps[self.slot(Variable(*var))] += e
        return tuple(exps)


def weight(mono: Monomial, spec: FormSpec) -> int:
    """Torus weight: sum of exponent * (d_f - 2i) over the variable slots."""
    if len(mono) != spec.nvars:
        raise ValueError(f"monomial has {len(mono)} slots, spec has {spec.nvars} variables")
    return sum(e * w for e, w in zip(mono, spec._weights))


def multidegree(mono: Monomial, spec: FormSpec) -> tuple:
    """Per-form exponent totals (m1, ..., mn)."""
    if len(mono) != spec.nvars:
        raise ValueError(f"monomial has {len(mono)} slots, spec has {spec.nvars} variables")
    offs = spec.offsets + (spec.nvars,)
    return tuple(sum(mono[offs[f]:offs[f + 1]]) for f in range(spec.nforms))


def _form_exponents(d: int, m: int) -> list:
    """All exponent tuples of length d+1 with total m, descending lex, with weights."""
    out = []

    def rec(pos: int, remaining: int, acc: tuple, w: int) -> None:
        if pos == d:
            out.append((acc + (remaining,), w + remaining * (-d)))
            return
        step = d - 2 * pos
        for e in range(remaining, -1, -1):
            rec(pos + 1, remaining - e, acc + (e,), w + e * step)

    rec(0, m, (), 0)
    return out


def set_cell_warn_threshold(threshold: int) -> None:
    """Adjust the ambient-size threshold above which enumeration warns."""
    global DEFAULT_CELL_WARN_THRESHOLD
    DEFAULT_CELL_WARN_THRESHOLD = threshold


def component_monomials(spec: FormSpec, key: ComponentKey,
                        warn_threshold: Optional[int] = None) -> list:
    """Monomials of the given multidegree and weight, in descending lex order.

    Within a fixed multidegree every monomial has the same total degree, so
    descending lex on the flat exponent vector is the graded-lex order.  The
    list is empty when the parity condition fails.  Deterministic.
    """
    if warn_threshold is None:
        warn_threshold = DEFAULT_CELL_WARN_THRESHOLD
    mdeg, j = ComponentKey(*key)
    mdeg = tuple(int(m) for m in mdeg)
    if len(mdeg) != spec.nforms:
        raise ValueError(f"multidegree {mdeg} does not match {spec.nforms} forms")
    if any(m < 0 for m in mdeg):
        raise ValueError(f"multidegree entries must be >= 0, got {mdeg}")
    top = sum(d * m for d, m in zip(spec.degrees, mdeg))
    if (top - j) % 2 or not -top <= j <= top:
        return []
    ambient_bound = 1
    for d, m in zip(spec.degrees, mdeg):
        ambient_bound *= comb(d + m, m)
    if warn_threshold and ambient_bound > warn_threshold:
        logger.warning("component cell for multidegree %s holds up to %d monomials; "
                       "this enumeration may be expensive", mdeg, ambient_bound)
    per_form = [_form_exponents(d, m) for d, m in zip(spec.degrees, mdeg)]
    lo = [0] * (spec.nforms + 1)
    hi = [0] * (spec.nforms + 1)
    for f in range(spec.nforms - 1, -1, -1):
        ws = [w for _, w in per_form[f]]
        lo[f] = lo[f + 1] + min(ws)
        hi[f] = hi[f + 1] + max(ws)
    out = []

    def rec(f: int, acc: tuple, wacc: int) -> None:
        if f == spec.nforms:
            if wacc == j:
                out.append(acc)
            return
        if not (wacc + lo[f] <= j <= wacc + hi[f]):
            return
        for exps, w in per_form[f]:
            rec(f + 1, acc + exps, wacc + w)

    rec(0, (), 0)
    return out


class Polynomial:
    """Sparse polynomial: monomial -> nonzero Fraction, tied to one FormSpec."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FormSpec, terms: Mapping[Monomial, Coefficient] = ()):
        self.spec = spec
        clean = {}
        for mono, coeff in dict(terms).items():
            if len(mono) != spec.nvars:
                raise ValueError(f"monomial {mono} has wrong arity for spec {spec.degrees}")
            c = Fraction(coeff)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial)
                and self.spec == other.spec and self.terms == other.terms)

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        n = len(self.terms)
        return f"Polynomial({self.spec.degrees}, {n} term{'s' if n != 1 else ''})"

    def key(self) -> ComponentKey:
        """ComponentKey of a homogeneous polynomial; error if terms disagree."""
        if not self.terms:
            raise ValueError("zero polynomial has no component key")
        keys = {(multidegree(m, self.spec), weight(m, self.spec)) for m in self.terms}
        if len(keys) > 1:
            raise ValueError("polynomial is not homogeneous in (multidegree, weight)")
        mdeg, j = keys.pop()
        return ComponentKey(mdeg, j)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)


def zero(spec: FormSpec) -> Polynomial:
    return Polynomial(spec, {})


def variable_poly(spec: FormSpec, var: Variable) -> Polynomial:
    return Polynomial(spec, {spec.monomial(var): 1})


def _check_same_spec(p: Polynomial, q: Polynomial) -> None:
    if p.spec != q.spec:
        raise ValueError(f"mixed form specs {p.spec.degrees} vs {q.spec.degrees}")


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same_spec(p, q)
    terms = dict(p.terms)
    for mono, c in q.terms.items():
        v = terms.get(mono, 0) + c
        if v:
            terms[mono] = v
        else:
            terms.pop(mono, None)
    out = Polynomial.__new__(Polynomial)
    out.spec = p.spec
    out.terms = terms
    return out


def poly_sub(p: Polynomial, q: Polynomial) -> Polynomial:
    return poly_add(p, poly_scale(q, -1))


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same_spec(p, q)
    terms = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = terms.get(m, 0) + c1 * c2
            if v:
                terms[m] = v
            else:
                del terms[m]
    out = Polynomial.__new__(Polynomial)
    out.spec = p.spec
    out.terms = terms
    return out


def poly_scale(p: Polynomial, c: Coefficient) -> Polynomial:
    c = Fraction(c)
    out = Polynomial.__new__(Polynomial)
    out.spec = p.spec
    out.terms = {} if not c else {m: v * c for m, v in p.terms.items()}
    return out


def leading_monomial(p: Polynomial) -> Monomial:
    """Largest monomial under graded-lex: total degree first, then lex."""
    if not p.terms:
        raise ValueError("zero polynomial has no leading monomial")
    return max(p.terms, key=lambda m: (sum(m), m))


def primitive_normalize(p: Polynomial) -> Polynomial:
    """Scale so coefficients are coprime integers and the leading one is positive."""
    if not p.terms:
        raise ValueError("cannot normalize the zero polynomial")
    denom_lcm = 1
    for c in p.terms.values():
        d = c.denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    content = 0
    for c in p.terms.values():
        content = gcd(content, c.numerator * (denom_lcm // c.denominator))
    scale = Fraction(denom_lcm, content)
    if p.terms[leading_monomial(p)] < 0:
        scale = -scale
    return poly_scale(p, scale)
