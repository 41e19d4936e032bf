"""The Weitzenboeck derivation, its raising partner, and exact kernel cells.

The derivation acts on coefficient variables as D(v(f, i)) = i * v(f, i-1)
independently per form (one nilpotent Jordan block of size d_f + 1 each) and
extends to polynomials by the Leibniz rule.  On a homogeneous polynomial D
raises the torus weight by 2 and preserves the multidegree, so it maps the
(m, j) monomial cell into the (m, j+2) cell; kernel vectors of that linear
map are exactly the semi-invariants of multidegree m and order j.

The raising operator E(v(f, i)) = (d_f - i) * v(f, i+1) lowers weight by 2 and
serves as an independent verifier: a weight-0 kernel vector of D must also be
killed by E.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple

from . import linalg
from .dims import cell_dim
from .forms import (ComponentKey, FormSpec, Monomial, Polynomial,
                    component_monomials, weight)


class ConsistencyError(RuntimeError):
    """Internal cross-check failed; signals an implementation bug, never swallowed."""


@dataclass(frozen=True)
class DerivationSpec:
    spec: FormSpec


@dataclass(frozen=True)
class CellBasis:
    """Deterministic basis of one kernel cell: primitive, reduced-echelon order."""

    key: ComponentKey
    basis: Tuple[Polynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def lowering_images(spec: FormSpec, mono: Monomial) -> Iterator[Tuple[Monomial, int]]:
    """Terms of D(mono) as (monomial, integer multiplier) pairs."""
    for f, off in enumerate(spec.offsets):
        d = spec.degrees[f]
        for i in range(1, d + 1):
            e = mono[off + i]
            if e:
                moved = list(mono)
                moved[off + i] -= 1
                moved[off + i - 1] += 1
                yield tuple(moved), e * i


def raising_images(spec: FormSpec, mono: Monomial) -> Iterator[Tuple[Monomial, int]]:
    """Terms of E(mono) as (monomial, integer multiplier) pairs."""
    for f, off in enumerate(spec.offsets):
        d = spec.degrees[f]
        for i in range(d):
            e = mono[off + i]
            if e:
                moved = list(mono)
                moved[off + i] -= 1
                moved[off + i + 1] += 1
                yield tuple(moved), e * (d - i)


def _apply(p: Polynomial, dspec: DerivationSpec, images) -> Polynomial:
    if p.spec != dspec.spec:
        raise ValueError(f"polynomial spec {p.spec.degrees} does not match "
                         f"derivation spec {dspec.spec.degrees}")
    terms = {}
    for mono, coeff in p.terms.items():
        for moved, mult in images(p.spec, mono):
            v = terms.get(moved, 0) + coeff * mult
            if v:
                terms[moved] = v
            else:
                del terms[moved]
    out = Polynomial.__new__(Polynomial)
    out.spec = p.spec
    out.terms = terms
    return out


def apply_lowering(p: Polynomial, dspec: DerivationSpec) -> Polynomial:
    """D(p); weight +2 on homogeneous inputs, multidegree unchanged."""
    return _apply(p, dspec, lowering_images)


def apply_raising(p: Polynomial, dspec: DerivationSpec) -> Polynomial:
    """E(p); weight -2 on homogeneous inputs, multidegree unchanged."""
    return _apply(p, dspec, raising_images)


def verify_semi_invariant(p: Polynomial, dspec: DerivationSpec) -> bool:
    """True iff D(p) = 0.  A weight-0 kernel element must also satisfy E(p) = 0."""
    if not p.terms:
        return True
    if apply_lowering(p, dspec).terms:
        return False
    if weight(next(iter(p.terms)), p.spec) == 0 and apply_raising(p, dspec).terms:
        raise ConsistencyError("weight-0 element killed by the lowering operator "
                               "but not by the raising operator")
    return True


def cell_matrix(dspec: DerivationSpec, key: ComponentKey):
    """Sparse matrix of D from the weight-j cell to the weight-(j+2) cell.

    Returns (source monomials, target monomials, rows) with rows mapping each
    target index to {source index: coefficient}.
    """
    spec = dspec.spec
    mdeg, j = ComponentKey(*key)
    src = component_monomials(spec, ComponentKey(mdeg, j))
    tgt = component_monomials(spec, ComponentKey(mdeg, j + 2))
    tgt_index = {m: i for i, m in enumerate(tgt)}
    rows = {}
    for ci, mono in enumerate(src):
        for moved, mult in lowering_images(spec, mono):
            r = tgt_index[moved]
            row = rows.get(r)
            if row is None:
                rows[r] = {ci: mult}
            else:
                row[ci] = row.get(ci, 0) + mult
    return src, tgt, rows


def kernel_cell_basis(dspec: DerivationSpec, key: ComponentKey) -> CellBasis:
    """Exact basis of ker D restricted to one (multidegree, order) cell.

    The nullspace is computed by fraction-free elimination and returned as
    primitive-normalized polynomials in reduced-echelon order against the
    cell monomial order.  The dimension must agree with the counting oracle;
    a mismatch is a fatal internal error.
    """
    spec = dspec.spec
    key = ComponentKey(tuple(key[0]), key[1])
    src, _tgt, rows = cell_matrix(dspec, key)
    vectors = linalg.nullspace(rows.values(), len(src))
    expected = cell_dim(spec, key)
    if len(vectors) != expected:
        raise ConsistencyError(
            f"kernel cell {key}: nullspace dimension {len(vectors)} != "
            f"counting dimension {expected}")
    basis: List[Polynomial] = []
    for vec in vectors:
        poly = Polynomial.__new__(Polynomial)
        poly.spec = spec
        poly.terms = {src[c]: Fraction(v) for c, v in vec.items()}
        basis.append(poly)
    return CellBasis(key, tuple(basis))
