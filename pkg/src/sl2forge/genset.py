"""Minimal generating sets for invariant and semi-invariant algebras.

The scan walks total degrees upward.  Every graded cell of the current degree
is closed by the cheapest of three exact methods:

1. dimension certificate: if some already-found generator g satisfies
   cell_dim(key - key(g)) == cell_dim(key), then multiplication by g (which is
   injective in a polynomial ring) maps the fully known lower cell onto a
   subspace of decomposables of full cell dimension, so the cell is closed
   with no linear algebra at all;
2. modular product rank: products of earlier generators are fed to an echelon
   mod a fixed prime until they certify rank == cell_dim; a modular rank never
   exceeds the true rank, so reaching the counted dimension is an exact proof
   of closure;
3. exact echelon: the kernel cell basis is computed by fraction-free
   elimination, the decomposable span is subtracted exactly, and the greedy
   reduced-echelon completion is emitted as new generators.

Generators only ever appear through step 3, so every emitted polynomial comes
from an exact nullspace that was cross-checked against the counting oracle.
Cells are processed in a fixed canonical order and merged deterministically,
so results are identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .derivation import (CellBasis, ConsistencyError, DerivationSpec,
                         kernel_cell_basis, verify_semi_invariant)
from .dims import (cell_dim, rational_reconstruct, univariate_series,
                   _multidegrees)
from .forms import (ComponentKey, FormSpec, Polynomial, component_monomials,
                    poly_mul, primitive_normalize, variable_poly)

HARD_CAP = 18
# reconstruction window: exactly enough to certify any beta up to the hard cap
RECONSTRUCT_TRUNCATION = 2 * HARD_CAP

MODE_INVARIANTS = "invariants"
MODE_SEMI = "semi"
MODE_KERNEL = "kernel"
MODES = (MODE_INVARIANTS, MODE_SEMI, MODE_KERNEL)


class RunStrategy(str, Enum):
    MULTIDEGREE = "multidegree"
    TOTAL_DEGREE = "total-degree"


@dataclass(frozen=True)
class GeneratorRecord:
    polynomial: Polynomial
    multidegree: tuple
    order: int
    total_degree: int

    @property
    def key(self) -> ComponentKey:
        return ComponentKey(self.multidegree, self.order)


@dataclass(frozen=True)
class CellEvidence:
    """How one visited cell was closed; enough to audit the run afterwards."""

    key: ComponentKey
    total_degree: int
    dim: int
    method: str          # "seed" | "certificate" | "modular-rank" | "echelon"
    rank: int            # decomposable rank used in the accounting
    new_count: int
    witness: Optional[ComponentKey] = None   # certificate witness generator key


@dataclass(frozen=True)
class GeneratingSet:
    spec: FormSpec
    mode: str
    strategy: RunStrategy
    cap_used: int
    beta: Optional[int]
    records: Tuple[GeneratorRecord, ...]
    cells: Tuple[CellEvidence, ...]

    @property
    def degree_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for r in self.records:
            counts[r.total_degree] = counts.get(r.total_degree, 0) + 1
        return counts

    def by_degree(self, degree: int) -> List[GeneratorRecord]:
        return [r for r in self.records if r.total_degree == degree]


def _validate_mode_strategy(mode: str, strategy: RunStrategy) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if strategy == RunStrategy.TOTAL_DEGREE and mode != MODE_INVARIANTS:
        raise ValueError("total-degree strategy is only defined for invariants")


def _iter_product_multisets(gens: Sequence[GeneratorRecord],
                            key: ComponentKey) -> Iterator[Tuple[int, ...]]:
    """Index multisets (non-decreasing, length >= 2) of generators whose
    multidegrees sum to key.multidegree and orders sum to key.order.

    Deterministic DFS in emission order of the generators.
    """
    target_m = tuple(key.multidegree)
    target_j = key.order
    n = len(target_m)

    def rec(start: int, rem_m: tuple, rem_j: int, picked: Tuple[int, ...]):
        rem_total = sum(rem_m)
        if rem_total == 0:
            if rem_j == 0 and len(picked) >= 2:
                yield picked
            return
        for i in range(start, len(gens)):
            g = gens[i]
            gm = g.multidegree
            if g.order > rem_j or g.total_degree > rem_total:
                continue
            ok = True
            for a in range(n):
                if gm[a] > rem_m[a]:
                    ok = False
                    break
            if not ok:
                continue
            yield from rec(i, tuple(rem_m[a] - gm[a] for a in range(n)),
                           rem_j - g.order, picked + (i,))

    yield from rec(0, target_m, target_j, ())


def product_span(prior: Sequence[GeneratorRecord], key: ComponentKey,
                 spec: FormSpec) -> List[Polynomial]:
    """Products of earlier generators spanning the decomposable part of a cell.

    Enumerates every multiset of prior generators whose keys sum to the cell
    key; the returned list spans the decomposable subspace but is usually
    linearly dependent.
    """
    total = sum(key.multidegree)
    for g in prior:
        if g.total_degree >= total:
            raise ValueError("prior generators must have total degree below the cell")
    out = []
    prev: Tuple[int, ...] = ()
    stack: List[Polynomial] = []
    for multiset in _iter_product_multisets(prior, ComponentKey(*key)):
        shared = 0
        for a, b in zip(prev, multiset):
            if a != b:
                break
            shared += 1
        del stack[shared:]
        for i in multiset[shared:]:
            if not stack:
                stack.append(prior[i].polynomial)
            else:
                stack.append(poly_mul(stack[-1], prior[i].polynomial))
        prev = multiset
        out.append(stack[-1])
    return out


def _poly_to_row(p: Polynomial, col_index: Dict[tuple, int]) -> linalg.Row:
    """Integer coordinate row of a polynomial in the cell monomial basis."""
    denom_lcm = 1
    for c in p.terms.values():
        d = c.denominator
        denom_lcm = denom_lcm * d // math.gcd(denom_lcm, d)
    row = {}
    for mono, c in p.terms.items():
        if mono not in col_index:
            raise ConsistencyError("polynomial leaves its declared cell")
        row[col_index[mono]] = c.numerator * (denom_lcm // c.denominator)
    return row


def irreducible_complement(cell: CellBasis,
                           decomposables: Sequence[Polynomial]) -> List[GeneratorRecord]:
    """New generators of one cell: kernel vectors outside the decomposable span.

    Computes the exact rank of the decomposables inside the cell coordinate
    space, checks they lie in the kernel span, then extends them to a basis of
    the cell by greedy selection of kernel basis vectors in their canonical
    order.  Exactly dim(cell) - rank vectors are returned.
    """
    if not cell.basis:
        for p in decomposables:
            if p.terms:
                raise ConsistencyError("nonzero decomposables in a zero-dimensional cell")
        return []
    spec = cell.basis[0].spec
    monos = component_monomials(spec, cell.key)
    col_index = {m: i for i, m in enumerate(monos)}
    kernel_rows = [_poly_to_row(p, col_index) for p in cell.basis]
    kernel_pivots = {min(r): r for r in kernel_rows}
    echelon = linalg.SparseEchelon()
    rank = 0
    for p in decomposables:
        if not p.terms:
            continue
        if p.key() != cell.key:
            raise ValueError(f"decomposable of key {p.key()} in cell {cell.key}")
        row = _poly_to_row(p, col_index)
        if linalg.reduce_row(dict(row), kernel_pivots):
            raise ConsistencyError(f"decomposable outside the kernel span in cell {cell.key}")
        if echelon.add(row):
            rank += 1
    records = []
    mdeg, order = cell.key
    for vec, poly in zip(kernel_rows, cell.basis):
        if echelon.add(vec):
            records.append(GeneratorRecord(poly, tuple(mdeg), order, sum(mdeg)))
    if rank + len(records) != len(cell.basis):
        raise ConsistencyError(f"cell {cell.key}: rank {rank} plus {len(records)} "
                               f"new does not reach dimension {len(cell.basis)}")
    return records


# ---------------------------------------------------------------------------
# the scan


# Permuting forms of equal degree is an algebra automorphism commuting with
# the derivation and preserving the grading, so cells related by such a
# permutation share dimensions, closure status, and generator data.  The scan
# therefore closes one canonical representative per orbit and transports the
# result to the other members.


def _symmetry_blocks(degrees: Sequence[int]) -> List[tuple]:
    by_degree: Dict[int, list] = {}
    for f, d in enumerate(degrees):
        by_degree.setdefault(d, []).append(f)
    return [tuple(fs) for fs in by_degree.values() if len(fs) > 1]


def _canonical_multidegree(mdeg: tuple, blocks: Sequence[tuple]) -> tuple:
    out = list(mdeg)
    for block in blocks:
        values = sorted((out[f] for f in block), reverse=True)
        for f, v in zip(block, values):
            out[f] = v
    return tuple(out)


def _form_permutation(rep_m: tuple, mdeg: tuple,
                      blocks: Sequence[tuple]) -> List[int]:
    """Permutation perm with mdeg[perm[f]] == rep_m[f], moving forms only
    within equal-degree blocks; deterministic (stable on repeated entries)."""
    perm = list(range(len(mdeg)))
    for block in blocks:
        targets = sorted(block, key=lambda f: (-mdeg[f], f))
        for f, t in zip(block, targets):
            perm[f] = t
    return perm


def _permute_record(spec: FormSpec, rec: GeneratorRecord,
                    perm: Sequence[int]) -> GeneratorRecord:
    offsets = spec.offsets
    slot_map = [0] * spec.nvars
    for f in range(spec.nforms):
        for i in range(spec.degrees[f] + 1):
            slot_map[offsets[f] + i] = offsets[perm[f]] + i
    terms = {}
    for mono, c in rec.polynomial.terms.items():
        moved = [0] * spec.nvars
        for slot, e in enumerate(mono):
            if e:
                moved[slot_map[slot]] = e
        terms[tuple(moved)] = c
    mdeg = [0] * spec.nforms
    for f, m in enumerate(rec.multidegree):
        mdeg[perm[f]] = m
    poly = primitive_normalize(Polynomial(spec, terms))
    return GeneratorRecord(poly, tuple(mdeg), rec.order, rec.total_degree)


# Monomials in the modular tier are packed into one integer, 8 bits per slot;
# packed keys then add under multiplication.  Exponents stay below 256 because
# no variable exponent can exceed the total degree of the scan.
_ENC_SHIFT = 8


def _encode_monomial(mono: tuple) -> int:
    k = 0
    for e in mono:
        k = (k << _ENC_SHIFT) | e
    return k


def _encode_poly(p: Polynomial, prime: int) -> Dict[int, int]:
    enc = {}
    for mono, c in p.terms.items():
        v = c.numerator % prime
        if v:
            enc[_encode_monomial(mono)] = v
    return enc


def _mul_enc(a: Dict[int, int], b: Dict[int, int], prime: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    get = out.get
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 + m2
            v = (get(m, 0) + c1 * c2) % prime
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _iter_products_enc(gens: Sequence[GeneratorRecord],
                       enc_gens: Sequence[Dict[int, int]],
                       key: ComponentKey, prime: int) -> Iterator[Dict[int, int]]:
    """Products (mod prime) over the multisets of _iter_product_multisets.

    Multiset feasibility is resolved before any multiplication, and
    consecutive multisets reuse their common prefix product from a stack, so
    the number of multiplies stays close to the number of emitted products.
    """
    prev: Tuple[int, ...] = ()
    stack: List[Dict[int, int]] = []
    for multiset in _iter_product_multisets(gens, key):
        shared = 0
        for a, b in zip(prev, multiset):
            if a != b:
                break
            shared += 1
        del stack[shared:]
        for i in multiset[shared:]:
            if not stack:
                stack.append(enc_gens[i])
            else:
                stack.append(_mul_enc(stack[-1], enc_gens[i], prime))
        prev = multiset
        if stack[-1]:
            yield stack[-1]


def _certificate_witness(spec: FormSpec, key: ComponentKey, dim: int,
                         gens: Sequence[GeneratorRecord]) -> Optional[ComponentKey]:
    """First generator g with cell_dim(key - key(g)) == dim, if any.

    Multiplication by g embeds the (already closed) lower cell into the
    decomposables of this cell; matching dimensions close the cell exactly.
    """
    mdeg = key.multidegree
    for g in gens:
        sub_m = tuple(m - gm for m, gm in zip(mdeg, g.multidegree))
        if any(v < 0 for v in sub_m):
            continue
        sub_j = key.order - g.order
        if sub_j < 0:
            continue
        if cell_dim(spec, ComponentKey(sub_m, sub_j)) == dim:
            return g.key
    return None


def _counting_check(spec: FormSpec, key: ComponentKey, dim: int) -> int:
    """Ambient sanity: enumerated weight slices must reproduce the counted dim."""
    mdeg, j = key
    n_here = len(component_monomials(spec, key))
    n_above = len(component_monomials(spec, ComponentKey(mdeg, j + 2)))
    if n_here - n_above != dim:
        raise ConsistencyError(
            f"cell {key}: monomial count difference {n_here - n_above} "
            f"disagrees with counted dimension {dim}")
    return n_here


def _close_cell(spec: FormSpec, dspec: DerivationSpec, key: ComponentKey,
                dim: int, gens: Sequence[GeneratorRecord],
                enc_gens: Optional[Sequence[Dict[int, int]]] = None,
                prime: int = linalg.MODULUS):
    """Close one cell; returns (CellEvidence, list of new GeneratorRecords)."""
    degree = sum(key.multidegree)
    witness = _certificate_witness(spec, key, dim, gens)
    if witness is not None:
        ev = CellEvidence(key, degree, dim, "certificate", dim, 0, witness)
        return ev, []

    # modular product rank: an exact closure certificate when it reaches dim
    monos = component_monomials(spec, key)
    col_index = {_encode_monomial(m): i for i, m in enumerate(monos)}
    _counting_check(spec, key, dim)
    if enc_gens is None:
        enc_gens = [_encode_poly(g.polynomial, prime) for g in gens]
    echelon = linalg.ModularEchelon(len(monos), prime)
    identity = {i: i for i in range(len(monos))}
    for prod in _iter_products_enc(gens, enc_gens, key, prime):
        echelon.add_dict({col_index[m]: c for m, c in prod.items()}, identity)
        if echelon.rank == dim:
            ev = CellEvidence(key, degree, dim, "modular-rank", dim, 0)
            return ev, []

    # exact path: kernel basis, exact decomposable rank, greedy completion
    cell = kernel_cell_basis(dspec, key)
    decomposables = product_span(gens, key, spec)
    new_records = irreducible_complement(cell, decomposables)
    rank = dim - len(new_records)
    for rec in new_records:
        if not verify_semi_invariant(rec.polynomial, dspec):
            raise ConsistencyError(f"emitted generator at {key} is not in the kernel")
    ev = CellEvidence(key, degree, dim, "echelon", rank, len(new_records))
    return ev, new_records


def _degree_cells(spec: FormSpec, mode: str, degree: int) -> List[ComponentKey]:
    """Admissible nonempty cells of one total degree, in canonical order."""
    cells = []
    for mdeg in _multidegrees(spec.nforms, degree):
        top = sum(d * m for d, m in zip(spec.degrees, mdeg))
        orders = (0,) if mode == MODE_INVARIANTS else range(top % 2, top + 1, 2)
        for j in orders:
            key = ComponentKey(mdeg, j)
            if cell_dim(spec, key):
                cells.append(key)
    return cells


_WORKER_STATE: dict = {}


def _worker_init(spec: FormSpec, mode: str, gens: Tuple[GeneratorRecord, ...]) -> None:
    _WORKER_STATE["spec"] = spec
    _WORKER_STATE["dspec"] = DerivationSpec(spec)
    _WORKER_STATE["gens"] = gens
    _WORKER_STATE["enc"] = [_encode_poly(g.polynomial, linalg.MODULUS) for g in gens]


def _worker_close(args):
    key, dim = args
    return _close_cell(_WORKER_STATE["spec"], _WORKER_STATE["dspec"],
                       key, dim, _WORKER_STATE["gens"], _WORKER_STATE["enc"])


def default_worker_count() -> int:
    env = os.environ.get("FORGE_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def minimal_generating_set(spec: FormSpec, mode: str,
                           strategy: RunStrategy = RunStrategy.MULTIDEGREE,
                           cap_override: Optional[int] = None,
                           workers: Optional[int] = None,
                           progress=None) -> GeneratingSet:
    """Scan total degrees 2..cap and assemble the minimal generating set.

    The cap is min(18, beta) with beta the reconstructed denominator degree of
    the algebra's Poincare series; an unreconstructed series falls back to 18,
    and cap_override overrides both.  For semi/kernel modes the degree-1
    leading coefficients v(f, 0) are seeded first: each one spans its cell.
    progress, if given, is called as progress(event, payload) per degree/cell.
    """
    strategy = RunStrategy(strategy)
    _validate_mode_strategy(mode, strategy)
    if cap_override is not None and cap_override < 1:
        raise ValueError(f"cap override must be >= 1, got {cap_override}")
    if workers is None:
        workers = default_worker_count()

    series_mode = MODE_INVARIANTS if mode == MODE_INVARIANTS else MODE_SEMI
    form = rational_reconstruct(univariate_series(spec, series_mode,
                                                  RECONSTRUCT_TRUNCATION))
    beta = form.beta if form.reconstructed else None
    cap = cap_override if cap_override is not None else min(HARD_CAP, form.beta)
    cap = int(cap)
    if progress:
        progress("cap", cap)

    dspec = DerivationSpec(spec)
    gens: List[GeneratorRecord] = []
    cells: List[CellEvidence] = []

    if mode != MODE_INVARIANTS:
        for f in range(spec.nforms):
            poly = variable_poly(spec, (f, 0))
            mdeg = tuple(1 if i == f else 0 for i in range(spec.nforms))
            order = spec.degrees[f]
            key = ComponentKey(mdeg, order)
            if cell_dim(spec, key) != 1:
                raise ConsistencyError(f"degree-1 seed cell {key} is not one-dimensional")
            gens.append(GeneratorRecord(poly, mdeg, order, 1))
            cells.append(CellEvidence(key, 1, 1, "seed", 0, 1))

    blocks = _symmetry_blocks(spec.degrees)
    for degree in range(2, cap + 1):
        if progress:
            progress("degree", degree)
        keys = _degree_cells(spec, mode, degree)
        rep_of = {}
        rep_order = []
        seen = set()
        for key in keys:
            rep = (ComponentKey(_canonical_multidegree(key.multidegree, blocks),
                                key.order) if blocks else key)
            rep_of[key] = rep
            if rep not in seen:
                seen.add(rep)
                rep_order.append(rep)
        jobs = [(rep, cell_dim(spec, rep)) for rep in rep_order]
        if workers > 1 and len(jobs) > 1:
            snapshot = tuple(gens)
            with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init,
                                     initargs=(spec, mode, snapshot)) as pool:
                results = dict(zip(rep_order,
                                   pool.map(_worker_close, jobs, chunksize=8)))
        else:
            enc = [_encode_poly(g.polynomial, linalg.MODULUS) for g in gens]
            results = {rep: _close_cell(spec, dspec, rep, dim, gens, enc)
                       for rep, dim in jobs}
        for key in keys:
            rep = rep_of[key]
            rep_ev, rep_records = results[rep]
            if key == rep:
                ev, new_records = rep_ev, rep_records
            else:
                perm = _form_permutation(rep.multidegree, key.multidegree, blocks)
                new_records = [_permute_record(spec, r, perm) for r in rep_records]
                ev = CellEvidence(key, degree, rep_ev.dim, "symmetry",
                                  rep_ev.rank, len(new_records), rep)
            cells.append(ev)
            if progress:
                progress("cell", ev)
            for rec in new_records:
                gens.append(rec)
                if progress:
                    progress("generator", rec)

    return GeneratingSet(spec, mode, strategy, cap, beta,
                         tuple(gens), tuple(cells))


def verify_minimality(gset: GeneratingSet) -> None:
    """Re-check, after the full run, that no record is decomposable."""
    for idx, rec in enumerate(gset.records):
        prior = [g for g in gset.records if g.total_degree < rec.total_degree]
        spans = product_span(prior, rec.key, gset.spec)
        monos = component_monomials(gset.spec, rec.key)
        col_index = {m: i for i, m in enumerate(monos)}
        echelon = linalg.SparseEchelon()
        for p in spans:
            if p.terms:
                echelon.add(_poly_to_row(p, col_index))
        if echelon.contains(_poly_to_row(rec.polynomial, col_index)):
            raise ConsistencyError(f"record {idx} at {rec.key} is decomposable")


def verify_completeness(gset: GeneratingSet) -> None:
    """Audit the per-cell accounting: rank + new = dim at every visited cell."""
    for ev in gset.cells:
        if ev.method == "seed":
            continue
        if ev.rank + ev.new_count != ev.dim:
            raise ConsistencyError(f"cell {ev.key}: rank {ev.rank} + new "
                                   f"{ev.new_count} != dim {ev.dim}")
        if ev.method == "certificate":
            sub = ComponentKey(
                tuple(m - w for m, w in zip(ev.key.multidegree, ev.witness.multidegree)),
                ev.key.order - ev.witness.order)
            if cell_dim(gset.spec, sub) != ev.dim:
                raise ConsistencyError(f"cell {ev.key}: stale certificate witness")
        elif ev.method == "symmetry":
            if cell_dim(gset.spec, ev.witness) != ev.dim:
                raise ConsistencyError(f"cell {ev.key}: orbit representative "
                                       f"{ev.witness} has a different dimension")
