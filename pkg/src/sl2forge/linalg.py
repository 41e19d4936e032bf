"""Exact sparse linear algebra over the integers, plus a modular rank engine.

Rows are sparse dicts {column index: integer coefficient}.  Elimination is
fraction-free: rows are cross-multiplied by leading coefficients and stripped
of integer content after every combination, so everything stays in (small)
integers.  Reduced echelon form over the rationals is recovered at the end by
per-row primitive scaling, which gives a canonical basis: the reduced echelon
form of a subspace is unique, so results do not depend on elimination order.

The ModularEchelon tracks ranks mod a fixed prime with dense numpy rows.  A
modular rank is a lower bound on the true rank (specializing mod p can only
collapse pivots), which is exactly the direction needed to certify that a set
of vectors already spans a space of known dimension.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, Iterable, List, Optional

import numpy as np

Row = Dict[int, int]

# 2^31 - 1 (Mersenne prime): row values stay below 2^31, products below 2^62.
MODULUS = 2147483647


def strip_content(row: Row) -> Row:
    """Divide a row by the gcd of its entries (sign preserved)."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def reduce_row(row: Row, pivots: Dict[int, Row]) -> Row:
    """Eliminate the row against pivot rows keyed by leading column.

    Returns the fully reduced, content-stripped residue (possibly empty).
    """
    while row:
        lead = min(row)
        prow = pivots.get(lead)
        if prow is None:
            return row
        a, b = row[lead], prow[lead]
        g = gcd(a, b)
        fa, fb = b // g, a // g
        new = {c: fa * v for c, v in row.items()}
        for c, v in prow.items():
            nv = new.get(c, 0) - fb * v
            if nv:
                new[c] = nv
            else:
                new.pop(c, None)
        row = strip_content(new)
    return row


def forward_eliminate(rows: Iterable[Row]) -> Dict[int, Row]:
    """Row echelon pivots {leading column: row}; shortest rows first."""
    queue = sorted((dict(r) for r in rows if r), key=len, reverse=True)
    pivots: Dict[int, Row] = {}
    while queue:
        row = reduce_row(queue.pop(), pivots)
        if row:
            pivots[min(row)] = row
    return pivots


def back_eliminate(pivots: Dict[int, Row]) -> None:
    """Clear pivot columns from the rows above them, in place."""
    pcols = sorted(pivots)
    for idx in range(len(pcols) - 1, -1, -1):
        pc = pcols[idx]
        prow = pivots[pc]
        b = prow[pc]
        for pc2 in pcols[:idx]:
            row = pivots[pc2]
            a = row.get(pc)
            if a is None:
                continue
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {c: fa * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - fb * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            pivots[pc2] = strip_content(new)


def _canonical_sign(row: Row) -> Row:
    if row[min(row)] < 0:
        return {c: -v for c, v in row.items()}
    return row


def rref(rows: Iterable[Row]) -> List[Row]:
    """Canonical reduced echelon basis of the row space.

    Rows are integer-primitive with positive leading coefficient, sorted by
    leading column; this is the rational RREF rescaled row-wise, hence unique
    for the row space regardless of input order.
    """
    pivots = forward_eliminate(rows)
    back_eliminate(pivots)
    return [_canonical_sign(strip_content(pivots[c])) for c in sorted(pivots)]


def rank(rows: Iterable[Row]) -> int:
    return len(forward_eliminate(rows))


def nullspace(rows: Iterable[Row], ncols: int) -> List[Row]:
    """Canonical reduced-echelon basis of {x : A x = 0} for A given by rows.

    The kernel is read off the reduced echelon form of A through its free
    columns, then canonicalized by one more (small) reduced echelon pass.
    """
    pivots = forward_eliminate(rows)
    back_eliminate(pivots)
    pcols = sorted(pivots)
    pset = set(pcols)
    vectors = []
    for f in range(ncols):
        if f in pset:
            continue
        lcm = 1
        for pc in pcols:
            prow = pivots[pc]
            if f in prow:
                lead = prow[pc]
                lcm = lcm * lead // gcd(lcm, lead)
        vec = {f: lcm}
        for pc in pcols:
            prow = pivots[pc]
            if f in prow:
                vec[pc] = -prow[f] * (lcm // prow[pc])
        vectors.append(strip_content(vec))
    return rref(vectors)


class SparseEchelon:
    """Incremental exact echelon for rank and membership tests."""

    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Row) -> bool:
        """Insert a row; True if it was independent of the current span."""
        residue = reduce_row(strip_content(dict(row)), self.pivots)
        if residue:
            self.pivots[min(residue)] = residue
            return True
        return False

    def contains(self, row: Row) -> bool:
        return not reduce_row(strip_content(dict(row)), self.pivots)


class ModularEchelon:
    """Incremental echelon mod a fixed prime over dense numpy rows.

    rank is a certified lower bound on the exact rank of the inserted rows.
    """

    def __init__(self, ncols: int, prime: int = MODULUS):
        self.ncols = ncols
        self.prime = prime
        self._rows: List[np.ndarray] = []
        self._leads: List[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add_dict(self, row: Row, col_index: Dict[int, int]) -> bool:
        packed = np.zeros(self.ncols, dtype=np.int64)
        p = self.prime
        for c, v in row.items():
            packed[col_index[c]] = v % p
        return self.add(packed)

    def add(self, packed: np.ndarray) -> bool:
        p = self.prime
        for lead, prow in zip(self._leads, self._rows):
            coef = packed[lead]
            if coef:
                packed = (packed - coef * prow) % p
        nz = np.nonzero(packed)[0]
        if nz.size == 0:
            return False
        lead = int(nz[0])
        inv = pow(int(packed[lead]), p - 2, p)
        packed = (packed * inv) % p
        self._leads.append(lead)
        self._rows.append(packed)
        return True
