"""Counting before computing: cell dimensions and Poincare series.

Every graded piece of the (semi-)invariant algebra has a dimension that can
be read off a product of Gaussian binomials, no linear algebra involved.
The generator scan leans on this constantly: most cells are closed by
counting alone.  This script shows the counting layer by itself.
"""

from sl2forge import (
    ComponentKey,
    FormSpec,
    cell_dim,
    poincare_table,
    qbinomial,
    rational_reconstruct,
    univariate_series,
)
from sl2forge.render import render_series_factors, render_series_poly

print("Gaussian binomial [5 choose 2]_t:", qbinomial(5, 2))
print("its coefficients count partitions into at most 2 parts, each <= 3")
print()

spec = FormSpec((3, 4))
key = ComponentKey((4, 2), 0)
print("invariants of a cubic and a quartic, multidegree [4, 2]:")
print("  dimension", cell_dim(spec, key))
print()

print("all semi-invariant cells of two linear forms up to total degree 3:")
table = poincare_table(FormSpec((1, 1)), "semi", 3)
for cell_key in sorted(table):
    print(f"  multidegree {list(cell_key.multidegree)} order {cell_key.order}: "
          f"dim {table[cell_key]}")
print()

for degrees in ((4,), (2, 2)):
    series = univariate_series(FormSpec(degrees), "invariants", 24)
    form = rational_reconstruct(series)
    num = render_series_poly(form.numerator)
    den = render_series_factors(form.denominator_factors)
    print(f"invariant series for degrees {list(degrees)}: ({num}) / {den}")
    print(f"  generator degrees bounded by beta = {form.beta}")
