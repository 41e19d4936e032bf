"""The classical binary quartic, start to finish.

A binary quartic has five coefficients x_0..x_4.  Its invariant algebra is
freely generated by one invariant of degree 2 and one of degree 3; every
other invariant (the discriminant included) is a polynomial in these two.
This script reproduces that from scratch and checks the discriminant claim.
"""

from fractions import Fraction

from sl2forge import (
    ComponentKey,
    FormSpec,
    minimal_generating_set,
    poly_mul,
    poly_scale,
    poly_sub,
    product_span,
    rational_reconstruct,
    render_poly_text,
    univariate_series,
)

spec = FormSpec((4,))

print("Poincare series of the invariant algebra, first 13 coefficients:")
series = univariate_series(spec, "invariants", 12)
print(" ", list(series.coeffs))

form = rational_reconstruct(series)
print("closed form: 1 / (1 - t^2)(1 - t^3), denominator degree beta =", form.beta)
print("so generator degrees are bounded by", form.beta)
print()

gset = minimal_generating_set(spec, "invariants")
print("minimal generating set:")
for rec in gset.records:
    print(f"  degree {rec.total_degree}:  {render_poly_text(rec.polynomial)}")
print()

# the discriminant of the quartic is a degree-6 invariant, so it has to be a
# combination of g2^3 and g3^2; the classical combination is g2^3 - 27 g3^2
span = product_span(list(gset.records), ComponentKey((6,), 0), spec)
print("degree-6 invariant cell is spanned by", len(span), "products:")
g2, g3 = gset.records[0].polynomial, gset.records[1].polynomial
cube = poly_mul(poly_mul(g2, g2), g2)
square = poly_mul(g3, g3)
combo = poly_sub(cube, poly_scale(square, Fraction(27)))
print("  g2^3 - 27 g3^2 =", render_poly_text(combo)[:70], "...")
print("(a scalar multiple of the discriminant)")
