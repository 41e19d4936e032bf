"""Semi-invariants: relaxing invariance to the upper triangular subgroup.

A semi-invariant only has to be killed by the lowering operator; the weight
it carries is called its order, and order 0 recovers the full invariants.
For two linear forms and one quadratic the semi-invariant algebra has ten
generators, and every one of them is a classical covariant in disguise.
"""

from sl2forge import (
    DerivationSpec,
    FormSpec,
    apply_lowering,
    minimal_generating_set,
    render_poly_text,
    verify_semi_invariant,
)

spec = FormSpec((1, 1, 2))  # x_0 x_1 | y_0 y_1 | u_0 u_1 u_2
dspec = DerivationSpec(spec)

gset = minimal_generating_set(spec, "semi")
print(f"{len(gset.records)} generators:")
for rec in gset.records:
    print(f"  degree {rec.total_degree}  multidegree {list(rec.multidegree)}"
          f"  order {rec.order}:  {render_poly_text(rec.polynomial)}")
print()

print("each one is annihilated by the lowering derivation:")
sample = gset.records[-1]
print("  D(", render_poly_text(sample.polynomial), ") =",
      render_poly_text(apply_lowering(sample.polynomial, dspec)))
assert all(verify_semi_invariant(r.polynomial, dspec) for r in gset.records)
print("  verified for all", len(gset.records))
print()

# the order-0 generators are exactly the joint invariants of the same forms
inv = minimal_generating_set(spec, "invariants")
order0 = [r for r in gset.records if r.order == 0]
print("order-0 slice has", len(order0), "generators; a standalone invariant")
print("run finds", len(inv.records), "generators over the same degrees")
