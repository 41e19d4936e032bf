"""The kernel of a nilpotent derivation, computed as a finitely generated algebra.

Take the polynomial ring Q[x_0, x_1, y_0..y_3] and the derivation D that acts
on each block like a nilpotent Jordan matrix: D(v_i) = i v_{i-1}.  Its kernel
ker D = {p : D(p) = 0} is a subalgebra, and it is the same thing as the
algebra of joint semi-invariants of a linear and a cubic binary form.  Here
we compute its thirteen generators.
"""

from sl2forge import (
    ComponentKey,
    DerivationSpec,
    FormSpec,
    apply_lowering,
    kernel_cell_basis,
    minimal_generating_set,
    render_poly_text,
    variable_poly,
    Variable,
)

spec = FormSpec((1, 3))  # blocks of sizes 2 and 4
dspec = DerivationSpec(spec)

print("the derivation on a few variables:")
for var in (Variable(0, 1), Variable(1, 2), Variable(1, 0)):
    v = variable_poly(spec, var)
    print(f"  D({render_poly_text(v)}) = {render_poly_text(apply_lowering(v, dspec))}")
print()

print("one graded cell of the kernel, multidegree [1, 2] at weight 1:")
cell = kernel_cell_basis(dspec, ComponentKey((1, 2), 1))
for p in cell.basis:
    print("  ", render_poly_text(p))
print()

gset = minimal_generating_set(spec, "kernel")
print(f"ker D is generated by {len(gset.records)} elements:")
for rec in gset.records:
    print(f"  multidegree {list(rec.multidegree)} order {rec.order}:  "
          f"{render_poly_text(rec.polynomial)}")
