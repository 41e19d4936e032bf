"""Exact minimal generating sets for invariants and semi-invariants of
binary forms, organized around the lowering derivation whose kernel they form."""

from .derivation import (CellBasis, ConsistencyError, DerivationSpec,
                         apply_lowering, apply_raising, kernel_cell_basis,
                         verify_semi_invariant)
from .dims import (PrecisionError, RationalForm, UnivariateSeries, cell_dim,
                   poincare_table, qbinomial, rational_reconstruct,
                   univariate_series)
from .forms import (ComponentKey, FormSpec, Polynomial, Variable,
                    component_monomials, leading_monomial, multidegree,
                    poly_add, poly_mul, poly_scale, poly_sub,
                    primitive_normalize, variable_poly, weight)
from .genset import (GeneratingSet, GeneratorRecord, RunStrategy,
                     irreducible_complement, minimal_generating_set,
                     product_span, verify_completeness, verify_minimality)
from .render import render_letters, render_poly_latex, render_poly_text

__version__ = "0.1.0"

__all__ = [
    "CellBasis", "ComponentKey", "ConsistencyError", "DerivationSpec",
    "FormSpec", "GeneratingSet", "GeneratorRecord", "Polynomial",
    "PrecisionError", "RationalForm", "RunStrategy", "UnivariateSeries",
    "Variable", "apply_lowering", "apply_raising", "cell_dim",
    "component_monomials", "irreducible_complement", "kernel_cell_basis",
    "leading_monomial", "minimal_generating_set", "multidegree",
    "poincare_table", "poly_add", "poly_mul", "poly_scale", "poly_sub",
    "primitive_normalize", "product_span", "qbinomial",
    "rational_reconstruct", "render_letters", "render_poly_latex",
    "render_poly_text", "univariate_series", "variable_poly",
    "verify_completeness", "verify_minimality", "verify_semi_invariant",
    "weight",
]
