import dataclasses

import pytest

from sl2forge import (
    ComponentKey,
    ConsistencyError,
    FormSpec,
    GeneratingSet,
    RunStrategy,
    cell_dim,
    irreducible_complement,
    kernel_cell_basis,
    minimal_generating_set,
    primitive_normalize,
    product_span,
    render_poly_text,
    verify_completeness,
    verify_minimality,
)
from sl2forge.derivation import DerivationSpec
from sl2forge.genset import CellEvidence, HARD_CAP, default_worker_count
from sl2forge.render import render_json

from known_values import QUARTIC_DEGREE2, QUARTIC_DEGREE3, build_poly


def test_binary_quadratic_has_one_invariant():
    gset = minimal_generating_set(FormSpec((2,)), "invariants")
    assert gset.degree_counts == {2: 1}
    assert render_poly_text(gset.records[0].polynomial) == "x_0*x_2 - x_1^2"
    assert gset.beta == 2
    assert gset.cap_used == 2


def test_two_linear_forms_give_one_bracket():
    gset = minimal_generating_set(FormSpec((1, 1)), "invariants")
    assert len(gset.records) == 1
    rec = gset.records[0]
    assert rec.multidegree == (1, 1)
    assert rec.order == 0
    assert render_poly_text(rec.polynomial) == "x_0*y_1 - x_1*y_0"


def test_quartic_generators_match_reference():
    spec = FormSpec((4,))
    gset = minimal_generating_set(spec, "invariants")
    assert gset.degree_counts == {2: 1, 3: 1}
    expected = {
        2: primitive_normalize(build_poly(spec, QUARTIC_DEGREE2)),
        3: primitive_normalize(build_poly(spec, QUARTIC_DEGREE3)),
    }
    for rec in gset.records:
        assert primitive_normalize(rec.polynomial) == expected[rec.total_degree]


def test_semi_mode_seeds_leading_variables():
    gset = minimal_generating_set(FormSpec((1, 2)), "semi")
    seeds = [(r.multidegree, r.order) for r in gset.records if r.total_degree == 1]
    assert ((1, 0), 1) in seeds
    assert ((0, 1), 2) in seeds
    for rec in gset.records:
        if rec.total_degree == 1:
            assert len(rec.polynomial.terms) == 1


def test_mode_and_strategy_validation():
    spec = FormSpec((2,))
    with pytest.raises(ValueError):
        minimal_generating_set(spec, "covariants")
    with pytest.raises(ValueError):
        minimal_generating_set(spec, "semi", strategy=RunStrategy.TOTAL_DEGREE)
    with pytest.raises(ValueError):
        minimal_generating_set(spec, "invariants", cap_override=0)


def test_cap_override_extends_scan():
    gset = minimal_generating_set(FormSpec((2,)), "invariants", cap_override=6)
    assert gset.cap_used == 6
    assert gset.degree_counts == {2: 1}
    assert HARD_CAP == 18


def test_strategy_equivalence_on_quartic_and_triple():
    for degrees in ((4,), (1, 1, 2)):
        spec = FormSpec(degrees)
        by_cell = minimal_generating_set(spec, "invariants",
                                         strategy=RunStrategy.MULTIDEGREE)
        by_degree = minimal_generating_set(spec, "invariants",
                                           strategy=RunStrategy.TOTAL_DEGREE)
        assert by_cell.records == by_degree.records
        assert by_cell.cap_used == by_degree.cap_used
        assert by_cell.beta == by_degree.beta


def test_worker_counts_do_not_change_output():
    spec = FormSpec((1, 3))
    texts = set()
    for workers in (1, 2, 3):
        gset = minimal_generating_set(spec, "kernel", workers=workers)
        texts.add(render_json(gset))
    assert len(texts) == 1
    assert default_worker_count() >= 1


def test_product_span_enumerates_decomposables():
    spec = FormSpec((4,))
    gset = minimal_generating_set(spec, "invariants")
    prior = list(gset.records)
    assert len(product_span(prior, ComponentKey((4,), 0), spec)) == 1  # g2^2
    assert len(product_span(prior, ComponentKey((5,), 0), spec)) == 1  # g2*g3
    span6 = product_span(prior, ComponentKey((6,), 0), spec)
    assert len(span6) == 2  # g2^3 and g3^2
    assert product_span([], ComponentKey((6,), 0), spec) == []
    # priors must sit strictly below the target cell
    with pytest.raises(ValueError):
        product_span(prior, ComponentKey((1,), 0), spec)


def test_irreducible_complement_finds_nothing_when_products_fill():
    spec = FormSpec((4,))
    dspec = DerivationSpec(spec)
    gset = minimal_generating_set(spec, "invariants")
    key = ComponentKey((6,), 0)
    cell = kernel_cell_basis(dspec, key)
    assert cell_dim(spec, key) == 2
    new = irreducible_complement(cell, product_span(list(gset.records), key, spec))
    assert new == []


def test_irreducible_complement_extends_partial_span():
    spec = FormSpec((4,))
    dspec = DerivationSpec(spec)
    gset = minimal_generating_set(spec, "invariants")
    g2 = next(r for r in gset.records if r.total_degree == 2)
    key = ComponentKey((6,), 0)
    cell = kernel_cell_basis(dspec, key)
    # only g2^3 available: one new element must be emitted to reach dim 2
    new = irreducible_complement(cell, product_span([g2] * 1, key, spec))
    assert len(new) == 1
    assert new[0].multidegree == (6,)
    assert new[0].order == 0


def test_irreducible_complement_rejects_vectors_outside_kernel():
    spec = FormSpec((4,))
    dspec = DerivationSpec(spec)
    cell = kernel_cell_basis(dspec, ComponentKey((2,), 0))
    from sl2forge import Variable, poly_mul, variable_poly
    x0 = variable_poly(spec, Variable(0, 0))
    x4 = variable_poly(spec, Variable(0, 4))
    with pytest.raises(ConsistencyError):
        irreducible_complement(cell, [poly_mul(x0, x4)])


def test_every_generator_cell_has_evidence():
    gset = minimal_generating_set(FormSpec((1, 3)), "kernel")
    evidence = {ev.key: ev for ev in gset.cells}
    methods = {ev.method for ev in gset.cells}
    assert methods <= {"seed", "certificate", "modular-rank", "echelon", "symmetry"}
    for rec in gset.records:
        if rec.total_degree == 1:
            continue
        ev = evidence[ComponentKey(rec.multidegree, rec.order)]
        assert ev.new_count >= 1
        assert ev.method == "echelon"  # only the exact tier emits generators
        assert ev.rank + ev.new_count == ev.dim


def test_verifiers_pass_and_catch_tampering():
    spec = FormSpec((4,))
    gset = minimal_generating_set(spec, "invariants", cap_override=8)
    verify_minimality(gset)
    verify_completeness(gset)

    g2 = next(r for r in gset.records if r.total_degree == 2)
    square = dataclasses.replace(
        g2,
        polynomial=primitive_normalize(
            __import__("sl2forge").poly_mul(g2.polynomial, g2.polynomial)),
        multidegree=(4,), total_degree=4)
    padded = dataclasses.replace(gset, records=gset.records + (square,))
    with pytest.raises(ConsistencyError):
        verify_minimality(padded)

    wrong_cells = tuple(
        dataclasses.replace(ev, dim=ev.dim + 1) if ev.method == "echelon" else ev
        for ev in gset.cells)
    with pytest.raises(ConsistencyError):
        verify_completeness(dataclasses.replace(gset, cells=wrong_cells))


def test_progress_callback_order():
    events = []
    minimal_generating_set(FormSpec((4,)), "invariants",
                           progress=lambda kind, payload: events.append(kind))
    assert events[0] == "cap"
    assert "generator" in events
    assert "degree" in events
    first_degree = events.index("degree")
    assert all(e == "cap" for e in events[:first_degree])
