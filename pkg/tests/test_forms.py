import random
from fractions import Fraction

import pytest

from sl2forge import (
    ComponentKey,
    FormSpec,
    Polynomial,
    Variable,
    component_monomials,
    leading_monomial,
    multidegree,
    poly_add,
    poly_mul,
    poly_scale,
    poly_sub,
    primitive_normalize,
    variable_poly,
    weight,
)
from sl2forge.forms import set_cell_warn_threshold, zero


def random_poly(spec, rng, nterms=4, maxexp=2):
    terms = {}
    for _ in range(nterms):
        mono = tuple(rng.randrange(maxexp + 1) for _ in range(spec.nvars))
        coeff = Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
        if coeff:
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
    terms = {m: c for m, c in terms.items() if c}
    return Polynomial(spec, terms)


def test_spec_layout():
    spec = FormSpec((3, 4))
    assert spec.nvars == 9
    assert spec.offsets == (0, 4)
    assert spec.degrees == (3, 4)


def test_spec_rejects_bad_degrees():
    with pytest.raises(ValueError):
        FormSpec(())
    with pytest.raises(ValueError):
        FormSpec((0,))
    with pytest.raises(ValueError):
        FormSpec((2, -1))


def test_weight_and_multidegree():
    spec = FormSpec((1, 2))
    # variables x_0, x_1, u_0, u_1, u_2 carry weights d - 2i
    assert [weight(m, spec) for m in map(leading_monomial, (
        variable_poly(spec, Variable(0, 0)),
        variable_poly(spec, Variable(0, 1)),
        variable_poly(spec, Variable(1, 0)),
        variable_poly(spec, Variable(1, 1)),
        variable_poly(spec, Variable(1, 2)),
    ))] == [1, -1, 2, 0, -2]
    mono = (1, 2, 0, 3, 1)
    assert multidegree(mono, spec) == (3, 4)
    assert weight(mono, spec) == 1 * 1 + 2 * (-1) + 3 * 0 + 1 * (-2)


def test_grading_additive_under_product():
    rng = random.Random(11)
    spec = FormSpec((2, 3))
    for _ in range(25):
        p = random_poly(spec, rng)
        q = random_poly(spec, rng)
        pq = poly_mul(p, q)
        for mono in pq.terms:
            # every product monomial is a sum of one monomial from each factor
            found = False
            for a in p.terms:
                b = tuple(x - y for x, y in zip(mono, a))
                if all(e >= 0 for e in b) and b in q.terms:
                    found = True
                    assert multidegree(mono, spec) == tuple(
                        s + t for s, t in zip(multidegree(a, spec), multidegree(b, spec))
                    )
                    assert weight(mono, spec) == weight(a, spec) + weight(b, spec)
            assert found


def test_poly_arithmetic_exact():
    spec = FormSpec((2,))
    x0 = variable_poly(spec, Variable(0, 0))
    x1 = variable_poly(spec, Variable(0, 1))
    x2 = variable_poly(spec, Variable(0, 2))
    disc = poly_sub(poly_mul(x0, x2), poly_scale(poly_mul(x1, x1), Fraction(1)))
    assert disc.terms == {(1, 0, 1): Fraction(1), (0, 2, 0): Fraction(-1)}
    assert poly_add(disc, poly_scale(disc, Fraction(-1))) == zero(spec)
    third = poly_scale(disc, Fraction(1, 3))
    assert third.terms[(1, 0, 1)] == Fraction(1, 3)


def test_poly_mul_ring_identities():
    rng = random.Random(7)
    spec = FormSpec((1, 1, 2))
    for _ in range(15):
        p = random_poly(spec, rng)
        q = random_poly(spec, rng)
        r = random_poly(spec, rng)
        assert poly_mul(p, q) == poly_mul(q, p)
        assert poly_mul(p, poly_add(q, r)) == poly_add(poly_mul(p, q), poly_mul(p, r))
        assert poly_mul(poly_mul(p, q), r) == poly_mul(p, poly_mul(q, r))


def test_mixed_spec_rejected():
    a = FormSpec((2,))
    b = FormSpec((3,))
    p = variable_poly(a, Variable(0, 0))
    q = variable_poly(b, Variable(0, 0))
    with pytest.raises(ValueError):
        poly_add(p, q)
    with pytest.raises(ValueError):
        poly_mul(p, q)


def test_primitive_normalize_canonical():
    rng = random.Random(3)
    spec = FormSpec((3,))
    for _ in range(20):
        p = random_poly(spec, rng)
        if not p.terms:
            continue
        n = primitive_normalize(p)
        # integer, content 1, positive leading coefficient
        assert all(c.denominator == 1 for c in n.terms.values())
        from math import gcd
        g = 0
        for c in n.terms.values():
            g = gcd(g, abs(c.numerator))
        assert g == 1
        assert n.terms[leading_monomial(n)] > 0
        # idempotent and scale-invariant including sign flips
        assert primitive_normalize(n) == n
        assert primitive_normalize(poly_scale(p, Fraction(-22, 7))) == n
    with pytest.raises(ValueError):
        primitive_normalize(zero(spec))


def test_component_monomials_worked_example():
    spec = FormSpec((4,))
    monos = component_monomials(spec, ComponentKey((2,), 0))
    assert monos == [
        (1, 0, 0, 0, 1),
        (0, 1, 0, 1, 0),
        (0, 0, 2, 0, 0),
    ]


def test_component_monomials_filters_weight_and_degree():
    spec = FormSpec((1, 3))
    key = ComponentKey((1, 2), 3)
    monos = component_monomials(spec, key)
    assert monos
    for m in monos:
        assert multidegree(m, spec) == (1, 2)
        assert weight(m, spec) == 3
    # graded-lex descending, all same total degree here
    assert monos == sorted(monos, key=lambda m: (sum(m), m), reverse=True)
    # odd weight with even degree-sum is empty by parity
    assert component_monomials(spec, ComponentKey((2, 0), 1)) == []


def test_cell_warn_threshold_logs(caplog):
    spec = FormSpec((2,))
    set_cell_warn_threshold(1)
    try:
        with caplog.at_level("WARNING", logger="sl2forge"):
            component_monomials(spec, ComponentKey((2,), 0))
        assert any("may be expensive" in r.message for r in caplog.records)
    finally:
        set_cell_warn_threshold(None)


def test_leading_monomial_graded_lex():
    spec = FormSpec((2,))
    p = Polynomial(spec, {
        (0, 2, 0): Fraction(5),
        (1, 0, 1): Fraction(-1),
        (3, 0, 0): Fraction(2),
    })
    assert leading_monomial(p) == (3, 0, 0)
    with pytest.raises(ValueError):
        leading_monomial(zero(spec))
