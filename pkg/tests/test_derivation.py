import random
from fractions import Fraction

from sl2forge import (
    ComponentKey,
    DerivationSpec,
    FormSpec,
    Polynomial,
    Variable,
    apply_lowering,
    apply_raising,
    cell_dim,
    kernel_cell_basis,
    leading_monomial,
    poly_add,
    poly_mul,
    poly_scale,
    poly_sub,
    primitive_normalize,
    variable_poly,
    verify_semi_invariant,
    weight,
)
from sl2forge.forms import zero

from known_values import QUARTIC_DEGREE2, QUARTIC_DEGREE3, build_poly


def random_poly(spec, rng, nterms=4, maxexp=2):
    terms = {}
    for _ in range(nterms):
        mono = tuple(rng.randrange(maxexp + 1) for _ in range(spec.nvars))
        coeff = Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
        if coeff:
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return Polynomial(spec, {m: c for m, c in terms.items() if c})


def test_action_on_variables():
    spec = FormSpec((3, 2))
    dspec = DerivationSpec(spec)
    for f, d in enumerate(spec.degrees):
        for i in range(d + 1):
            v = variable_poly(spec, Variable(f, i))
            low = apply_lowering(v, dspec)
            if i == 0:
                assert low == zero(spec)
            else:
                assert low == poly_scale(variable_poly(spec, Variable(f, i - 1)), Fraction(i))
            high = apply_raising(v, dspec)
            if i == d:
                assert high == zero(spec)
            else:
                assert high == poly_scale(variable_poly(spec, Variable(f, i + 1)), Fraction(d - i))


def test_lowering_is_linear_and_leibniz():
    rng = random.Random(17)
    spec = FormSpec((1, 3))
    dspec = DerivationSpec(spec)
    for _ in range(25):
        p = random_poly(spec, rng)
        q = random_poly(spec, rng)
        c = Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
        assert apply_lowering(poly_add(p, poly_scale(q, c)), dspec) == poly_add(
            apply_lowering(p, dspec), poly_scale(apply_lowering(q, dspec), c))
        assert apply_lowering(poly_mul(p, q), dspec) == poly_add(
            poly_mul(apply_lowering(p, dspec), q),
            poly_mul(p, apply_lowering(q, dspec)))


def test_raising_satisfies_leibniz_too():
    rng = random.Random(71)
    spec = FormSpec((2, 2))
    dspec = DerivationSpec(spec)
    for _ in range(15):
        p = random_poly(spec, rng)
        q = random_poly(spec, rng)
        assert apply_raising(poly_mul(p, q), dspec) == poly_add(
            poly_mul(apply_raising(p, dspec), q),
            poly_mul(p, apply_raising(q, dspec)))


def test_commutator_is_the_weight_operator():
    rng = random.Random(23)
    spec = FormSpec((1, 2, 3))
    dspec = DerivationSpec(spec)
    for _ in range(20):
        p = random_poly(spec, rng)
        de = apply_lowering(apply_raising(p, dspec), dspec)
        ed = apply_raising(apply_lowering(p, dspec), dspec)
        expected = Polynomial(spec, {
            m: c * weight(m, spec) for m, c in p.terms.items() if weight(m, spec)
        })
        assert poly_sub(de, ed) == expected


def test_lowering_is_nilpotent_with_weight_bound():
    rng = random.Random(37)
    spec = FormSpec((2, 3))
    dspec = DerivationSpec(spec)
    for _ in range(15):
        p = random_poly(spec, rng, nterms=3, maxexp=2)
        if not p.terms:
            continue
        # each application raises every monomial weight by 2; weights are
        # bounded by the total degree in play, so the chain must die
        bound = max(sum(d * e for d, e in zip(spec.degrees,
                                              (sum(m[:3]), sum(m[3:]))))
                    for m in p.terms) + 1
        steps = 0
        cur = p
        while cur.terms:
            cur = apply_lowering(cur, dspec)
            steps += 1
            assert steps <= bound
        assert cur == zero(spec)


def test_quartic_invariants_are_killed():
    spec = FormSpec((4,))
    dspec = DerivationSpec(spec)
    for fixture in (QUARTIC_DEGREE2, QUARTIC_DEGREE3):
        p = build_poly(spec, fixture)
        assert verify_semi_invariant(p, dspec)
    x1 = variable_poly(spec, Variable(0, 1))
    assert not verify_semi_invariant(x1, dspec)
    assert verify_semi_invariant(zero(spec), dspec)


def test_kernel_cell_basis_matches_counting_dimension():
    rng = random.Random(53)
    specs = [FormSpec((4,)), FormSpec((1, 3)), FormSpec((1, 1, 2))]
    checked = 0
    for _ in range(60):
        spec = rng.choice(specs)
        dspec = DerivationSpec(spec)
        mdeg = tuple(rng.randrange(3) for _ in spec.degrees)
        top = sum(d * m for d, m in zip(spec.degrees, mdeg))
        j = rng.randrange(top + 1) if top else 0
        if (top - j) % 2:
            continue
        key = ComponentKey(mdeg, j)
        cell = kernel_cell_basis(dspec, key)
        assert len(cell.basis) == cell_dim(spec, key)
        leads = set()
        for p in cell.basis:
            assert verify_semi_invariant(p, dspec)
            assert primitive_normalize(p) == p
            leads.add(leading_monomial(p))
        assert len(leads) == len(cell.basis)
        checked += 1
    assert checked > 30


def test_kernel_cell_basis_known_small_cells():
    spec = FormSpec((4,))
    dspec = DerivationSpec(spec)
    cell = kernel_cell_basis(dspec, ComponentKey((2,), 0))
    assert len(cell.basis) == 1
    assert cell.basis[0] == primitive_normalize(build_poly(spec, QUARTIC_DEGREE2))
    cell = kernel_cell_basis(dspec, ComponentKey((3,), 0))
    assert len(cell.basis) == 1
    assert cell.basis[0] == primitive_normalize(build_poly(spec, QUARTIC_DEGREE3))
