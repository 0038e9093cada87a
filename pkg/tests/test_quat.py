import random
from fractions import Fraction

import pytest

from ssgraph.quat import (KIND_E0, KIND_E1728, Lattice, LeftIdeal, Order,
                          QuatContext, _hnf, build_X_ell,
                          e0_basis_variants_coincide, has_sqrt_minus_p,
                          ideal_action, is_equivalent, predicted_neighborhood,
                          principal_witness, right_order, standard_order,
                          theta_iso)


def test_context_congruences():
    QuatContext(1, 7)
    QuatContext(3, 5)
    with pytest.raises(ValueError):
        QuatContext(1, 13)
    with pytest.raises(ValueError):
        QuatContext(3, 7)
    with pytest.raises(ValueError):
        QuatContext(2, 7)


def test_multiplication_table_and_norms():
    ctx = QuatContext(1, 7)
    i, j, k = ctx.el(0, 1), ctx.el(0, 0, 1), ctx.el(0, 0, 0, 1)
    assert i * i == ctx.el(-1)
    assert j * j == ctx.el(-7)
    assert i * j == k and j * i == -k
    assert k * k == ctx.el(-7)
    rng = random.Random(1)
    for _ in range(30):
        x = ctx.el(*[Fraction(rng.randint(-8, 8), rng.randint(1, 3))
                     for _ in range(4)])
        y = ctx.el(*[Fraction(rng.randint(-8, 8), rng.randint(1, 3))
                     for _ in range(4)])
        assert (x * y).nrd() == x.nrd() * y.nrd()
        assert (x * y).conj() == y.conj() * x.conj()
        assert x + x.conj() == ctx.el(x.trd())


def test_hnf_reduces_above_diagonal_entries():
    # two generating sets of the same lattice must produce identical rows;
    # the second column's pivot has entries in later columns, which once
    # broke the off-diagonal reduction
    a = _hnf([(6, 0, 0, 0), (3, 3, 0, 0), (0, 0, 6, 0), (3, 1, 3, 1)])
    b = _hnf([(6, 0, 0, 0), (3, 3, 0, 0), (0, 2, 0, 2), (0, 0, 3, 3)])
    assert a == b
    for r, row in enumerate(a):
        for c in range(r + 1, 4):
            assert 0 <= row[c] < a[c][c]


def test_hnf_rejects_rank_deficiency():
    with pytest.raises(ValueError):
        _hnf([(1, 0, 0, 0), (0, 1, 0, 0), (2, 3, 0, 0)])


def test_lattice_membership_and_index():
    order = standard_order(KIND_E1728, 7)
    one = order.ctx.one()
    assert order.contains(one)
    assert order.contains(order.ctx.el(Fraction(1, 2), 0, Fraction(1, 2), 0))
    assert not order.contains(order.ctx.el(Fraction(1, 2)))
    doubled = order.scale(2)
    assert order.contains_lattice(doubled)
    assert doubled.index_in(order) == 16


def test_standard_orders_are_maximal():
    for kind, ps in ((KIND_E1728, (7, 83, 199)), (KIND_E0, (5, 101, 983))):
        for p in ps:
            assert standard_order(kind, p).discriminant() == p * p


def test_order_validation_catches_non_rings():
    ctx = QuatContext(1, 7)
    bad = Lattice.from_generators(ctx, [
        ctx.el(1), ctx.el(0, 1), ctx.el(0, 0, 1),
        ctx.el(0, 0, 0, Fraction(1, 3)),
    ])
    with pytest.raises(ValueError):
        Order.checked(bad)


def test_alternate_e0_bases_span_the_same_order():
    for p in (5, 11, 101, 479):
        assert e0_basis_variants_coincide(p)


def test_theta_requires_large_ell_and_checks_hom():
    order = standard_order(KIND_E1728, 83)
    th = theta_iso(order, 5)
    assert (th.u, th.v) == (1, 1)
    x = order.basis()[2] * 3 + order.basis()[1]
    y = order.basis()[3] * 2 - order.basis()[0]
    from ssgraph.quat import _m2_mul
    assert th.of(x * y) == _m2_mul(th.of(x), th.of(y), 5)
    for bad in (2, 3, 4, 83):
        with pytest.raises(ValueError):
            theta_iso(order, bad)


def test_x_ell_members():
    order = standard_order(KIND_E0, 101)
    ideals = build_X_ell(order, 7)
    assert [i.label for i in ideals] == ["inf"] + [str(a) for a in range(7)]
    assert len({i.lattice for i in ideals}) == 8
    for ideal in ideals:
        assert ideal.norm == 7
        assert ideal.lattice.contains(order.ctx.el(7))


def test_ideal_action_requires_unit():
    order = standard_order(KIND_E1728, 83)
    ideals = build_X_ell(order, 5)
    with pytest.raises(ValueError):
        ideal_action(ideals[0], order.ctx.el(5), 5)  # nrd = 25 = 0 mod 5
    with pytest.raises(ValueError):
        ideal_action(ideals[0], order.ctx.el(Fraction(1, 2)), 5)  # not in O


def test_unit_witnesses_send_inf_to_zero():
    order = standard_order(KIND_E1728, 83)
    ideals = build_X_ell(order, 5)
    assert ideal_action(ideals[0], order.ctx.el(0, 1), 5) == ideals[1]

    order0 = standard_order(KIND_E0, 101)
    ideals0 = build_X_ell(order0, 5)
    eps = order0.ctx.el(Fraction(1, 2), Fraction(1, 2))
    assert ideal_action(ideals0[0], eps, 5) == ideals0[1]


def test_equivalence_is_reflexive_symmetric_and_witnessed():
    order = standard_order(KIND_E1728, 103)
    ideals = build_X_ell(order, 5)
    ok, mu = is_equivalent(ideals[0], ideals[0])
    assert ok and mu == order.ctx.one()
    for J in ideals[1:]:
        ab, mu = is_equivalent(ideals[0], J)
        ba, _ = is_equivalent(J, ideals[0])
        assert ab == ba
        if ab:
            # the witness actually carries J onto I
            carried = Lattice.from_generators(
                order.ctx, [b * mu for b in J.basis()])
            assert carried == ideals[0].lattice


def test_principal_witness_recognizes_principal_ideals():
    order = standard_order(KIND_E1728, 103)
    beta = order.basis()[1] + order.basis()[0] * 2
    n = int(beta.nrd())
    gen = LeftIdeal(order, Lattice.from_generators(
        order.ctx, [b * beta for b in order.basis()]))
    assert gen.norm == n
    w = principal_witness(gen)
    assert w is not None
    rebuilt = Lattice.from_generators(order.ctx,
                                      [b * w for b in order.basis()])
    assert rebuilt == gen.lattice


def test_right_orders_are_maximal_and_detect_fp():
    order = standard_order(KIND_E0, 101)
    for ideal in build_X_ell(order, 5):
        ro = right_order(ideal)
        assert ro.discriminant() == 101 * 101
    # the standard order itself contains j, a square root of -p
    assert has_sqrt_minus_p(order)
    assert has_sqrt_minus_p(standard_order(KIND_E1728, 83))


def test_predicted_neighborhood_refusals_and_shape():
    with pytest.raises(ValueError):
        predicted_neighborhood(KIND_E1728, 103, 3)
    with pytest.raises(ValueError):
        predicted_neighborhood(KIND_E1728, 103, 103)
    rep = predicted_neighborhood(KIND_E1728, 103, 5)
    assert rep.engine == "quaternion"
    assert rep.vertex_j == "1728"
    assert rep.loops + sum(nb.multiplicity for nb in rep.neighbors) == 6
    assert all(nb.j.startswith("[") for nb in rep.neighbors)
