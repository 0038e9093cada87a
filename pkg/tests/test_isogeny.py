import json

import pytest

from ssgraph.ec import Curve, j_invariant
from ssgraph.ff import make_quadratic_context, serialize_element
from ssgraph.isogeny import (bfs_graph, enumerate_kernels, neighborhood,
                             supersingular_count, velu_codomain)
from ssgraph.poly import Polynomial


def test_velu_three_isogeny_anchor():
    """Kernel x = 0 on y^2 = x^3 + 1 lands on y^2 = x^3 - 27 (same j = 0)."""
    ctx = make_quadratic_context(1000003)
    E = Curve(ctx.el(0), ctx.el(1))
    h = Polynomial.x(ctx)  # kernel polynomial of the 3-subgroup at x = 0
    cod, j2 = velu_codomain(E, h)
    assert cod.a == ctx.el(0) and cod.b == ctx.el(-27)
    assert j2 == ctx.el(0)


def test_enumerate_kernels_counts_and_degrees():
    ctx = make_quadratic_context(103)
    E = Curve(ctx.el(1), ctx.el(0))
    for ell in (2, 3, 5):
        data = enumerate_kernels(E, ell)
        assert len(data) == ell + 1
        want_deg = 1 if ell == 2 else (ell - 1) // 2
        for d in data:
            assert d.h.degree == want_deg
            assert d.h.lead() == d.h.ctx.one()


def test_neighborhood_small_cases():
    ctx7 = make_quadratic_context(7)
    rep = neighborhood(ctx7.el(1728), 2)
    assert rep.loops == 3 and rep.distinct_count == 0

    ctx5 = make_quadratic_context(5)
    assert neighborhood(ctx5.el(0), 2).loops == 3
    assert neighborhood(ctx5.el(0), 3).loops == 4

    ctx11 = make_quadratic_context(11)
    rep = neighborhood(ctx11.el(1728), 3)
    assert rep.loops == 2
    assert [(nb.j, nb.multiplicity) for nb in rep.neighbors] == [("0+0*t", 2)]


def test_neighborhood_rejects_bad_inputs():
    ctx = make_quadratic_context(11)
    with pytest.raises(ValueError):
        neighborhood(ctx.el(1728), 11)   # ell = p
    with pytest.raises(ValueError):
        neighborhood(ctx.el(2), 3)       # ordinary vertex


def test_degree_budget_always_exact():
    for p, ell in ((103, 5), (103, 13), (179, 2), (47, 3)):
        ctx = make_quadratic_context(p)
        j = ctx.el(1728) if p % 4 == 3 else ctx.el(0)
        rep = neighborhood(j, ell)
        assert rep.loops + sum(nb.multiplicity for nb in rep.neighbors) \
            == ell + 1


def test_seed_changes_nothing_observable():
    ctx = make_quadratic_context(103)
    a = neighborhood(ctx.el(1728), 5, seed=0)
    b = neighborhood(ctx.el(1728), 5, seed=12345)
    assert a == b


def test_bfs_covers_whole_graph():
    ctx = make_quadratic_context(179)
    g = bfs_graph(ctx.el(1728), 2)
    assert g.complete
    assert len(g.vertices) == supersingular_count(179) == 16
    # every expanded vertex keeps its full report
    assert set(g.reports) == set(g.vertices)
    # smallest case: one vertex, all loops
    g7 = bfs_graph(make_quadratic_context(7).el(1728), 2)
    assert g7.vertices == ("6+0*t",) and g7.edges[0][2] == 3


def test_bfs_budget_truncation_flagged():
    ctx = make_quadratic_context(179)
    g = bfs_graph(ctx.el(1728), 2, max_vertices=3)
    assert not g.complete
    assert len(g.reports) == 3


def test_graph_exports():
    ctx = make_quadratic_context(11)
    g = bfs_graph(ctx.el(1728), 3)
    doc = g.to_json_dict()
    assert doc["p"] == 11 and doc["complete"] is True
    assert {v for e in doc["edges"] for v in (e["u"], e["v"])} \
        <= set(doc["vertices"])
    text = g.to_dot()
    assert "mult=" in text and '"0+0*t"' in text
    json.dumps(doc)  # serializable


def test_supersingular_count_formula():
    assert supersingular_count(7) == 1
    assert supersingular_count(11) == 2
    assert supersingular_count(47) == 5
    assert supersingular_count(167) == 15
    assert supersingular_count(311) == 27


def test_codomain_j_descends_to_quadratic_field():
    # kernels hosted upstairs must still report j in F_{p^2}
    ctx = make_quadratic_context(23)
    rep = neighborhood(ctx.el(1728), 5)
    for nb in rep.neighbors:
        assert "+" in nb.j and "[" not in nb.j
    assert rep.loops + sum(n.multiplicity for n in rep.neighbors) == 6
