import pytest

from ssgraph.report import (ENGINE_GEOMETRIC, Neighbor, NeighborhoodReport,
                            csv_rows, text_block)


def R(loops, neighbors, ell=5):
    return NeighborhoodReport(p=103, ell=ell, vertex_j="80+0*t",
                              loops=loops, neighbors=tuple(neighbors),
                              engine=ENGINE_GEOMETRIC)


def test_degree_budget_enforced():
    nb = Neighbor(j="1+0*t", multiplicity=2, in_prime_field=True)
    rep = R(2, [nb, Neighbor(j="2+0*t", multiplicity=2,
                             in_prime_field=False)])
    assert rep.distinct_count == 2
    assert rep.fp_count == 1
    assert rep.multiplicity_profile() == (2, 2)
    with pytest.raises(ValueError):
        R(3, [nb])  # 3 + 2 != 6


def test_duplicate_and_self_neighbors_rejected():
    nb = Neighbor(j="1+0*t", multiplicity=3, in_prime_field=True)
    with pytest.raises(ValueError):
        R(0, [nb, nb])
    with pytest.raises(ValueError):
        R(3, [Neighbor(j="80+0*t", multiplicity=3, in_prime_field=True)])


def test_engine_name_validated():
    with pytest.raises(ValueError):
        NeighborhoodReport(p=7, ell=2, vertex_j="6+0*t", loops=3,
                           neighbors=(), engine="psychic")


def test_json_roundtrip_revalidates():
    rep = R(2, [Neighbor(j="9+1*t", multiplicity=4, in_prime_field=False)])
    back = NeighborhoodReport.from_json(rep.to_json())
    assert back == rep
    doc = rep.to_dict()
    doc["distinct_count"] = 7
    with pytest.raises(ValueError):
        NeighborhoodReport.from_dict(doc)


def test_csv_rows_cover_loop_only_reports():
    lonely = NeighborhoodReport(p=7, ell=2, vertex_j="6+0*t", loops=3,
                                neighbors=(), engine=ENGINE_GEOMETRIC)
    rows = csv_rows([lonely])
    assert rows[0].startswith("p,ell,vertex_j")
    assert rows[1] == "7,2,6+0*t,geometric,3,0,0,,,"
    assert "loops: 3" in text_block(lonely)
