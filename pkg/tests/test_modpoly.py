import pytest

from ssgraph.ff import make_quadratic_context, serialize_element
from ssgraph.modpoly import PACKAGED_LEVELS, ModularPolynomial


def test_packaged_levels_load_and_validate():
    for ell in PACKAGED_LEVELS:
        table = ModularPolynomial.packaged(ell)
        assert table.ell == ell
        assert table.degree_in_each() == ell + 1
        coeffs = dict(((i, j), c) for i, j, c in table.coeffs)
        # symmetric after loading the upper triangle
        for (i, j), c in coeffs.items():
            assert coeffs[(j, i)] == c
        assert coeffs[(ell + 1, 0)] == 1
    with pytest.raises(ValueError):
        ModularPolynomial.packaged(7)


def test_level_two_evaluation_frozen_values():
    ctx = make_quadratic_context(179)
    table = ModularPolynomial.packaged(2)
    roots = {serialize_element(r): m
             for r, m in table.root_multiset(ctx.el(1728))}
    assert roots == {"22+0*t": 2, "117+0*t": 1}  # 1728 = 117 mod 179


def test_level_three_evaluation_frozen_values():
    table = ModularPolynomial.packaged(3)
    ctx7 = make_quadratic_context(7)
    f = table.evaluate_at(ctx7.el(1728))
    assert [c.key() for c in f.coeffs] == [(1, 0), (4, 0), (6, 0), (4, 0),
                                           (1, 0)]  # (X + 1)^4
    ctx11 = make_quadratic_context(11)
    roots = {serialize_element(r): m
             for r, m in table.root_multiset(ctx11.el(1728))}
    assert roots == {"0+0*t": 2, "1+0*t": 2}     # X^2 (X - 1)^2


def test_from_text_symmetrizes_and_rejects_garbage():
    table = ModularPolynomial.from_text(
        "ell 2\n3 0 1\n2 2 -1\n1 0 1488\n0 0 -162000\n2 1 40773375\n")
    coeffs = dict(((i, j), c) for i, j, c in table.coeffs)
    assert coeffs[(0, 1)] == 1488 and coeffs[(1, 2)] == 40773375

    cases = [
        ("3 0 1", "header"),
        ("ell 2\n0 3 1", "upper triangle"),
        ("ell 2\n3 0 1\n3 0 1", "duplicate"),
        ("ell 2\n3 0 2", "must be 1"),
        ("ell 2\n9 0 1", "outside"),
        ("ell 2\n3 0", "expected"),
        ("ell 1\n2 0 1", ">= 2"),
    ]
    for text, needle in cases:
        with pytest.raises(ValueError, match=needle):
            ModularPolynomial.from_text(text)


def test_load_file_roundtrip(tmp_path):
    src = (tmp_path / "phi2.txt")
    packaged = ModularPolynomial.packaged(2)
    lines = ["ell 2"] + [f"{i} {j} {c}" for i, j, c in packaged.coeffs
                         if i >= j]
    src.write_text("\n".join(lines) + "\n")
    again = ModularPolynomial.load_file(str(src))
    assert again == packaged


def test_comments_and_blank_lines_ignored():
    table = ModularPolynomial.from_text(
        "# classical level-2 table\nell 2\n\n3 0 1  # leading term\n")
    assert table.ell == 2
