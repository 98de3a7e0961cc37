from functools import lru_cache

import pytest

from i2gr.charring import CharPoly, evaluate_at_zero
from i2gr.chevalley import (
    UnsupportedK,
    chevalley_row,
    chevalley_table,
    coeff_bisym,
    coeff_sympl,
    table_to_csv,
    table_to_json,
)
from i2gr.classes import compute_class_table, expand_in_basis, hyperplane_class, multiply
from i2gr.subsets import Geometry, GrassmannianSpec, codim, enumerate_admissible

SPECS = [
    GrassmannianSpec(3),
    GrassmannianSpec(4),
    GrassmannianSpec(5),
    GrassmannianSpec(3, 2, Geometry.SYMPLECTIC),
    GrassmannianSpec(4, 2, Geometry.SYMPLECTIC),
    GrassmannianSpec(4, 3, Geometry.SYMPLECTIC),
    GrassmannianSpec(3, 3, Geometry.SYMPLECTIC),
]


@lru_cache(maxsize=None)
def table(spec):
    return compute_class_table(spec)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_rows_reappear_in_hyperplane_products(spec):
    # f_H f_I = f_H(I) f_I + sum_J a_{I,J} f_J
    t = table(spec)
    h = hyperplane_class(spec)
    for I in enumerate_admissible(spec):
        expansion = expand_in_basis(multiply(h, t[I]), t)
        expected = dict(chevalley_row(I, spec))
        if h[I]:
            expected[I] = h[I]
        assert expansion == expected, I


@pytest.mark.parametrize("spec", SPECS[:3], ids=str)
def test_linear_coefficients_only_at_middle_codimension(spec):
    n = spec.n
    for c in chevalley_table(spec):
        d = c.value.degree()
        assert d in (0, 1)
        if d == 1:
            assert codim(c.source, spec) == codim(c.target, spec) == 2 * n - 3
            i = c.source[0]
            assert c.source == (i, -i + 1)
            assert c.value == CharPoly.eps(n, i - 1) - CharPoly.eps(n, i)
        else:
            assert codim(c.target, spec) == codim(c.source, spec) + 1
            assert evaluate_at_zero(c.value) in (1, 2)


def test_degenerate_middle_targets_are_zero():
    # (3,-2) -> (0,-2) reads as (-1,-2): a dominated point one level down
    # whose coefficient is nonetheless zero
    assert coeff_bisym((3, -2), (-1, -2), 3) == 0
    assert coeff_bisym((2, -1), (-1, -2), 3) == 1
    assert coeff_bisym((4, -3), (1, -3), 4) == 0


def test_symplectic_values():
    spec = GrassmannianSpec(3, 2, Geometry.SYMPLECTIC)
    assert coeff_sympl((3, -2), (2, -3), spec) == 2
    assert coeff_sympl((3, -1), (1, -3), spec) == 0
    assert coeff_sympl((3, 2), (3, 1), spec) == 1
    assert coeff_sympl((3, 2), (-1, -2), spec) == 0
    with pytest.raises(ValueError):
        coeff_sympl((3, 2), (3, 1), GrassmannianSpec(3))


def test_unsupported_k():
    with pytest.raises(UnsupportedK):
        chevalley_row((4, 3, 2), GrassmannianSpec(4, 3))
    with pytest.raises(UnsupportedK):
        coeff_bisym((4, 3, 2), (4, 3, 1), 4)


def test_serializations():
    tab = chevalley_table(GrassmannianSpec(3))
    csv_text = table_to_csv(tab)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "source,target,value,degree" and len(lines) == 22
    assert '"[3,-2]","[1,-2]",-e3 + e2,1' in lines
    data = table_to_json(tab)
    assert len(data) == 21 and data[0]["source"] == [3, 2]
