import json
from functools import lru_cache

import pytest

from i2gr import chevalley as chevalley_module
from i2gr import classes as classes_module
from i2gr.charring import CharPoly
from i2gr.classes import (
    ClassComputationError,
    ClassTable,
    DivisionFailed,
    EquivariantClass,
    NotInSpan,
    build_order,
    compute_class_table,
    expand_in_basis,
    fundamental_class_is_one,
    hyperplane_class,
    lefschetz_crosscheck,
    multiply,
    smooth_point_restriction,
    verify_gkm,
)
from i2gr.subsets import Geometry, GrassmannianSpec, codim, dominates, enumerate_admissible

e = CharPoly.gens(3)
N3 = GrassmannianSpec(3)
SYMPL = Geometry.SYMPLECTIC


@lru_cache(maxsize=None)
def table(spec):
    return compute_class_table(spec)


def test_hyperplane_class_values():
    h = hyperplane_class(N3)
    assert h[(3, 1)] == e[2] - e[1]
    assert h[(3, 2)] == 0
    assert h[(-2, -3)] == 2 * e[2] + 2 * e[3]
    assert all(v.degree() == 1 for v in h.values.values())


def test_smooth_point_restriction():
    assert smooth_point_restriction((3, 2), N3) == 1
    assert smooth_point_restriction((3, 1), N3) == e[2] - e[1]
    sink = 4 * e[2] * e[3] * (e[2] + e[1]) * (e[2] - e[1]) * (e[3] + e[1]) * (e[3] - e[1])
    assert smooth_point_restriction((-2, -3), N3) == sink


def test_induction_reproduces_hyperplane_and_fundamental_class():
    t = table(N3)
    assert t[(3, 1)] == hyperplane_class(N3)
    assert fundamental_class_is_one(t)


def test_build_order_middle_level():
    order = build_order(GrassmannianSpec(4))
    middle = [I for I in order if codim(I, GrassmannianSpec(4)) == 5]
    assert middle.index((3, -4)) < middle.index((4, -3))
    assert middle.index((2, -3)) < middle.index((3, -2))
    assert middle.index((1, -2)) < middle.index((2, -1))


SPECS = [GrassmannianSpec(n) for n in (3, 4, 5, 6)] + [
    GrassmannianSpec(n, k, SYMPL) for n in (2, 3, 4) for k in range(2, n + 1)
]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_certified_triangular_homogeneous(spec):
    t = table(spec)
    assert verify_gkm(t) == []
    for I in enumerate_admissible(spec):
        f = t[I]
        assert f[I] == smooth_point_restriction(I, spec) != 0
        for J, v in f.values.items():
            if v:
                assert dominates(I, J)
                assert v.is_homogeneous() and v.degree() == codim(I, spec)


def test_verify_with_threads_matches():
    t = table(GrassmannianSpec(4))
    broken = ClassTable(t.spec, dict(t.classes), t.order)
    f = t[(4, 2)]
    values = dict(f.values)
    values[(3, 1)] = values[(3, 1)] + 1
    broken.classes[(4, 2)] = EquivariantClass(t.spec, values, (4, 2))
    one = verify_gkm(broken)
    assert one == verify_gkm(broken, threads=4)
    kinds = {v.kind for v in one}
    assert "divisibility" in kinds and "degree" in kinds


def test_mutation_of_hyperplane_class_is_caught():
    t = table(N3)
    broken = ClassTable(N3, dict(t.classes), t.order)
    values = dict(t[(3, 1)].values)
    values[(2, -1)] = values[(2, -1)] + 1
    broken.classes[(3, 1)] = EquivariantClass(N3, values, (3, 1))
    violations = verify_gkm(broken)
    assert any(v.kind == "divisibility" and v.label == (3, 1) for v in violations)
    assert json.loads(json.dumps([v.to_json() for v in violations]))


def test_support_and_smooth_point_violations():
    t = table(N3)
    broken = ClassTable(N3, dict(t.classes), t.order)
    broken.classes[(2, 1)] = EquivariantClass(N3, dict(t[(3, 1)].values), (2, 1))
    kinds = {v.kind for v in verify_gkm(broken)}
    assert {"support", "smooth-point", "degree"} <= kinds
    del broken.classes[(2, -1)]
    assert any(v.kind == "unknown-point" for v in verify_gkm(broken))


def test_multiply_examples():
    t = table(N3)
    h = t[(3, 1)]
    assert multiply(h, t[(3, 2)]) == h
    assert multiply(h, h)[(3, 2)] == 0
    assert multiply(h, h)[(3, 1)] == (e[2] - e[1]) ** 2
    with pytest.raises(ValueError):
        multiply(h, table(GrassmannianSpec(4))[(4, 3)])


def test_expand_examples():
    t = table(N3)
    assert expand_in_basis(t[(2, -1)], t) == {(2, -1): 1}
    assert expand_in_basis(EquivariantClass(N3, {}), t) == {}
    assert expand_in_basis(t[(3, 1)] * (e[1] + e[2]) + t[(2, 1)], t) == {(3, 1): e[1] + e[2], (2, 1): 1}
    with pytest.raises(NotInSpan):
        expand_in_basis(EquivariantClass(N3, {(3, 1): CharPoly.constant(3, 1)}), t)


@pytest.mark.parametrize("spec", [N3, GrassmannianSpec(3, 2, SYMPL), GrassmannianSpec(4)], ids=str)
def test_structure_constants_are_graded(spec):
    t = table(spec)
    vertices = enumerate_admissible(spec)
    for a, I in enumerate(vertices):
        for J in vertices[a:]:
            for L, c in t.structure_constants(I, J).items():
                assert c.is_homogeneous()
                assert c.degree() == codim(I, spec) + codim(J, spec) - codim(L, spec)
    assert t.structure_constants((3, -2), (3, 1)) is t.structure_constants((3, 1), (3, -2))


def test_json_round_trip():
    for spec in (N3, GrassmannianSpec(3, 2, SYMPL)):
        t = table(spec)
        data = json.loads(json.dumps(t.to_json()))
        assert list(data["classes"])[0] == "[3,2]" and "[3,-2]" in data["classes"]
        again = ClassTable.from_json(data)
        assert again.spec == spec
        assert all(again[I] == t[I] for I in enumerate_admissible(spec))
        assert verify_gkm(again) == []


def test_lefschetz_boundary():
    report = lefschetz_crosscheck(3)
    assert (3, 1) in report.classes_checked and (3, -2) not in report.classes_checked
    assert table(N3)[(3, -2)] != table(GrassmannianSpec(3, 2, SYMPL))[(3, -2)]
    report = lefschetz_crosscheck(4)
    assert all(codim(I, GrassmannianSpec(4)) <= 4 for I in report.classes_checked)
    assert report.ok and report.to_json()["ok"]


def test_bisymplectic_needs_k2():
    with pytest.raises(ValueError):
        compute_class_table(GrassmannianSpec(4, 3))


def test_wrong_coefficient_aborts(monkeypatch):
    real = chevalley_module.chevalley_row

    def bumped(I, spec):
        row = real(I, spec)
        if I == (3, 1):
            row[(2, 1)] = row[(2, 1)] + 1
        return row

    monkeypatch.setattr(classes_module, "chevalley_row", bumped)
    with pytest.raises(DivisionFailed) as info:
        compute_class_table(N3)
    assert info.value.source == (3, 1)


def test_upward_dependency_aborts(monkeypatch):
    real = chevalley_module.chevalley_row

    def cyclic(I, spec):
        row = real(I, spec)
        if I == (1, -2):
            row[(2, -1)] = CharPoly.constant(3, 1)
        return row

    monkeypatch.setattr(classes_module, "chevalley_row", cyclic)
    with pytest.raises(ClassComputationError, match="uncomputed"):
        compute_class_table(N3)
