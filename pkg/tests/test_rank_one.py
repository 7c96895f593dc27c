import dataclasses

import pytest

from conftest import catalog_group
from frozen import RANK_ONE_M
from perturb import scale_rep
from pgverify.constructions import (
    build_rank_one_diagram,
    check_free_family,
    noncyclic_center_reduction,
    rank_one_family,
    verify_rank_one,
)
from pgverify.families import check_diagram_of_reps, poset_DH, strongly_connected
from pgverify.groups import center, normalizer, omega1

PARTS = ["covering", "strongly_connected", "diagram_of_reps", "assignment_compatibility", "free_family",
         "degree_bookkeeping"]


@pytest.mark.parametrize("spec", ["cyclic:9", "heisenberg:3", "elemab:3,2", "cyclic:27", "metacyclic:3,2"])
def test_star_diagram_passes(spec):
    data = build_rank_one_diagram(catalog_group(spec))
    v = verify_rank_one(data)
    assert v.passed
    assert [p["name"] for p in v.details["parts"]] == PARTS
    p = data.G.prime_power()[0]
    for d, R in data.classes.items():
        assert data.m[d] == normalizer(data.G, R).order * (p - 1) // p
        assert data.m[d] * data.n_d[d] == data.n


def test_m_values():
    for spec, want in RANK_ONE_M.items():
        assert build_rank_one_diagram(catalog_group(spec)).m == want
    data = build_rank_one_diagram(catalog_group("heisenberg:3"))
    Z = center(data.G)
    central = next(d for d, R in data.classes.items() if R == Z)
    assert data.m[central] == 18
    assert sorted(data.m.values()) == [6, 6, 6, 6, 18]
    assert data.n == 18
    c9 = build_rank_one_diagram(catalog_group("cyclic:9"))
    assert (c9.n, c9.n_d) == (6, {"d1": 1})


def test_star_shape():
    data = build_rank_one_diagram(catalog_group("heisenberg:3"))
    assert data.diagram.poset.relations == tuple(("1", d) for d in data.classes)
    for H in data.family:
        DH = poset_DH(data.diagram, H)
        if H.order == 1:
            assert set(DH.objects) == set(data.diagram.poset.objects)
        else:
            assert len(DH.objects) == 1
            R = data.classes[DH.objects[0]]
            assert any(omega1(H).conjugate(g) == R for g in range(data.G.order))
    assert strongly_connected(data.diagram, data.family).passed


def test_family_flags():
    fam, every = rank_one_family(catalog_group("cyclic:27"))
    assert every and len(fam) == 4
    fam, every = rank_one_family(catalog_group("heisenberg:3"))
    assert not every and len(fam) == 14


def test_explicit_n():
    data = build_rank_one_diagram(catalog_group("heisenberg:3"), n=36)
    assert verify_rank_one(data).passed and data.n_d[next(iter(data.n_d))] in (2, 6)
    with pytest.raises(ValueError):
        build_rank_one_diagram(catalog_group("heisenberg:3"), n=12)


def test_full_regular_breaks_only_freeness():
    data = build_rank_one_diagram(catalog_group("heisenberg:3"), full_regular=True)
    v = verify_rank_one(data)
    assert v.failed and v.witness["part"] == "free_family"
    assert "fixed_dimension" in v.witness
    failed = [p["name"] for p in v.details["parts"] if p["verdict"] == "fail"]
    assert failed == ["free_family"]


def test_perturbed_rep_breaks_edge():
    data = build_rank_one_diagram(catalog_group("cyclic:9"))
    bad = dataclasses.replace(data, quadruple=scale_rep(data.quadruple, "d1"))
    v = check_diagram_of_reps(bad.quadruple)
    assert v.failed and v.witness["edge"] == ["1", "d1"]
    assert check_free_family(data).passed


@pytest.mark.parametrize("spec, status", [
    ("elemab:3,2", "pass"),
    ("elemab:3,3", "pass"),
    ("product:cyclic:3,heisenberg:3", "pass"),
    ("extraspecial5:3", "inapplicable"),
    ("cyclic:9", "inapplicable"),
])
def test_noncyclic_center_reduction(spec, status):
    v = noncyclic_center_reduction(catalog_group(spec))
    assert v.status == status
