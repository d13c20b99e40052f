"""Hopf algebroid axioms, left bases and the split construction."""

import pytest

from comodcat.algebra import PresentedAlgebra
from comodcat.errors import CapabilityError, ValidationError
from comodcat.fixtures import FIXTURES, fixture_text, group_algebra_z2, load_fixture, split_z2_line
from comodcat.hopf import check_hopf_algebroid, hopf_algebra, split_algebroid
from comodcat.serialize import load


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_axioms(name):
    rep = check_hopf_algebroid(load_fixture(name).algebroid)
    assert rep.passed, str(rep)


def test_group_algebra_axioms():
    assert check_hopf_algebroid(group_algebra_z2()).passed


def test_bad_counit_is_reported_at_well_definedness():
    text = fixture_text("F2").replace("[counit]\nt = 1", "[counit]\nt = 0")
    rep = check_hopf_algebroid(load(text).algebroid)
    assert not rep.passed
    assert [c.name for c in rep.failures()] == ["well-defined counit"]


def test_one_sided_comult_is_reported():
    text = fixture_text("F1").replace("e = e_1 + e_2", "e = e_1")
    rep = check_hopf_algebroid(load(text).algebroid)
    assert not rep["left counit law"].passed
    assert rep["right counit law"].passed


def test_split_construction_matches_written_fixture():
    a, b = load_fixture("F3").algebroid, split_z2_line()
    assert a.A1.variables == b.A1.variables
    assert a.A1.groebner_basis == b.A1.groebner_basis
    for role in ["etaL", "etaR", "counit", "antipode", "comult"]:
        assert str(getattr(a, role)) == str(getattr(b, role)), role
    assert check_hopf_algebroid(b).passed


def test_split_construction_rejects_bad_coaction():
    A = PresentedAlgebra(0, ["x"], [])
    with pytest.raises(ValidationError):
        split_algebroid(A, group_algebra_z2(), ["g*x + 1"])  # counit fails
    with pytest.raises(ValidationError):
        split_algebroid(A, group_algebra_z2(), ["g*x^2"])     # not counital either


def test_left_basis_and_comultiplication_matrix():
    F1 = load_fixture("F1").algebroid
    assert [str(b) for b in F1.left_basis] == ["1", "e"]
    c = F1.comult_matrix
    # Δ(e) = 1⊗e + e⊗1
    assert [[str(c[i, j]) for j in range(2)] for i in range(2)] == [["1", "e"], ["0", "1"]]
    F3 = load_fixture("F3").algebroid
    assert F3.rank == 2
    g = F3.A1("g")
    # g·x = etaR(x), so its left coordinates are (0, x)
    assert [str(a) for a in F3.decompose(F3.A1("g*x"))] == ["0", "x"]
    assert [str(a) for a in F3.decompose(g * F3.A1("x^2") + 3)] == ["3", "x^2"]


def test_decomposition_reassembles():
    H = load_fixture("F3").algebroid
    for text in ["g*x^3 - x + 2", "x^2*g", "5"]:
        a = H.A1(text)
        parts = H.decompose(a)
        assert sum((H.etaL(p) * b for p, b in zip(parts, H.left_basis)), H.A1.zero) == a


def test_infinite_rank_refuses_a_basis():
    H = load_fixture("F2").algebroid
    assert H.is_hopf_algebra and not H.is_free_finite
    with pytest.raises(CapabilityError):
        H.left_basis


def test_hopf_algebra_flatness_is_inferred():
    H = hopf_algebra(3, ["e"], ["e^3 - e"], ["e_1 + e_2"], ["0"], ["-e"])
    assert H.is_free_finite and H.rank == 3
