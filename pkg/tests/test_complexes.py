"""Complexes of comodules: homology, cones, tensor and hom complexes, signs, cobar."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from comodcat.algebra import Matrix
from comodcat.comodule import ComoduleMap, check_comodule, extend
from comodcat.complexes import (ChainMap, Complex, cobar, collapsed_cobar, ext_dims, hom_complexes, homology,
                                homology_dims, identity_chain_map, is_acyclic, is_quasi_iso, mapping_cone, shift,
                                sign_rule_report, single, tensor_complexes, tensor_symmetry)
from comodcat.errors import CapabilityError
from comodcat.fpmodule import FPModule
from helpers import (cobar_word_differential, cobar_word_ext_dims, f1, f2, f3, involution, random_f1_comodule,
                     span_size)

seeds = st.integers(0, 10 ** 6)


# independent oracle: cohomology of Z/2 from inhomogeneous cochains, ranks by XOR elimination

def _rank_gf2(rows):
    pivots = {}
    for r in rows:
        v = int("".join(map(str, r)) or "0", 2)
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def group_cohomology_dims(S, depth):
    """dim H^s(Z/2; M) for 0 ≤ s ≤ depth, where M = 𝔽₂^n with the involution S."""
    n = len(S)
    act = {0: [[int(i == j) for j in range(n)] for i in range(n)], 1: S}

    def cochain_index(s):
        return list(itertools.product((0, 1), repeat=s))

    def delta(s):
        src, tgt = cochain_index(s), cochain_index(s + 1)
        # unknowns: f(word)[k]; rows: (δf)(word')[i]
        cols = {(w, k): c for c, (w, k) in enumerate((w, k) for w in src for k in range(n))}
        rows = []
        for w in tgt:
            for i in range(n):
                row = [0] * len(cols)
                g1 = w[0]
                for k in range(n):
                    row[cols[(w[1:], k)]] ^= act[g1][i][k]
                for j in range(s):
                    merged = w[:j] + ((w[j] + w[j + 1]) % 2,) + w[j + 2:]
                    row[cols[(merged, i)]] ^= 1
                row[cols[(w[:s], i)]] ^= 1
                rows.append(row)
        return rows

    dims = [2 ** s * n for s in range(depth + 2)]
    ranks = [_rank_gf2(delta(s)) for s in range(depth + 1)]
    return [dims[s] - ranks[s] - (ranks[s - 1] if s else 0) for s in range(depth + 1)]


def test_oracle_on_known_cases():
    assert group_cohomology_dims([[1]], 4) == [1, 1, 1, 1, 1]
    assert group_cohomology_dims([[0, 1], [1, 0]], 3) == [1, 0, 0, 0]


def test_cobar_word_oracle():
    for s in range(4):
        d0, d1 = cobar_word_differential(s), cobar_word_differential(s + 1)
        for img in d0:
            # apply d^{s+1} to the image of a basis word
            total = 0
            for bit in range(img.bit_length()):
                if img >> bit & 1:
                    total ^= d1[bit]
            assert total == 0
    assert span_size([0b01, 0b10, 0b11]) == 4
    assert cobar_word_ext_dims(4) == [1, 1, 1, 1, 1]


def test_ext_of_unit_f1():
    assert ext_dims(f1().comodules["unit"], 4) == [1, 1, 1, 1, 1]


@given(seeds)
@settings(max_examples=15)
def test_ext_matches_group_cohomology(seed):
    M = random_f1_comodule(random.Random(seed), 3)
    assert ext_dims(M, 3) == group_cohomology_dims(involution(M), 3)


def test_extended_comodules_have_no_higher_ext():
    H = f1().algebroid
    for n in (1, 2):
        E = extend(H, FPModule.free(H.A0, n))
        assert ext_dims(E, 3) == [n, 0, 0, 0]


def test_cobar_resolution_is_exact():
    for M in [f1().comodules["unit"], f1().comodules["regular"], f3().comodules["A_mod_x"]]:
        data = cobar(M, 2)
        rep = data.report()
        assert rep.passed, str(rep)
        for T in data.terms:
            assert check_comodule(T).passed


def test_cobar_capabilities():
    with pytest.raises(CapabilityError):
        cobar(f2().comodules["line_1"], 2)
    with pytest.raises(CapabilityError):
        collapsed_cobar(f3().comodules["A_mod_x"], 2)


# homology

def test_fixture_complex_homology():
    assert {n: d for n, d in homology_dims(f1().complexes["integral"]).items() if d} == {0: 1}
    assert {n: d for n, d in homology_dims(f1().complexes["norm"]).items() if d} == {1: 1}
    assert {n: d for n, d in homology_dims(f3().complexes["x_mult"]).items() if d} == {1: 1}


def test_bad_differentials_are_rejected():
    C = f1().comodules
    A0 = f1().algebroid.A0
    d = ComoduleMap(C["regular"], C["regular"], Matrix(A0, [["1", "0"], ["0", "1"]], 2))
    with pytest.raises(ValueError):
        Complex(f1().algebroid, {0: C["regular"], 1: C["regular"], 2: C["regular"]}, {0: d, 1: d})


def test_homology_of_the_integral_is_the_augmentation():
    D = f1()
    Hn = homology(D.complexes["integral"], 0)
    assert involution(Hn) == involution(D.comodules["augmentation"])


def test_shift_moves_homology():
    C = f1().complexes["norm"]
    for r in (-2, 1, 3):
        dims = {n: d for n, d in homology_dims(shift(C, r)).items() if d}
        assert dims == {1 - r: 1}


def test_cone_and_quasi_isomorphisms():
    C = f1().complexes["integral"]
    idC = identity_chain_map(C)
    assert idC.check().passed
    assert is_quasi_iso(idC)
    assert is_acyclic(mapping_cone(idC))
    zero = ChainMap(C, C, {})
    assert not is_quasi_iso(zero)


def test_quasi_iso_between_different_complexes():
    # the integral regular → unit is quasi-isomorphic to augmentation in degree 0
    D = f1()
    A0 = D.algebroid.A0
    aug = single(D.comodules["augmentation"])
    integral = D.complexes["integral"]
    inc = ComoduleMap(D.comodules["augmentation"], D.comodules["regular"], Matrix(A0, [["1"], ["0"]], 1))
    assert inc.is_equivariant()
    f = ChainMap(aug, integral, {0: inc})
    assert f.check().passed and is_quasi_iso(f)


# tensor and hom complexes

def test_kunneth_over_a_field():
    D = f1()
    integral, norm = D.complexes["integral"], D.complexes["norm"]
    T = tensor_complexes(integral, norm)
    assert {n: d for n, d in homology_dims(T).items() if d} == {1: 1}
    T2 = tensor_complexes(norm, norm)
    assert {n: d for n, d in homology_dims(T2).items() if d} == {2: 1}


def test_derived_tensor_needs_projective_terms():
    D = f3()
    C = single(D.comodules["A_mod_x"])
    with pytest.raises(CapabilityError):
        tensor_complexes(C, C)
    assert tensor_complexes(C, C, underived=True).term(0).kdim() == 1


def test_tensor_symmetry_is_a_chain_map():
    D = f1()
    tau = tensor_symmetry(D.complexes["integral"], D.complexes["norm"])
    assert tau.check().passed


def test_hom_complex_of_fixture_complexes():
    D = f1()
    Hc = hom_complexes(D.complexes["integral"], D.complexes["norm"])
    assert Hc.check().passed
    # Hom(C, D) has total dimension (2+1)·(1+2)
    assert sum(Hc.term(n).kdim() for n in Hc.degrees()) == 9
    single_hom = hom_complexes(single(D.comodules["regular"]), single(D.comodules["unit"]))
    assert single_hom.term(0).kdim() == 2


def test_hom_complexes_refused_for_laurent():
    D = f2()
    with pytest.raises(CapabilityError):
        hom_complexes(single(D.comodules["line_1"]), single(D.comodules["line_2"]))


@pytest.mark.parametrize("r, s", [(1, 1), (1, 2), (-1, 3), (0, 0), (2, -3)])
def test_sign_rule_on_nontrivial_complexes(r, s):
    D = f1()
    rep, composite, sign = sign_rule_report(D.complexes["integral"], D.complexes["norm"], r, s)
    assert rep.passed, str(rep)
    assert sign == (-1) ** (r * s)
