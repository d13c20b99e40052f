"""The graded-vector-space model of Laurent comodules, and its agreement with the engine."""

import random

import sympy
from hypothesis import given, settings, strategies as st

from comodcat.comodule import check_comodule, invariants
from comodcat.graded import (GradedComplex, GradedSpace, compare_instance, graded_dims, hom_spaces, invariant_dim,
                             laurent_algebroid, oracle_suite, random_space, realize, tensor_graded_complexes,
                             tensor_spaces)
from comodcat.monoidal import chom, ctensor
from helpers import f2

spaces = st.dictionaries(st.integers(-3, 3), st.integers(0, 3), max_size=4).map(GradedSpace.of)


@given(spaces, spaces)
def test_space_arithmetic(a, b):
    assert tensor_spaces(a, b).total() == a.total() * b.total()
    assert hom_spaces(a, b).total() == a.total() * b.total()
    assert invariant_dim(hom_spaces(a, b)) == sum(n * b.as_dict().get(d, 0) for d, n in a.dims)


def test_fixture_lines_read_correctly():
    C = f2().comodules
    assert graded_dims(C["line_1"]).as_dict() == {1: 1}
    assert graded_dims(C["line_m1"]).as_dict() == {-1: 1}
    assert graded_dims(C["mixed"]).as_dict() == {0: 1, 1: 1}
    assert graded_dims(ctensor(C["mixed"], C["line_m1"])).as_dict() == {-1: 1, 0: 1}
    assert invariants(C["mixed"]).dim == 1


def test_graded_complex_homology():
    a = GradedSpace.of({0: 2})
    b = GradedSpace.of({0: 1, 1: 1})
    GC = GradedComplex({0: a, 1: b}, {0: {0: sympy.Matrix([[1, 1]])}})
    assert GC.homology(0) == {0: 1}
    assert GC.homology(1) == {1: 1}
    T = tensor_graded_complexes(GC, GC)
    assert T.homology(0) == {0: 1}
    assert T.homology(1) == {1: 2}
    assert T.homology(2) == {2: 1}


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15)
def test_realization_round_trip(seed):
    rng = random.Random(seed)
    H = laurent_algebroid()
    a = random_space(rng)
    M, _ = realize(H, a, rng)
    assert check_comodule(M).passed
    assert graded_dims(M) == a
    assert graded_dims(chom(M, M).comodule) == hom_spaces(a, a)


def test_single_instance_passes():
    rep = compare_instance(laurent_algebroid(), random.Random(7))
    assert rep.passed, str(rep)


def test_small_suite():
    summary, instances = oracle_suite(count=10, seed=3)
    assert len(instances) == 10
    assert summary.passed, str(summary)
