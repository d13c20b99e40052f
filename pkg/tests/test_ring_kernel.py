"""Polynomial arithmetic, Groebner bases, normal forms and syzygies."""

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from comodcat import polynomial as P
from comodcat.algebra import (AlgebraMap, Matrix, PresentedAlgebra, check_algebra_map, groebner_basis,
                              Submodule, s_polynomial_check, syzygies)
from comodcat.errors import ResourceLimitError
from comodcat.field import QQ, Field
from comodcat.groebner import budget


# fields

def test_prime_field_arithmetic():
    F = Field(5)
    assert F.norm(7) == 2
    assert F.norm(F.inv(3) * 3) == 1
    with pytest.raises(ValueError):
        Field(6)


def test_rationals_are_exact():
    assert QQ.inv(Fraction(3, 4)) == Fraction(4, 3)
    assert QQ("1/3") + QQ("2/3") == 1


# Groebner bases

def _sympy_basis(gens, variables, modulus=None):
    syms = sympy.symbols(variables)
    kw = {"modulus": modulus} if modulus else {}
    G = sympy.groebner([sympy.sympify(g.replace("^", "**")) for g in gens], *syms, order="grevlex", **kw)
    return {sympy.Poly(g, *syms, **kw).monic().as_expr() for g in G.exprs}


def _ours(gens, variables, char=0):
    basis = groebner_basis(char, variables, gens)
    syms = sympy.symbols(variables)
    out = set()
    for g in basis:
        expr = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                   * sympy.prod([s ** k for s, k in zip(syms, e)]) for e, c in g.items())
        poly = sympy.Poly(expr, *syms, modulus=char) if char else sympy.Poly(expr, *syms)
        out.add(poly.monic().as_expr())
    return out


@pytest.mark.parametrize("gens, variables", [
    (["x*y - 1", "x^2 - y"], ["x", "y"]),
    (["x^2 + y^2 - 1", "x - y"], ["x", "y"]),
    (["x*y*z - 1", "x^2 - y", "y^2 - z"], ["x", "y", "z"]),
    (["t*s - 1"], ["t", "s"]),
])
def test_reduced_basis_matches_sympy(gens, variables):
    assert _ours(gens, variables) == _sympy_basis(gens, variables)


def test_reduced_basis_matches_sympy_mod_p():
    assert _ours(["x^2 + x", "x*y + 1"], ["x", "y"], 2) == _sympy_basis(["x^2 + x", "x*y + 1"], ["x", "y"], 2)


def test_leading_terms_generate_and_spolys_reduce():
    A = PresentedAlgebra(0, ["x", "y"], ["x*y - 1", "x^2 - y"])
    assert s_polynomial_check(A)
    # every relation lies in the ideal of the basis
    for r in A.relations:
        assert A.reduce(r) == {}


def test_quotient_dimension():
    assert PresentedAlgebra(0, ["x", "y"], ["x*y - 1", "x^2 - y"]).dimension() == 3
    assert PresentedAlgebra(2, ["e"], ["e^2 + e"]).dimension() == 2
    assert PresentedAlgebra(0, ["x"], []).dimension() is None


def test_budget_exhaustion_is_an_error():
    with pytest.raises(ResourceLimitError):
        with budget(2):
            PresentedAlgebra(0, ["x", "y", "z"], ["x*y*z - 1", "x^2 - y", "y^2 - z", "z^3 - x"]).groebner_basis


# normal forms are a ring homomorphism

A_nf = PresentedAlgebra(0, ["x", "y"], ["x*y - 1", "x^2 - y"])
small = st.fractions(min_value=-3, max_value=3, max_denominator=3)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=4).map(
    lambda d: {e: c for e, c in d.items() if c})


@given(polys, polys)
def test_normal_form_respects_products(f, g):
    nf = A_nf.reduce
    prod = P.mul(QQ, f, g)
    assert nf(prod) == nf(P.mul(QQ, nf(f), nf(g)))


@given(polys, polys)
def test_normal_form_respects_sums(f, g):
    nf = A_nf.reduce
    assert nf(P.add(QQ, f, g)) == nf(P.add(QQ, nf(f), nf(g)))


@given(polys)
def test_normal_form_is_idempotent(f):
    assert A_nf.reduce(A_nf.reduce(f)) == A_nf.reduce(f)


def test_parse_and_format_round_trip():
    A = PresentedAlgebra(0, ["x", "y"], [])
    for text in ["x^2 - 3/2*x*y + 1", "-x", "0", "2*y^3"]:
        a = A(text)
        assert A(str(a)) == a


# syzygies against brute force over 𝔽₂[e]/(e² + e)

def test_syzygies_brute_force():
    A = PresentedAlgebra(2, ["e"], ["e^2 + e"])
    elems = [A(0), A(1), A("e"), A("e + 1")]
    M = Matrix(A, [["e", "1", "e + 1"]], 3)
    S = syzygies(M)
    gens = S.columns()
    # every solution of M·v = 0 is an A-combination of the syzygy generators
    solutions = [v for v in itertools.product(elems, repeat=3)
                 if (M.apply(list(v))[0]).is_zero()]
    span = set()
    for coeffs in itertools.product(elems, repeat=len(gens)):
        v = [A(0)] * 3
        for c, g in zip(coeffs, gens):
            v = [a + c * b for a, b in zip(v, g)]
        span.add(tuple(v))
    assert set(solutions) == span
    assert all(M.apply(g)[0].is_zero() for g in gens)


# algebra maps

def test_check_algebra_map_accepts_and_rejects():
    A = PresentedAlgebra(0, ["x"], ["x^2 - 1"])
    B = PresentedAlgebra(0, ["g"], ["g^2 - 1"])
    assert check_algebra_map(AlgebraMap(A, B, ["g"])).passed
    assert check_algebra_map(AlgebraMap(A, B, ["-g"])).passed
    bad = check_algebra_map(AlgebraMap(A, B, ["2*g"]))
    assert not bad.passed
    assert "maps to 3" in str(bad.failures()[0].witness)


def test_algebra_map_composition():
    A = PresentedAlgebra(0, ["x"], [])
    f = AlgebraMap(A, A, ["x^2"])
    g = AlgebraMap(A, A, ["x + 1"])
    # ring maps substitute: f(g(x)) = f(x + 1) = f(x) + 1
    assert f.compose(g)(A("x")) == A("x^2 + 1")
    assert g.compose(f)(A("x")) == A("(x + 1)^2")


# lifting over a bare field takes a linear-algebra shortcut; compare with brute force

@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_field_lift_matches_brute_force(columns, vec):
    K = PresentedAlgebra(3, [], [])
    sub = Submodule(K, 3, [[K(c) for c in col] for col in columns])
    w = sub.lift([K(v) for v in vec])
    hits = [coeffs for coeffs in itertools.product(range(3), repeat=len(columns))
            if all(sum(c * col[i] for c, col in zip(coeffs, columns)) % 3 == vec[i] for i in range(3))]
    if not hits:
        assert w is None
    else:
        got = [x.poly.get((), 0) for x in w]
        assert all(sum(c * col[i] for c, col in zip(got, columns)) % 3 == vec[i] for i in range(3))
