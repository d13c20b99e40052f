"""Hopf algebroids (A0, A1, etaL, etaR, counit, comult, antipode).

A1 is an A0-bimodule: the left structure comes from ``etaL`` and the right
structure from ``etaR``.  Tensor powers ``A1 ⊗_{A0} ... ⊗_{A0} A1`` are
materialized as presented algebras on copies ``v_1, v_2, ...`` of A1's
variables with the identifications ``etaR(x)_i = etaL(x)_{i+1}``.
"""

from dataclasses import dataclass
from functools import cached_property

from . import polynomial as P
from .algebra import AlgebraElement, AlgebraMap, Matrix, PresentedAlgebra, check_algebra_map, staircase
from .errors import CapabilityError, IntegrityError, ValidationError
from .report import Report

FREE_FINITE = "free-finite"
PROJECTIVE_CERTIFIED = "projective-certified"
USER_DECLARED_FLAT = "user-declared-flat"
FLATNESS_LEVELS = (FREE_FINITE, PROJECTIVE_CERTIFIED, USER_DECLARED_FLAT)


@dataclass(frozen=True)
class Flatness:
    level: str = USER_DECLARED_FLAT
    rank: int = None

    def __post_init__(self):
        if self.level not in FLATNESS_LEVELS:
            raise ValueError(f"unknown flatness level {self.level!r}")

    def __str__(self):
        return f"{self.level}({self.rank})" if self.rank is not None else self.level


def _place(poly, copy, n, k):
    """Embed a polynomial in n variables as copy ``copy`` (0-based) among k copies."""
    out = {}
    for e, c in poly.items():
        full = [0] * (n * k)
        full[copy * n:(copy + 1) * n] = e
        out[tuple(full)] = c
    return out


def tensor_power(A0, A1, etaL, etaR, k, name=None):
    """``A1^{⊗k}`` over A0 with its k coordinate injections."""
    n = A1.nvars
    variables = [f"{v}_{i + 1}" for i in range(k) for v in A1.variables]
    rels = []
    for i in range(k):
        rels += [_place(r, i, n, k) for r in A1.relations]
    field = A1.field
    for i in range(k - 1):
        for img_r, img_l in zip(etaR.images, etaL.images):
            rels.append(P.add(field, _place(img_r.poly, i, n, k), _place(img_l.poly, i + 1, n, k), -1))
    T = PresentedAlgebra(field, variables, rels, name=name)
    injections = []
    for i in range(k):
        images = [T.element(T.reduce(_place(P.variable(field, j, n), i, n, k))) for j in range(n)]
        injections.append(AlgebraMap(A1, T, images, name=f"iota{i + 1}"))
    return T, injections


def _as_map(source, target, spec, name):
    if isinstance(spec, AlgebraMap):
        return spec
    if isinstance(spec, dict):
        spec = [spec.get(v, v) for v in source.variables]
    return AlgebraMap(source, target, [target(x) for x in spec], name=name)


class HopfAlgebroid:
    """Structure maps may be given as :class:`AlgebraMap` objects or as image lists.

    ``comult`` images live in :attr:`D`, whose variables are ``v_1`` and
    ``v_2`` for every variable ``v`` of A1.
    """

    def __init__(self, A0, A1, etaL, etaR, counit, comult, antipode,
                 flatness=None, name=None, involutive=True):
        self.A0 = A0
        self.A1 = A1
        self.name = name
        self.etaL = _as_map(A0, A1, etaL, "etaL")
        self.etaR = _as_map(A0, A1, etaR, "etaR")
        self.counit = _as_map(A1, A0, counit, "counit")
        self.antipode = _as_map(A1, A1, antipode, "antipode")
        self.D, (self.iota1, self.iota2) = tensor_power(A0, A1, self.etaL, self.etaR, 2, name="A1⊗A1")
        if comult is None:
            comult = [self.D.zero] * A1.nvars
        self.comult = _as_map(A1, self.D, comult, "comult")
        self.flatness = flatness or Flatness()
        self.involutive = involutive

    @property
    def field(self):
        return self.A0.field

    def __repr__(self):
        return self.name or f"HopfAlgebroid({self.A0}, {self.A1})"

    @property
    def is_hopf_algebra(self):
        """A0 is the base field (so etaL = etaR)."""
        return self.A0.is_base_field

    @property
    def is_free_finite(self):
        return self.flatness.level == FREE_FINITE

    def require_free_finite(self, what):
        if not self.is_free_finite:
            raise CapabilityError(f"{what} needs A1 declared free-finite over A0; {self} is {self.flatness}")

    @cached_property
    def _triple(self):
        return tensor_power(self.A0, self.A1, self.etaL, self.etaR, 3, name="A1⊗A1⊗A1")

    @property
    def T(self):
        return self._triple[0]

    # maps out of D used by the axioms

    @cached_property
    def counit_left(self):
        """ε⊗id : D → A1."""
        return AlgebraMap(self.D, self.A1, [self.etaL(self.counit(y)) for y in self.A1.gens] + self.A1.gens)

    @cached_property
    def counit_right(self):
        """id⊗ε : D → A1."""
        return AlgebraMap(self.D, self.A1, self.A1.gens + [self.etaR(self.counit(y)) for y in self.A1.gens])

    @cached_property
    def antipode_left(self):
        """μ∘(c⊗id) : D → A1."""
        return AlgebraMap(self.D, self.A1, [self.antipode(y) for y in self.A1.gens] + self.A1.gens)

    @cached_property
    def antipode_right(self):
        """μ∘(id⊗c) : D → A1."""
        return AlgebraMap(self.D, self.A1, self.A1.gens + [self.antipode(y) for y in self.A1.gens])

    @cached_property
    def comult_left(self):
        """Δ⊗id : D → T."""
        T, (j1, j2, j3) = self._triple
        j12 = AlgebraMap(self.D, T, j1.images + j2.images)
        return AlgebraMap(self.D, T, [j12(self.comult(y)) for y in self.A1.gens] + list(j3.images))

    @cached_property
    def comult_right(self):
        """id⊗Δ : D → T."""
        T, (j1, j2, j3) = self._triple
        j23 = AlgebraMap(self.D, T, j2.images + j3.images)
        return AlgebraMap(self.D, T, list(j1.images) + [j23(self.comult(y)) for y in self.A1.gens])

    # free left basis of A1 over A0 via etaL

    @cached_property
    def _relative(self):
        A0, A1 = self.A0, self.A1
        n1, n0 = A1.nvars, A0.nvars
        zs = [f"_z{i}" for i in range(n0)]
        field = self.field
        rels = [{e + (0,) * n0: c for e, c in r.items()} for r in A1.relations]
        for i, img in enumerate(self.etaL.images):
            z = {(0,) * n1 + tuple(1 if k == i else 0 for k in range(n0)): field.one}
            lifted = {e + (0,) * n0: c for e, c in img.poly.items()}
            rels.append(P.add(field, z, lifted, -1))
        order = P.MonomialOrder(A1.order.kind, blocks=(n1, n0))
        B = PresentedAlgebra(field, list(A1.variables) + zs, rels, order=order)
        leads = []
        for g in B.groebner_basis:
            lead = P.leading_exponent(g, order)
            if any(lead[:n1]):
                if any(lead[n1:]):
                    raise IntegrityError(f"A1 is not free over A0 via etaL: basis element with lead {lead}")
                leads.append(lead[:n1])
            else:
                zpoly = {e[n1:]: c for e, c in g.items()}
                if A0(zpoly):
                    raise IntegrityError("etaL is not injective")
        st = staircase(leads, n1, A1.order)
        if st is None:
            raise IntegrityError("A1 is not finitely generated over A0 via etaL")
        return B, st

    @property
    def basis_exponents(self):
        self.require_free_finite("a left basis")
        st = self._relative[1]
        if self.flatness.rank is not None and self.flatness.rank != len(st):
            raise IntegrityError(f"declared rank {self.flatness.rank} but found basis of size {len(st)}")
        return st

    @cached_property
    def left_basis(self):
        """Elements b_0 = 1, b_1, ... with A1 = ⊕ etaL(A0)·b_i."""
        return [self.A1({e: self.field.one}) for e in self.basis_exponents]

    @property
    def rank(self):
        return len(self.basis_exponents)

    def decompose(self, a):
        """A0-coefficients ``alpha`` with ``a = Σ etaL(alpha_i) b_i``."""
        a = self.A1(a) if not isinstance(a, AlgebraElement) else a
        key = P.poly_key(a.poly)
        hit = self._decompose_cache.get(key)
        if hit is None:
            hit = self._decompose(a)
            self._decompose_cache[key] = hit
        return hit

    @cached_property
    def _decompose_cache(self):
        return {}

    def _decompose(self, a):
        index = self._basis_index
        B = self._relative[0]
        n0 = self.A0.nvars
        nf = B.reduce({e + (0,) * n0: c for e, c in a.poly.items()})
        n1 = self.A1.nvars
        parts = [dict() for _ in index]
        for e, c in nf.items():
            i = index.get(e[:n1])
            if i is None:
                raise IntegrityError(f"normal form term {e} outside the left basis")
            parts[i][e[n1:]] = c
        return [self.A0(p) for p in parts]

    @cached_property
    def _basis_index(self):
        return {e: i for i, e in enumerate(self.basis_exponents)}

    @cached_property
    def comult_matrix(self):
        """Matrix c over A1 with Δ(b_i) = Σ_j c[j, i] ⊗ b_j."""
        A1, D = self.A1, self.D
        n1 = A1.nvars
        index = self._basis_index
        ranking = tuple(range(n1, 2 * n1)) + tuple(range(n1))
        order = P.MonomialOrder(A1.order.kind, ranking=ranking, blocks=(n1, n1))
        D2 = PresentedAlgebra(self.field, D.variables, D.relations, order=order)
        for g in D2.groebner_basis:
            lead = P.leading_exponent(g, order)
            if any(lead[n1:]):
                if any(lead[:n1]):
                    raise IntegrityError("A1⊗A1 is not free over the left factor on the chosen basis")
            elif A1({e[:n1]: c for e, c in g.items()}):
                raise IntegrityError("left factor does not embed in A1⊗A1")
        k = len(index)
        cols = []
        for b in self.left_basis:
            nf = D2.reduce(self.comult(b).poly)
            parts = [dict() for _ in range(k)]
            for e, c in nf.items():
                j = index.get(e[n1:])
                if j is None:
                    raise IntegrityError(f"comultiplication term {e} outside the left basis")
                parts[j][e[:n1]] = c
            cols.append([A1(p) for p in parts])
        return Matrix.from_columns(A1, cols, k)


def _compare(rep, name, pairs, fmt):
    bad = [(g, a, b) for g, a, b in pairs if a != b]
    rep.add(name, not bad, None if not bad else f"{fmt(bad[0][0])}: {bad[0][1]} != {bad[0][2]}")


def check_hopf_algebroid(H):
    """Per-axiom report; every axiom is checked on algebra generators."""
    rep = Report(f"Hopf algebroid {H}")
    roles = {"etaL": H.etaL, "etaR": H.etaR, "counit": H.counit, "comult": H.comult, "antipode": H.antipode}
    for role, f in roles.items():
        sub = check_algebra_map(f)
        rep.add(f"well-defined {role}", sub.passed, "; ".join(str(c.witness) for c in sub.failures()) or None)
    if not rep.passed:
        return rep
    A0, A1 = H.A0, H.A1
    x_gens = list(zip(A0.variables, A0.gens))
    y_gens = list(zip(A1.variables, A1.gens))
    name = str
    _compare(rep, "counit∘etaL = id", [(v, H.counit(H.etaL(x)), x) for v, x in x_gens], name)
    _compare(rep, "counit∘etaR = id", [(v, H.counit(H.etaR(x)), x) for v, x in x_gens], name)
    _compare(rep, "comult∘etaL = iota1∘etaL", [(v, H.comult(H.etaL(x)), H.iota1(H.etaL(x))) for v, x in x_gens], name)
    _compare(rep, "comult∘etaR = iota2∘etaR", [(v, H.comult(H.etaR(x)), H.iota2(H.etaR(x))) for v, x in x_gens], name)
    _compare(rep, "left counit law", [(v, H.counit_left(H.comult(y)), y) for v, y in y_gens], name)
    _compare(rep, "right counit law", [(v, H.counit_right(H.comult(y)), y) for v, y in y_gens], name)
    _compare(rep, "coassociativity",
             [(v, H.comult_left(H.comult(y)), H.comult_right(H.comult(y))) for v, y in y_gens], name)
    _compare(rep, "antipode∘etaL = etaR", [(v, H.antipode(H.etaL(x)), H.etaR(x)) for v, x in x_gens], name)
    _compare(rep, "antipode∘etaR = etaL", [(v, H.antipode(H.etaR(x)), H.etaL(x)) for v, x in x_gens], name)
    _compare(rep, "antipode left law",
             [(v, H.antipode_left(H.comult(y)), H.etaR(H.counit(y))) for v, y in y_gens], name)
    _compare(rep, "antipode right law",
             [(v, H.antipode_right(H.comult(y)), H.etaL(H.counit(y))) for v, y in y_gens], name)
    bad = [(v, H.antipode(H.antipode(y)), y) for v, y in y_gens if H.antipode(H.antipode(y)) != y]
    rep.add("antipode involutive", not bad,
            None if not bad else f"{bad[0][0]}: {bad[0][1]} != {bad[0][2]}", required=H.involutive)
    if H.is_free_finite:
        try:
            basis = H.left_basis
            H.comult_matrix
            rep.add("free left basis", True, f"rank {len(basis)}: {basis}")
        except IntegrityError as exc:
            rep.add("free left basis", False, str(exc))
    return rep


def hopf_algebra(field, variables, relations, comult, counit, antipode, flatness=None, name=None):
    """A Hopf algebra over ``field`` as an algebroid with A0 = field."""
    A0 = PresentedAlgebra(field, (), (), name=str(field) if not isinstance(field, int) else None)
    A1 = PresentedAlgebra(A0.field, variables, relations)
    if flatness is None:
        d = A1.dimension()
        flatness = Flatness(FREE_FINITE, d) if d is not None else Flatness(USER_DECLARED_FLAT)
    return HopfAlgebroid(A0, A1, [], [], counit, comult, antipode, flatness, name)


def tensor_with(H, A):
    """The algebra H⊗A (H a Hopf algebra) on H's variables followed by A's."""
    if set(H.A1.variables) & set(A.variables):
        raise ValueError("variable names of H and A must differ")
    nh, na = H.A1.nvars, A.nvars
    rels = [{e + (0,) * na: c for e, c in r.items()} for r in H.A1.relations]
    rels += [{(0,) * nh + e: c for e, c in r.items()} for r in A.relations]
    return PresentedAlgebra(A.field, list(H.A1.variables) + list(A.variables), rels)


def split_algebroid(A, H, coaction, name=None, flatness=None):
    """The algebroid (A, H⊗A) of a comodule algebra ``A`` over the Hopf algebra ``H``.

    ``coaction`` gives, for each variable of A, its image in :func:`tensor_with` (H, A).
    Raises :class:`ValidationError` when the coaction is not counital,
    coassociative, or multiplicative.
    """
    if not H.is_hopf_algebra:
        raise ValueError("H must be a Hopf algebra (A0 = base field)")
    HA = tensor_with(H, A)
    nh, na = H.A1.nvars, A.nvars
    field = A.field
    h_in = AlgebraMap(H.A1, HA, HA.gens[:nh])
    a_in = AlgebraMap(A, HA, HA.gens[nh:])
    rho = _as_map(A, HA, coaction, "coaction")

    rep = Report("coaction")
    rep.extend(check_algebra_map(rho), "well-defined ")
    eps_id = AlgebraMap(HA, A, [A(H.counit(h).constant_coefficient()) for h in H.A1.gens] + A.gens)
    _compare(rep, "counit", [(v, eps_id(rho(a)), a) for v, a in zip(A.variables, A.gens)], str)
    HHA_vars = [f"{v}_1" for v in H.A1.variables] + [f"{v}_2" for v in H.A1.variables] + list(A.variables)
    rels = [{e + (0,) * (nh + na): c for e, c in r.items()} for r in H.A1.relations]
    rels += [{(0,) * nh + e + (0,) * na: c for e, c in r.items()} for r in H.A1.relations]
    rels += [{(0,) * (2 * nh) + e: c for e, c in r.items()} for r in A.relations]
    HHA = PresentedAlgebra(field, HHA_vars, rels)
    g = HHA.gens
    d_to_hha = AlgebraMap(H.D, HHA, g[:2 * nh])
    delta_id = AlgebraMap(HA, HHA, [d_to_hha(H.comult(h)) for h in H.A1.gens] + g[2 * nh:])
    rho_in_23 = AlgebraMap(HA, HHA, g[nh:2 * nh] + g[2 * nh:])
    id_rho = AlgebraMap(HA, HHA, g[:nh] + [rho_in_23(rho(a)) for a in A.gens])
    _compare(rep, "coassociativity",
             [(v, delta_id(rho(a)), id_rho(rho(a))) for v, a in zip(A.variables, A.gens)], str)
    if not rep.passed:
        raise ValidationError(f"invalid coaction: {rep.failures()[0].name} ({rep.failures()[0].witness})", rep)

    antipode_images = [h_in(H.antipode(h)) for h in H.A1.gens] + [rho(a) for a in A.gens]
    if flatness is None:
        d = H.A1.dimension()
        flatness = Flatness(FREE_FINITE, d) if d is not None else Flatness(USER_DECLARED_FLAT)
    # Δ needs the algebroid's own A1⊗A1, so it is attached after construction.
    alg = HopfAlgebroid(A, HA, a_in, rho, eps_id, None, antipode_images,
                        flatness=flatness, name=name, involutive=H.involutive)
    D = alg.D
    h1 = [D.gens[i] for i in range(nh)]
    h2 = [D.gens[HA.nvars + i] for i in range(nh)]
    hh = AlgebraMap(H.D, D, h1 + h2)
    comult_images = [hh(H.comult(h)) for h in H.A1.gens] + [D.gens[nh + i] for i in range(na)]
    alg.comult = AlgebraMap(HA, D, comult_images, name="comult")
    return alg
