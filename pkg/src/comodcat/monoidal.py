"""The closed symmetric monoidal structure on comodules.

Tensor generators are ordered lexicographically (``i * n + j`` for
``e_i ⊗ f_j``), so unitors and associators are identity matrices and the
symmetry is a permutation.  Internal homs come in two flavours:

* for A1 free of finite rank over A0, ``chom(M, N)`` is the kernel of
  ``chom(M, δ)`` where ``N → extend(UN) ⇉ extend(U extend(UN))`` is the
  standard equalizer presentation and δ the difference of its legs;
* for a Hopf algebra over the base field, ``Hom_k(M, N)`` with the
  conjugation coaction ``F ↦ C_N · F · c(C_M)``.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import Matrix, Submodule
from .polynomial import poly_key
from .comodule import (Comodule, ComoduleMap, back, coaction_map, direct_sum, equivariance_report,
                       ext_map, extend, forward, invariants, kernel_comodule, lift_comodule_map, unit,
                       ComoduleHoms)
from .errors import CapabilityError, IntegrityError
from .fpmodule import HomModule, ModuleMap, projectivity_certificate, tensor
from .report import Report


def _cache(H, name):
    return H.__dict__.setdefault(name, {})


def ctensor(M, N, name=None):
    """M ⊗ N with coaction C_M ⊗ C_N (cached per pair of comodule objects)."""
    H = M.algebroid
    cache = _cache(H, "_ctensor_cache")
    key = (id(M), id(N))
    hit = cache.get(key)
    if hit is not None and hit[0] is M and hit[1] is N:
        return hit[2]
    T = Comodule(H, tensor(M.module, N.module), M.coaction.kron(N.coaction),
                 name=name or f"({M} ⊗ {N})")
    cache[key] = (M, N, T)
    return T


def tensor_maps(f, g, source=None, target=None):
    source = source or ctensor(f.source, g.source)
    target = target or ctensor(f.target, g.target)
    return ComoduleMap(source, target, f.matrix.kron(g.matrix))


def _permutation(A0, m, n):
    """Matrix of e_i ⊗ f_j ↦ f_j ⊗ e_i on m·n generators."""
    P = Matrix.zeros(A0, m * n, m * n)
    for i in range(m):
        for j in range(n):
            P.rows[j * m + i][i * n + j] = A0.one
    return P


@dataclass
class MonoidalWitness:
    kind: str
    forward: ComoduleMap
    backward: ComoduleMap

    def verify(self):
        rep = Report(f"{self.kind} witness")
        rep.add("forward equivariant", equivariance_report(self.forward).passed)
        rep.add("backward equivariant", equivariance_report(self.backward).passed)
        rep.add("backward∘forward = id", self.backward @ self.forward == ComoduleMap.identity(self.forward.source))
        rep.add("forward∘backward = id", self.forward @ self.backward == ComoduleMap.identity(self.forward.target))
        return rep


def left_unitor(M):
    U = unit(M.algebroid)
    UM = ctensor(U, M)
    I = Matrix.identity(M.A0, M.ngens)
    return MonoidalWitness("unit-left", ComoduleMap(UM, M, I), ComoduleMap(M, UM, I))


def right_unitor(M):
    U = unit(M.algebroid)
    MU = ctensor(M, U)
    I = Matrix.identity(M.A0, M.ngens)
    return MonoidalWitness("unit-right", ComoduleMap(MU, M, I), ComoduleMap(M, MU, I))


def associator(M, N, P):
    left = ctensor(ctensor(M, N), P)
    right = ctensor(M, ctensor(N, P))
    I = Matrix.identity(M.A0, left.ngens)
    return MonoidalWitness("associator", ComoduleMap(left, right, I), ComoduleMap(right, left, I))


def symmetry(M, N):
    MN, NM = ctensor(M, N), ctensor(N, M)
    return MonoidalWitness("symmetry",
                           ComoduleMap(MN, NM, _permutation(M.A0, M.ngens, N.ngens)),
                           ComoduleMap(NM, MN, _permutation(M.A0, N.ngens, M.ngens)))


def coherence_report(M, N, P, Q):
    """Pentagon, triangle and hexagon identities for the given objects."""
    rep = Report("coherence")
    a = associator
    lhs = a(M, N, ctensor(P, Q)).forward @ a(ctensor(M, N), P, Q).forward
    rhs = (tensor_maps(ComoduleMap.identity(M), a(N, P, Q).forward)
           @ a(M, ctensor(N, P), Q).forward
           @ tensor_maps(a(M, N, P).forward, ComoduleMap.identity(Q)))
    rep.add("pentagon", lhs == rhs)
    U = unit(M.algebroid)
    t_lhs = tensor_maps(right_unitor(M).forward, ComoduleMap.identity(N))
    t_rhs = tensor_maps(ComoduleMap.identity(M), left_unitor(N).forward) @ a(M, U, N).forward
    rep.add("triangle", t_lhs == t_rhs)
    h_lhs = a(N, P, M).forward @ symmetry(M, ctensor(N, P)).forward @ a(M, N, P).forward
    h_rhs = (tensor_maps(ComoduleMap.identity(N), symmetry(M, P).forward)
             @ a(N, M, P).forward
             @ tensor_maps(symmetry(M, N).forward, ComoduleMap.identity(P)))
    rep.add("hexagon", h_lhs == h_rhs)
    s = symmetry(M, N)
    rep.add("symmetry involutive", symmetry(N, M).forward @ s.forward == ComoduleMap.identity(ctensor(M, N)))
    return rep


# currying for A0-modules

def hom_of(M, Y):
    """HomModule(M, Y), cached per pair of module objects."""
    cache = _cache(M.ring, "_hom_cache")
    key = (id(M), id(Y))
    hit = cache.get(key)
    if hit is not None and hit[0] is M and hit[1] is Y:
        return hit[2]
    Hm = HomModule(M, Y)
    cache[key] = (M, Y, Hm)
    return Hm


def curry(f, P, M, hom):
    """An A0-map P ⊗ M → Y as an A0-map P → Hom(M, Y)."""
    m = M.ngens
    cols = []
    for t in range(P.ngens):
        mat = f.matrix.select(cols=range(t * m, (t + 1) * m))
        cols.append(hom.from_map(ModuleMap(M, hom.hom_target, mat)))
    return ModuleMap(P, hom, Matrix.from_columns(P.ring, cols, hom.ngens))


def uncurry(g, M, hom, source):
    """An A0-map P → Hom(M, Y) as an A0-map P ⊗ M → Y."""
    n = hom.hom_target.ngens
    if n == 0:
        return ModuleMap(source, hom.hom_target, Matrix.zeros(g.ring, 0, source.ngens))
    flat = hom.generator_matrix @ g.matrix
    # column t of flat is the column-major matrix of the t-th component
    cols = [flat.column(t)[j:j + n] for t in range(flat.ncols) for j in range(0, flat.nrows, n)]
    return ModuleMap(source, hom.hom_target, Matrix.from_columns(g.ring, cols, n))


# extended internal homs

def chom_extended(M, Y):
    """chom(M, extend(Y)) = extend(Hom(UM, Y))."""
    H = M.algebroid
    H.require_free_finite("chom")
    return extend(H, hom_of(M.module, Y))


def chom_map(M, phi):
    """chom(M, φ) for a comodule map φ: extend(Y1) → extend(Y2)."""
    H = M.algebroid
    E1, E2 = phi.source, phi.target
    if not hasattr(E1, "base") or not hasattr(E2, "base"):
        raise TypeError("chom_map needs a map between extended comodules")
    H1, H2 = hom_of(M.module, E1.base), hom_of(M.module, E2.base)
    S, T = extend(H, H1), extend(H, H2)
    C_M = M.coaction
    post = E2.collapse.matrix @ phi.matrix
    cols = []
    for b in H.left_basis:
        for h in H1.generator_matrices:
            V = (h.map(H.etaR) @ C_M).scale(b)
            mat = Matrix.from_columns(H.A0, [post.apply(E1.coords(c)) for c in V.columns()], E2.base.ngens)
            cols.append(H2.from_map(ModuleMap(M.module, E2.base, mat)))
    phibar = ModuleMap(S.module, H2, Matrix.from_columns(H.A0, cols, H2.ngens))
    return back(S, phibar, target=T)


@dataclass
class StandardPresentation:
    psi: ComoduleMap
    delta: ComoduleMap

    def exactness_report(self):
        """ψ_N is an isomorphism onto the kernel of δ."""
        rep = Report("standard presentation")
        rep.add("δ∘ψ = 0", (self.delta @ self.psi).is_zero())
        K, inc = kernel_comodule(self.delta)
        try:
            w = lift_comodule_map(self.psi, inc)
            rep.add("N ≅ ker δ", w.module_map.is_isomorphism())
        except IntegrityError as exc:
            rep.add("N ≅ ker δ", False, str(exc))
        return rep


def standard_presentation(N):
    H = N.algebroid
    H.require_free_finite("the standard presentation")
    psi = coaction_map(N)
    E1 = psi.target
    leg1 = coaction_map(E1)
    leg2 = ext_map(H, psi.module_map, source=E1, target=leg1.target)
    return StandardPresentation(psi, leg1 - leg2)


class InternalHom:
    """chom(M, N) together with the tensor–hom adjunction."""

    method = None

    def __init__(self, M, N):
        self.M, self.N = M, N
        self.algebroid = M.algebroid

    def transpose(self, f, P=None):
        """f: P ⊗ M → N to f̌: P → chom(M, N)."""
        raise NotImplementedError

    def untranspose(self, g, P=None):
        """g: P → chom(M, N) to ǧ: P ⊗ M → N."""
        raise NotImplementedError

    @cached_property
    def evaluation(self):
        return self.untranspose(ComoduleMap.identity(self.comodule))

    def dim(self):
        return self.comodule.kdim()


class ExtendedKernelHom(InternalHom):
    method = "kernel"

    def __init__(self, M, N):
        super().__init__(M, N)
        H = self.algebroid
        H.require_free_finite("chom")
        self.presentation = standard_presentation(N)
        self.hom = hom_of(M.module, N.module)
        self.map = chom_map(M, self.presentation.delta)
        K, inc = kernel_comodule(self.map)
        K.name = f"chom({M}, {N})"
        self.comodule = K
        self.inclusion = inc

    @property
    def ambient(self):
        return self.map.source

    def transpose(self, f, P):
        fbar = back(P, curry(f.module_map, P.module, self.M.module, self.hom), target=self.ambient)
        return lift_comodule_map(fbar, self.inclusion)

    def untranspose(self, g, P=None):
        P = g.source
        h = forward(self.inclusion @ g)
        PM = ctensor(P, self.M)
        return ComoduleMap(PM, self.N, uncurry(h, self.M.module, self.hom, PM.module))


class HopfHom(InternalHom):
    method = "hopf"

    def __init__(self, M, N):
        super().__init__(M, N)
        H = self.algebroid
        if not H.is_hopf_algebra:
            raise CapabilityError("the conjugation internal hom needs a Hopf algebra over the base field")
        A1 = H.A1
        hom = hom_of(M.module, N.module)
        self.hom = hom
        cM = M.coaction.map(H.antipode)
        n, m = N.ngens, M.ngens
        sub = Submodule(A1, n * m, [[H.etaR(x) for x in v] for v in hom.generator_vectors],
                        hom.ambient.relations.map(H.etaR).columns())
        cols = []
        for G in hom.generator_matrices:
            Phi = N.coaction @ G.map(H.etaL) @ cM
            flat = [Phi[l, j] for j in range(m) for l in range(n)]
            w = sub.lift(flat)
            if w is None:
                raise IntegrityError("conjugation coaction does not preserve Hom(M, N)")
            cols.append(w)
        self.comodule = Comodule(H, hom, Matrix.from_columns(A1, cols, hom.ngens), name=f"chom({M}, {N})")

    def transpose(self, f, P):
        return ComoduleMap(P, self.comodule, curry(f.module_map, P.module, self.M.module, self.hom))

    def untranspose(self, g, P=None):
        P = g.source
        PM = ctensor(P, self.M)
        return ComoduleMap(PM, self.N, uncurry(g.module_map, self.M.module, self.hom, PM.module))


def chom(M, N, method="auto"):
    """The internal hom object (cached per pair); ``.comodule`` is chom(M, N)."""
    H = M.algebroid
    if method == "auto":
        if H.is_free_finite:
            method = "kernel"
        elif H.is_hopf_algebra:
            method = "hopf"
        else:
            raise CapabilityError(f"chom needs A1 free-finite or a Hopf algebra; {H} is {H.flatness}")
    cache = _cache(H, "_chom_cache")
    key = (id(M), id(N), method)
    hit = cache.get(key)
    if hit is not None and hit[0] is M and hit[1] is N:
        return hit[2]
    obj = ExtendedKernelHom(M, N) if method == "kernel" else HopfHom(M, N)
    cache[key] = (M, N, obj)
    return obj


def chom_hopf(M, N):
    return chom(M, N, method="hopf")


def tensor_hom_adjunction(direction, f, M, N, P=None, method="auto"):
    """``transpose``: f: P⊗M → N to P → chom(M, N); ``untranspose``: the converse."""
    ih = chom(M, N, method)
    if direction == "transpose":
        if P is None:
            raise ValueError("transpose needs P")
        return ih.transpose(f, P)
    if direction == "untranspose":
        return ih.untranspose(f)
    raise ValueError(f"unknown direction {direction!r}")


def evaluation(M, N, method="auto"):
    return chom(M, N, method).evaluation


def chom_post(M, g, method="auto"):
    """chom(M, g): chom(M, N) → chom(M, N')."""
    src = chom(M, g.source, method)
    tgt = chom(M, g.target, method)
    X = src.comodule
    return tgt.transpose(g @ src.evaluation, X)


def chom_pre(f, N, method="auto"):
    """chom(f, N): chom(M, N) → chom(M', N) for f: M' → M."""
    src = chom(f.target, N, method)
    tgt = chom(f.source, N, method)
    X = src.comodule
    XM2 = ctensor(X, f.source)
    h = src.evaluation @ tensor_maps(ComoduleMap.identity(X), f, source=XM2)
    return tgt.transpose(h, X)


def internal_adjunction_witness(P, M, N, method="auto"):
    """Mutually inverse maps chom(P⊗M, N) ⇄ chom(P, chom(M, N))."""
    PM = ctensor(P, M)
    ih_X = chom(PM, N, method)
    ih_MN = chom(M, N, method)
    ih_Y = chom(P, ih_MN.comodule, method)
    X, Y = ih_X.comodule, ih_Y.comodule
    XP = ctensor(X, P)
    XP_M = ctensor(XP, M)
    fwd_inner = ih_MN.transpose(ComoduleMap(XP_M, N, ih_X.evaluation.matrix), XP)
    fwd = ih_Y.transpose(fwd_inner, X)
    YP = ctensor(Y, P)
    YP_M = ctensor(YP, M)
    step = tensor_maps(ih_Y.evaluation, ComoduleMap.identity(M), source=YP_M)
    composite = ih_MN.evaluation @ step
    Y_PM = ctensor(Y, PM)
    bwd = ih_X.transpose(ComoduleMap(Y_PM, N, composite.matrix), Y)
    return MonoidalWitness("internal-adjunction", bwd, fwd)


def invariants_of_chom_bijection(M, N, method="auto"):
    """Explicit bijection invariants(chom(M, N)) → Hom_coMod(M, N) with its report."""
    ih = chom(M, N, method)
    inv = invariants(ih.comodule)
    homs = ComoduleHoms(M, N)
    U = inv.unit
    UM = ctensor(U, M)
    images = []
    rep = Report(f"invariants(chom({M}, {N})) ≅ Hom({M}, {N})")
    for v in inv.basis:
        g = inv.to_map(v)
        h = ih.untranspose(g)
        f = ComoduleMap(M, N, h.matrix)
        images.append(f)
        back_g = ih.transpose(ComoduleMap(UM, N, f.matrix), U)
        if back_g != g:
            rep.add("round trip", False, f"invariant {v}")
    rep.add("dimensions agree", inv.dim == homs.dim, f"{inv.dim} vs {homs.dim}")
    coords = [homs.coordinates(f) for f in images]
    rep.add("images are comodule maps", all(c is not None for c in coords))
    if all(c is not None for c in coords):
        from .linalg import rank
        rep.add("injective", rank(homs.field, coords, homs.dim) == inv.dim if coords else True)
    if not any(c.name == "round trip" for c in rep.checks):
        rep.add("round trip", True)
    return rep


def sample_maps(space, rng=None, limit=256):
    """All elements of a k-space of maps when that is at most ``limit`` of them, else a sample.

    The sample always holds zero and the basis, plus random combinations drawn from ``rng``.
    """
    p = space.field.characteristic
    if p and p ** space.dim <= limit:
        if getattr(space, "_all_elements", None) is None:
            space._all_elements = list(space.elements())
        return list(space._all_elements)
    out = [space.combine([0] * space.dim)] + list(space.basis)
    if rng is not None:
        pick = (lambda: rng.randrange(p)) if p else (lambda: rng.randint(-3, 3))
        out += [space.combine([pick() for _ in range(space.dim)]) for _ in range(min(limit, 8))]
    return out


def homs_of(P, Q):
    """ComoduleHoms(P, Q), cached per pair of comodule objects."""
    cache = _cache(P.algebroid, "_homs_cache")
    key = (id(P), id(Q))
    hit = cache.get(key)
    if hit is None or hit[0] is not P or hit[1] is not Q:
        hit = cache[key] = (P, Q, ComoduleHoms(P, Q))
    return hit[2]


def _post_maps(M, N, space, rng, limit, method):
    """Endomorphisms g of N with chom(M, g); deterministic samples are cached."""
    if rng is not None:
        ends = sample_maps(space, rng, limit)
        return ends, [chom_post(M, g, method) for g in ends]
    cache = _cache(M.algebroid, "_post_cache")
    key = (id(M), id(N), limit, method)
    hit = cache.get(key)
    if hit is None or hit[0] is not M or hit[1] is not N:
        ends = sample_maps(space, None, limit)
        hit = cache[key] = (M, N, ends, [chom_post(M, g, method) for g in ends])
    return hit[2], hit[3]


def adjunction_report(P, M, N, rng=None, limit=256, method="auto"):
    """Round trips and the four naturality squares of Hom(P⊗M, N) ≅ Hom(P, chom(M, N)).

    Exhaustive over every map involved when the base field is finite and each hom space
    has at most ``limit`` elements; the check "exhaustive enumeration" records whether that held.
    """
    ih = chom(M, N, method)
    X = ih.comodule
    PM = ctensor(P, M)
    rep = Report(f"adjunction for ({P}, {M}, {N})")
    spaces = {"Hom(P⊗M,N)": homs_of(PM, N), "Hom(P,chom(M,N))": homs_of(P, X),
              "End(P)": homs_of(P, P), "End(N)": homs_of(N, N)}
    left_space, right_space = spaces["Hom(P⊗M,N)"], spaces["Hom(P,chom(M,N))"]
    rep.add("hom dimensions agree", left_space.dim == right_space.dim, f"{left_space.dim} vs {right_space.dim}")
    p = left_space.field.characteristic
    exhaustive = bool(p) and all(p ** S.dim <= limit for S in spaces.values())
    rep.add("exhaustive enumeration", exhaustive,
            ", ".join(f"{k} dim {S.dim}" for k, S in spaces.items()), required=False)
    left, right, ends_P = (sample_maps(spaces[k], rng, limit) for k in ("Hom(P⊗M,N)", "Hom(P,chom(M,N))", "End(P)"))
    ends_N, post = _post_maps(M, N, spaces["End(N)"], rng, limit, method)
    idM = ComoduleMap.identity(M)
    u_PM = [tensor_maps(u, idM, source=PM, target=PM) for u in ends_P]
    memo_t, memo_u = {}, {}

    def key(f):
        return tuple(poly_key(x.poly) for r in f.matrix.rows for x in r)

    def tr(f):
        # composites repeat a lot in the exhaustive squares; transposition is a pure function
        k = key(f)
        if k not in memo_t:
            memo_t[k] = ih.transpose(f, P)
        return memo_t[k]

    def untr(g):
        k = key(g)
        if k not in memo_u:
            memo_u[k] = ih.untranspose(g)
        return memo_u[k]

    def run(name, pairs):
        bad = next((f"case {i}" for i, (a, b) in enumerate(pairs) if a != b), None)
        rep.add(name, bad is None, bad)

    run("untranspose∘transpose = id", ((untr(tr(f)), f) for f in left))
    run("transpose∘untranspose = id", ((tr(untr(g)), g) for g in right))
    if _numeric_ok(P, PM, N, X):
        _numeric_squares(rep, run, p, left, right, ends_P, ends_N, u_PM, post, tr, untr, exhaustive)
        return rep
    run("transpose natural in P", ((tr(f @ u_PM[i]), tr(f) @ u) for f in left for i, u in enumerate(ends_P)))
    run("transpose natural in N", ((tr(g @ f), post[i] @ tr(f)) for f in left for i, g in enumerate(ends_N)))
    run("untranspose natural in P", ((untr(h @ u), untr(h) @ u_PM[i]) for h in right for i, u in enumerate(ends_P)))
    run("untranspose natural in N", ((untr(post[i] @ h), g @ untr(h)) for h in right for i, g in enumerate(ends_N)))
    return rep


def _numeric_ok(*comodules):
    """Maps between these comodules are plain matrices over a prime field."""
    A0 = comodules[0].A0
    return (A0.field.characteristic > 0 and A0.nvars == 0 and not A0.relations
            and all(C.module.relations.ncols == 0 for C in comodules))


def _numeric_squares(rep, run, p, left, right, ends_P, ends_N, u_PM, post, tr, untr, exhaustive):
    """The naturality squares with composites computed as integer matrices mod p.

    Transposes still go through ``tr``/``untr``.  When the enumeration is exhaustive
    every composite lies in the enumerated space, so its transpose is found by code
    lookup and the squares are compared in batches.
    """
    def arr(f):
        m = f.matrix
        return np.array([[x.poly.get((), 0) for x in r] for r in m.rows], dtype=np.int64).reshape(m.shape)

    def stack(maps):
        return np.stack([arr(f) for f in maps])

    e_P, e_PM, e_N, e_post = stack(ends_P), stack(u_PM), stack(ends_N), stack(post)
    L, R = stack(left), stack(right)
    TL, TR = stack([tr(f) for f in left]), stack([untr(h) for h in right])
    sizes = [a.shape[1] * a.shape[2] for a in (L, R, TL, TR)]
    if exhaustive and max(sizes) * max(p.bit_length(), 1) <= 62:
        batched = _batched_squares(p)
        for name, args in [("transpose natural in P", (L, TL, e_PM, e_P, True)),
                           ("transpose natural in N", (L, TL, e_N, e_post, False)),
                           ("untranspose natural in P", (R, TR, e_P, e_PM, True)),
                           ("untranspose natural in N", (R, TR, e_post, e_N, False))]:
            bad = batched(*args)
            rep.add(name, bad is None, bad)
        return

    def lookup(cache, fn, like, a):
        k = a.tobytes()
        hit = cache.get(k)
        if hit is None:
            A0 = like.source.A0
            f = ComoduleMap(like.source, like.target, Matrix(A0, [[A0(int(v)) for v in row] for row in a],
                                                             a.shape[1]))
            hit = cache[k] = arr(fn(f))
        return hit

    def squares(maps, images, fn, before, after, on_right):
        cache = {}
        out = []
        for f, fa, tfa in zip(maps, *(images)):
            for b, a in zip(before, after):
                comp, moved = ((fa @ b), (tfa @ a)) if on_right else ((b @ fa), (a @ tfa))
                out.append((lookup(cache, fn, f, comp % p).tobytes(), (moved % p).tobytes()))
        return out

    run("transpose natural in P", squares(left, (L, TL), tr, e_PM, e_P, True))
    run("transpose natural in N", squares(left, (L, TL), tr, e_N, e_post, False))
    run("untranspose natural in P", squares(right, (R, TR), untr, e_P, e_PM, True))
    run("untranspose natural in N", squares(right, (R, TR), untr, e_post, e_N, False))


def _batched_squares(p):
    def codes(a):
        flat = a.reshape(a.shape[0], -1)
        weights = np.array([p ** i for i in range(flat.shape[1])], dtype=np.int64)
        return flat @ weights

    def batched(space, images, before, after, on_right):
        """First case where the image of a composite differs from the composite of images, or None."""
        space_codes = codes(space)
        order = np.argsort(space_codes)
        sorted_codes = space_codes[order]
        image_codes = codes(images)
        J = before.shape[0]
        per_map = J * max(space.shape[1] * space.shape[2], 1)
        chunk = max(1, 2_000_000 // per_map)
        for lo in range(0, space.shape[0], chunk):
            S, T = space[lo:lo + chunk], images[lo:lo + chunk]
            if on_right:
                comp = np.matmul(S[:, None], before[None]) % p
                moved = np.matmul(T[:, None], after[None]) % p
            else:
                comp = np.matmul(before[None], S[:, None]) % p
                moved = np.matmul(after[None], T[:, None]) % p
            c = codes(comp.reshape(-1, *comp.shape[2:]))
            pos = np.minimum(np.searchsorted(sorted_codes, c), len(sorted_codes) - 1)
            idx = order[pos]
            found = space_codes[idx] == c
            lhs = np.where(found, image_codes[idx], -1)
            rhs = codes(moved.reshape(-1, *moved.shape[2:]))
            bad = np.flatnonzero(lhs != rhs)
            if bad.size:
                return f"case {lo * J + int(bad[0])}"
        return None

    return batched


def unit_chom_witness(N, method="auto"):
    """chom(A0, N) ≅ N through evaluation against 1 and its transpose."""
    U = unit(N.algebroid)
    ih = chom(U, N, method)
    X = ih.comodule
    fwd = ComoduleMap(X, N, ih.evaluation.matrix)
    NU = ctensor(N, U)
    bwd = ih.transpose(ComoduleMap(NU, N, Matrix.identity(N.A0, N.ngens)), N)
    return MonoidalWitness("chom-unit", fwd, bwd)


# duals

@dataclass
class DualityCertificate:
    comodule: Comodule
    dual: Comodule
    evaluation: ComoduleMap
    coevaluation: ComoduleMap
    canonical_maps: dict = field(default_factory=dict)
    report: Report = None

    @property
    def verified(self):
        return self.report is not None and self.report.passed


def canonical_map(M, N, method="auto"):
    """DM ⊗ N → chom(M, N), the transpose of (ev ⊗ id)∘(shuffle)."""
    U = unit(M.algebroid)
    ihD = chom(M, U, method)
    D = ihD.comodule
    DN = ctensor(D, N)
    DN_M = ctensor(DN, M)
    DM = ctensor(D, M)
    DM_N = ctensor(DM, N)
    d, n, m = D.ngens, N.ngens, M.ngens
    A0 = M.A0
    shuffle = Matrix.zeros(A0, d * m * n, d * n * m)
    for a in range(d):
        for b in range(n):
            for c in range(m):
                shuffle.rows[(a * m + c) * n + b][(a * n + b) * m + c] = A0.one
    sh = ComoduleMap(DN_M, DM_N, shuffle)
    UN = ctensor(U, N)
    evN = tensor_maps(ihD.evaluation, ComoduleMap.identity(N), source=DM_N, target=UN)
    lam = ComoduleMap(UN, N, Matrix.identity(A0, n))
    return chom(M, N, method).transpose(lam @ evN @ sh, DN)


def dualizability(M, testers, method="auto"):
    """Duality data for M, verified against every tester."""
    H = M.algebroid
    U = unit(H)
    ihD = chom(M, U, method)
    D = ihD.comodule
    rep = Report(f"dualizability of {M}")
    cert = projectivity_certificate(M.module)
    rep.add("projective underlying module", cert is not None, required=False)
    ev = ihD.evaluation
    canon = {}
    for N in list(testers):
        can = canonical_map(M, N, method)
        ok = equivariance_report(can).passed and can.module_map.is_isomorphism()
        rep.add(f"canonical map iso for {N}", ok)
        canon[str(N)] = can
    can_M = canonical_map(M, M, method)
    coev = None
    try:
        inv = ComoduleMap(can_M.target, can_M.source, can_M.module_map.inverse().matrix)
        UM = ctensor(U, M)
        name_id = chom(M, M, method).transpose(ComoduleMap(UM, M, Matrix.identity(M.A0, M.ngens)), U)
        coev_DM = inv @ name_id
        MD = ctensor(M, D)
        coev = ComoduleMap(U, MD, _permutation(M.A0, D.ngens, M.ngens) @ coev_DM.matrix)
        rep.add("coevaluation equivariant", equivariance_report(coev).passed)
        Im = Matrix.identity(M.A0, M.ngens)
        Id = Matrix.identity(M.A0, D.ngens)
        t1 = Im.kron(ev.matrix) @ coev.matrix.kron(Im)
        rep.add("triangle identity on M", ModuleMap(M.module, M.module, t1) == ModuleMap.identity(M.module))
        t2 = ev.matrix.kron(Id) @ Id.kron(coev.matrix)
        rep.add("triangle identity on dual", ModuleMap(D.module, D.module, t2) == ModuleMap.identity(D.module))
    except IntegrityError as exc:
        rep.add("coevaluation", False, str(exc))
    return DualityCertificate(M, D, ev, coev, canon, rep)


# resolution property

@dataclass
class ResolutionWitness:
    found: bool
    map: ComoduleMap = None
    report: Report = None


def resolution_witness(family, M, max_copies=16):
    """Search for a surjection from a sum of family members onto M."""
    rep = Report(f"resolution witness for {M}")
    for F in family:
        rep.add(f"projective certificate for {F}", projectivity_certificate(F.module) is not None)
    if not rep.passed:
        return ResolutionWitness(False, None, rep)
    if any(F is M for F in family):
        rep.add("surjection", True, "identity")
        return ResolutionWitness(True, ComoduleMap.identity(M), rep)
    parts, blocks = [], []
    for F in family:
        try:
            homs = ComoduleHoms(F, M)
        except CapabilityError as exc:
            rep.add(f"maps from {F}", False, str(exc))
            return ResolutionWitness(False, None, rep)
        for f in homs.basis[:max_copies]:
            parts.append(F)
            blocks.append(f)
    if not parts:
        rep.add("surjection", M.module.is_zero(), "no nonzero maps from the family")
        return ResolutionWitness(M.module.is_zero(), None, rep)
    S = direct_sum(*parts)
    mat = blocks[0].matrix
    for f in blocks[1:]:
        mat = mat.hstack(f.matrix)
    phi = ComoduleMap(S, M, mat)
    ok = phi.module_map.is_surjective()
    rep.add("surjection", ok, f"from {len(parts)} summands")
    return ResolutionWitness(ok, phi if ok else None, rep)
