"""Left comodules over a Hopf algebroid and equivariant maps.

A comodule is an A0-module M with a coaction matrix C over A1:
``ψ(e_j) = Σ_k C[k, j] ⊗ e_k`` in ``A1 ⊗_{etaR} M``, which is an A0-module
through etaL.  Every base change below names the unit it uses.
"""

from functools import cached_property

from . import linalg
from .algebra import Matrix, Submodule, block_diagonal
from .errors import CapabilityError, IntegrityError
from .fpmodule import (FPModule, HomModule, ModuleMap, base_change, cokernel, direct_sum as module_sum,
                       kernel)
from .report import Report


class Comodule:
    def __init__(self, algebroid, module, coaction, name=None):
        self.algebroid = algebroid
        self.module = module
        A1 = algebroid.A1
        if not isinstance(coaction, Matrix):
            coaction = Matrix(A1, coaction, module.ngens)
        if coaction.shape != (module.ngens, module.ngens):
            raise ValueError(f"coaction must be {module.ngens}x{module.ngens}, got {coaction.shape}")
        self.coaction = coaction
        self.name = name

    @property
    def ngens(self):
        return self.module.ngens

    @property
    def A0(self):
        return self.algebroid.A0

    @property
    def A1(self):
        return self.algebroid.A1

    @cached_property
    def a1_module(self):
        """A1 ⊗_{etaR} M as an A1-module."""
        return base_change(self.algebroid.etaR, self.module)

    @cached_property
    def d_module(self):
        """(A1 ⊗ A1) ⊗ M, tensored through the right unit of the second factor."""
        H = self.algebroid
        return base_change(H.iota2.compose(H.etaR), self.module)

    def psi(self, vec):
        """The coaction applied to an element of M, as a vector over A1."""
        return self.coaction.apply([self.algebroid.etaL(x) for x in vec])

    def kdim(self):
        return self.module.kdim()

    def __repr__(self):
        return self.name or f"Comodule({self.ngens} gens over {self.algebroid})"


def unit(H):
    """A0 with coaction 1 ↦ 1⊗1 (one shared object per algebroid)."""
    U = H.__dict__.get("_unit")
    if U is None:
        U = Comodule(H, FPModule.free(H.A0, 1), Matrix.identity(H.A1, 1), name="unit")
        H._unit = U
    return U


def trivial(H, module, name=None):
    """``module`` with the coaction m ↦ 1⊗m (well-defined when etaL and etaR agree on its relations)."""
    return Comodule(H, module, Matrix.identity(H.A1, module.ngens), name=name)


def zero_comodule(H):
    return Comodule(H, FPModule.zero(H.A0), Matrix.zeros(H.A1, 0, 0), name="0")


def check_comodule(M):
    H = M.algebroid
    rep = Report(f"comodule {M}")
    C = M.coaction
    bad = [j for j, r in enumerate(M.module.relations.columns())
           if not M.a1_module.is_zero_vector(C.apply([H.etaL(x) for x in r]))]
    rep.add("well-defined", not bad, None if not bad else f"relation {bad[0]} not respected")
    epsC = C.map(H.counit)
    bad = []
    for j in range(M.ngens):
        col = epsC.column(j)
        col[j] = col[j] - 1
        if not M.module.is_zero_vector(col):
            bad.append(j)
    rep.add("counit", not bad, None if not bad else f"generator {bad[0]}: (ε⊗id)ψ = {epsC.column(bad[0])}")
    left = C.map(H.comult)
    right = C.map(H.iota2) @ C.map(H.iota1)
    bad = [j for j in range(M.ngens)
           if not M.d_module.is_zero_vector([a - b for a, b in zip(left.column(j), right.column(j))])]
    rep.add("coassociativity", not bad, None if not bad else f"generator {bad[0]}")
    return rep


class ComoduleMap:
    def __init__(self, source, target, matrix):
        if isinstance(matrix, ModuleMap):
            matrix = matrix.matrix
        elif not isinstance(matrix, Matrix):
            matrix = Matrix(source.A0, matrix, source.ngens)
        self.source = source
        self.target = target
        self.module_map = ModuleMap(source.module, target.module, matrix)

    @property
    def matrix(self):
        return self.module_map.matrix

    @classmethod
    def identity(cls, M):
        return cls(M, M, Matrix.identity(M.A0, M.ngens))

    @classmethod
    def zero(cls, M, N):
        return cls(M, N, Matrix.zeros(M.A0, N.ngens, M.ngens))

    def __matmul__(self, other):
        return ComoduleMap(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other):
        return ComoduleMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other):
        return ComoduleMap(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self):
        return ComoduleMap(self.source, self.target, -self.matrix)

    def scale(self, c):
        return ComoduleMap(self.source, self.target, self.matrix.scale(c))

    def __eq__(self, other):
        return isinstance(other, ComoduleMap) and self.module_map == other.module_map

    __hash__ = None

    def is_zero(self):
        return self.module_map.is_zero()

    def is_equivariant(self):
        return equivariance_report(self).passed

    def __call__(self, vec):
        return self.module_map(vec)

    def __repr__(self):
        return f"ComoduleMap({self.source} -> {self.target}: {self.matrix})"


def equivariance_defect(f):
    """Columns of η_R(F)·C_M − C_N·η_L(F) as vectors in A1 ⊗ N."""
    H = f.source.algebroid
    lhs = f.matrix.map(H.etaR) @ f.source.coaction
    rhs = f.target.coaction @ f.matrix.map(H.etaL)
    return (lhs - rhs).columns()


def equivariance_report(f):
    rep = Report("comodule map")
    rep.add("well-defined", f.module_map.is_well_defined())
    bad = [j for j, c in enumerate(equivariance_defect(f)) if not f.target.a1_module.is_zero_vector(c)]
    rep.add("equivariant", not bad, None if not bad else f"generator {bad[0]}")
    return rep


def require_equivariant(f, what="map"):
    rep = equivariance_report(f)
    if not rep.passed:
        raise ValueError(f"{what} is not a comodule map: {rep.failures()[0].name}")
    return f


def direct_sum(*comodules, name=None):
    H = comodules[0].algebroid
    module = module_sum(*[M.module for M in comodules])
    C = block_diagonal(H.A1, [M.coaction for M in comodules])
    return Comodule(H, module, C, name=name)


def direct_sum_maps(maps, source=None, target=None):
    source = source or direct_sum(*[f.source for f in maps])
    target = target or direct_sum(*[f.target for f in maps])
    return ComoduleMap(source, target, block_diagonal(source.A0, [f.matrix for f in maps]))


def coordinate_maps(parts, total=None):
    """Injections into and projections out of ``direct_sum(*parts)``."""
    total = total or direct_sum(*parts)
    A0 = total.A0
    n = total.ngens
    inj, proj = [], []
    offset = 0
    for M in parts:
        m = M.ngens
        i_mat = Matrix.zeros(A0, n, m)
        p_mat = Matrix.zeros(A0, m, n)
        for k in range(m):
            i_mat.rows[offset + k][k] = A0.one
            p_mat.rows[k][offset + k] = A0.one
        inj.append(ComoduleMap(M, total, i_mat))
        proj.append(ComoduleMap(total, M, p_mat))
        offset += m
    return total, inj, proj


# extended comodules and the forget/extend adjunction

class ExtendedComodule(Comodule):
    """A1 ⊗_{etaR} Y for an A0-module Y; generator ``i * n + l`` is ``b_i ⊗ e_l``."""

    def __init__(self, H, base, name=None):
        H.require_free_finite("extended comodules")
        self.base = base
        basis = H.left_basis
        r, n = len(basis), base.ngens
        self.rank = r
        A0, A1 = H.A0, H.A1
        self.algebroid = H
        rels = []
        for rel in base.relations.columns():
            img = [H.etaR(x) for x in rel]
            for b in basis:
                rels.append(self.coords([b * x for x in img]))
        module = FPModule(A0, r * n, Matrix.from_columns(A0, rels, r * n))
        c = H.comult_matrix
        C = Matrix.zeros(A1, r * n, r * n)
        for i in range(r):
            for j in range(r):
                if c[j, i].poly:
                    for l in range(n):
                        C.rows[j * n + l][i * n + l] = c[j, i]
        super().__init__(H, module, C, name=name)

    def coords(self, vec):
        """A0-coordinates of Σ_l vec[l] ⊗ e_l."""
        H = self.algebroid
        n = self.base.ngens
        out = [H.A0.zero] * (self.rank * n)
        for l, a in enumerate(vec):
            if a.poly:
                for j, alpha in enumerate(H.decompose(a)):
                    if alpha.poly:
                        out[j * n + l] = out[j * n + l] + alpha
        return out

    def element(self, coords):
        """Inverse of :meth:`coords`: the A1-vector of an element given in generators."""
        H = self.algebroid
        n = self.base.ngens
        out = [H.A1.zero] * n
        for idx, a in enumerate(coords):
            if a.poly:
                i, l = divmod(idx, n)
                out[l] = out[l] + H.etaL(a) * H.left_basis[i]
        return out

    @cached_property
    def collapse(self):
        """ε⊗id : U ext(Y) → Y."""
        H = self.algebroid
        n = self.base.ngens
        cols = []
        for i, b in enumerate(H.left_basis):
            e = H.counit(b)
            for l in range(n):
                v = [H.A0.zero] * n
                v[l] = e
                cols.append(v)
        return ModuleMap(self.module, self.base, Matrix.from_columns(H.A0, cols, n))


def extend(H, Y, name=None):
    """The extended comodule on an A0-module, cached per module object."""
    cache = H.__dict__.setdefault("_extend_cache", {})
    hit = cache.get(id(Y))
    if hit is not None and hit[0] is Y:
        return hit[1]
    E = ExtendedComodule(H, Y, name=name)
    cache[id(Y)] = (Y, E)
    return E


def ext_map(H, g, source=None, target=None):
    """extend(g) for an A0-linear map g: Y → Y'."""
    source = source or extend(H, g.source)
    target = target or extend(H, g.target)
    cols = []
    for b in H.left_basis:
        for col in g.matrix.columns():
            cols.append(target.coords([b * H.etaR(x) for x in col]))
    return ComoduleMap(source, target, Matrix.from_columns(H.A0, cols, target.ngens))


def back(X, g, target=None):
    """The comodule map X → extend(Y) adjoint to an A0-map g: UX → Y, namely (id⊗g)∘ψ_X."""
    H = X.algebroid
    target = target or extend(H, g.target)
    V = g.matrix.map(H.etaR) @ X.coaction
    cols = [target.coords(c) for c in V.columns()]
    return ComoduleMap(X, target, Matrix.from_columns(H.A0, cols, target.ngens))


def forward(f):
    """The A0-map UX → Y adjoint to a comodule map f: X → extend(Y), namely (ε⊗id)∘f."""
    E = f.target
    if not isinstance(E, ExtendedComodule):
        raise TypeError("forward transpose needs an extended comodule as target")
    return E.collapse @ f.module_map


def adjoint_transpose(direction, f, X=None, target=None):
    """``forward``: ComoduleMap X → extend(Y) to ModuleMap UX → Y; ``back``: the converse.

    For ``back`` the source comodule ``X`` must be given.
    """
    if direction == "forward":
        require_equivariant(f)
        return forward(f)
    if direction == "back":
        if X is None:
            raise ValueError("back transpose needs the source comodule")
        return back(X, f, target)
    raise ValueError(f"unknown direction {direction!r}")


def coaction_map(X):
    """ψ_X as a comodule map X → extend(UX) (the unit of extend∘forget)."""
    return back(X, ModuleMap.identity(X.module))


# kernels, cokernels, images

def kernel_comodule(f):
    """Kernel of a comodule map with the restricted coaction, and its inclusion."""
    H = f.source.algebroid
    M = f.source
    K, inc = kernel(f.module_map)
    if K is M.module:
        return M, ComoduleMap.identity(M)
    if K.ngens == 0:
        Z = zero_comodule(H)
        return Z, ComoduleMap(Z, M, Matrix.zeros(H.A0, M.ngens, 0))
    sub = Submodule(H.A1, M.ngens, inc.matrix.map(H.etaR).columns(),
                    M.module.relations.map(H.etaR).columns())
    target = M.coaction @ inc.matrix.map(H.etaL)
    cols = []
    for c in target.columns():
        w = sub.lift(c)
        if w is None:
            raise IntegrityError("coaction does not restrict to the kernel; A1 is not flat as declared")
        cols.append(w)
    Kc = Comodule(H, K, Matrix.from_columns(H.A1, cols, K.ngens))
    return Kc, ComoduleMap(Kc, M, inc.matrix)


def cokernel_comodule(f):
    Q, proj = cokernel(f.module_map)
    Qc = Comodule(f.target.algebroid, Q, f.target.coaction)
    return Qc, ComoduleMap(f.target, Qc, proj.matrix)


def lift_comodule_map(f, inc):
    """Factor a comodule map ``f`` through an injective comodule map ``inc``."""
    from .fpmodule import lift_through
    m = lift_through(f.module_map, inc.module_map)
    if m is None:
        raise IntegrityError("map does not factor through the inclusion")
    return ComoduleMap(f.source, inc.source, m)


# k-linear invariants and comodule homomorphisms

def _require_finite(module, what):
    if module.kbasis() is None:
        raise CapabilityError(f"{what} needs a module that is finite-dimensional over the base field")


def _defect_rows(field, defects):
    """Turn a list of term dictionaries (one per unknown) into a coefficient matrix."""
    keys = sorted({k for d in defects for k in d}, key=repr)
    rows = [[d.get(k, field.zero) for d in defects] for k in keys]
    return rows


def gray_steps(p, n):
    """(digit, ±1) moves of the reflected base-p Gray code through all p**n words."""
    digits, direction = [0] * n, [1] * n
    for _ in range(p ** n - 1):
        i = 0
        while not 0 <= digits[i] + direction[i] < p:
            direction[i] = -direction[i]
            i += 1
        digits[i] += direction[i]
        yield i, direction[i]


class KSpace:
    """Finite k-subspace of a space of module maps, with coordinates."""

    def __init__(self, field, basis, embed):
        self.field = field
        self.basis = basis
        self._embed = embed

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, x):
        """Coefficients of ``x`` on the basis, or None if ``x`` is outside the subspace."""
        cols = [self._embed(b) for b in self.basis]
        target = self._embed(x)
        rows = linalg.transpose(cols, len(target)) if cols else [[] for _ in target]
        return linalg.solve(self.field, rows, len(cols), target)

    def elements(self):
        """Every element of the space; only for finite fields."""
        p = self.field.characteristic
        if p == 0:
            raise ValueError("cannot enumerate a vector space over QQ")
        if not self.dim:
            yield self.combine([])
            return
        # reflected p-ary Gray code: each step adds ±1 times one basis vector
        coeffs = [0] * self.dim
        current = self.combine(coeffs)
        yield current
        for i, step in gray_steps(p, self.dim):
            coeffs[i] += step
            current = self.shift(current, coeffs, i, step)
            yield current

    def combine(self, coeffs):
        raise NotImplementedError

    def shift(self, x, coeffs, i, step):
        """The element with coordinates ``coeffs``, which differs from ``x`` by step·basis[i]."""
        return self.combine(coeffs)


class ComoduleHoms(KSpace):
    """Hom_coMod(P, Q) as a k-vector space of comodule maps."""

    def __init__(self, P, Q):
        _require_finite(Q.module, "comodule homomorphisms")
        H = P.algebroid
        field = H.field
        self.source, self.target = P, Q
        hom = HomModule(P.module, Q.module)
        self.hom = hom
        candidates = [ComoduleMap(P, Q, hom.to_map(v)) for v in hom.kbasis_vectors()]
        sub = Q.a1_module._sub
        defects = []
        for f in candidates:
            d = {}
            for j, col in enumerate(equivariance_defect(f)):
                for t, c in sub.reduce_terms(col).items():
                    d[(j, t)] = c
            defects.append(d)
        rows = _defect_rows(field, defects)
        null = linalg.nullspace(field, rows, len(candidates))
        basis = [self._sum(candidates, v, P, Q) for v in null]
        super().__init__(field, basis, lambda f: hom.kcoords(hom.from_map(f.module_map)))

    @staticmethod
    def _sum(maps, coeffs, P, Q):
        A0 = P.A0
        m = Matrix.zeros(A0, Q.ngens, P.ngens)
        for c, f in zip(coeffs, maps):
            if c:
                m = m + f.matrix.scale(A0(c))
        return ComoduleMap(P, Q, m)

    def combine(self, coeffs):
        return self._sum(self.basis, coeffs, self.source, self.target)

    def shift(self, x, coeffs, i, step):
        b = self.basis[i].matrix
        m = x.matrix + b if step == 1 else x.matrix + b.scale(self.source.A0(step))
        return ComoduleMap(self.source, self.target, m)


def comodule_homs(P, Q):
    return ComoduleHoms(P, Q)


class Invariants(KSpace):
    """Invariant elements {m : ψ(m) = 1⊗m} of a comodule, as a k-subspace of UN.

    When etaL differs from etaR this is a k-space, not an A0-submodule.
    """

    def __init__(self, N):
        _require_finite(N.module, "invariants")
        self.comodule = N
        self.unit = unit(N.algebroid)
        self._homs = ComoduleHoms(self.unit, N)
        super().__init__(self._homs.field, [f.matrix.column(0) for f in self._homs.basis],
                         lambda v: N.module.kcoords(v))

    def to_map(self, v):
        """The comodule map A0 → N sending 1 to ``v``."""
        return ComoduleMap(self.unit, self.comodule, Matrix.from_columns(self.unit.A0, [v], self.comodule.ngens))

    def from_map(self, f):
        return f.matrix.column(0)

    def combine(self, coeffs):
        A0 = self.comodule.A0
        v = [A0.zero] * self.comodule.ngens
        for c, b in zip(coeffs, self.basis):
            if c:
                v = [x + A0(c) * y for x, y in zip(v, b)]
        return v


def invariants(N):
    return Invariants(N)


def change_of_basis(M, P, Pinv=None):
    """Same comodule on new generators f_j = Σ_i P[i, j] e_i (P invertible over A0)."""
    H = M.algebroid
    if Pinv is None:
        Pinv = ModuleMap(FPModule.free(H.A0, M.ngens), FPModule.free(H.A0, M.ngens), P).inverse().matrix
    rels = Pinv @ M.module.relations
    module = FPModule(H.A0, M.ngens, rels)
    C = Pinv.map(H.etaR) @ M.coaction @ P.map(H.etaL)
    N = Comodule(H, module, C)
    return N, ComoduleMap(N, M, P), ComoduleMap(M, N, Pinv)


__all__ = [
    "Comodule", "ComoduleMap", "ExtendedComodule", "Invariants", "ComoduleHoms",
    "unit", "trivial", "zero_comodule", "check_comodule", "equivariance_report", "direct_sum",
    "direct_sum_maps", "coordinate_maps", "extend", "ext_map", "back", "forward",
    "adjoint_transpose", "coaction_map", "kernel_comodule", "cokernel_comodule",
    "lift_comodule_map", "invariants", "comodule_homs", "change_of_basis",
]
