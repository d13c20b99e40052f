"""Bounded cochain complexes of comodules, their tensor and hom complexes, and the cobar resolution.

Grading is cohomological: ``d^n : C^n → C^{n+1}``.  Conventions:

* shift: ``C[r]^n = C^{n+r}`` with differential ``(-1)^r d``;
* tensor: ``d(x⊗y) = dx⊗y + (-1)^p x⊗dy`` for x of degree p;
* symmetry: ``x⊗y ↦ (-1)^{pq} y⊗x``;
* hom: ``d(f) = d_D∘f - (-1)^n f∘d_C`` on maps of degree n;
* cone of f: C → D: ``C^{n+1} ⊕ D^n`` with ``d(c, y) = (-dc, f(c) + dy)``.
"""

from dataclasses import dataclass, field

from . import linalg
from .algebra import Matrix
from .comodule import (ComoduleMap, coaction_map, cokernel_comodule, direct_sum, ext_map, extend, forward,
                       back, kernel_comodule, lift_comodule_map, trivial, unit, zero_comodule)
from .errors import CapabilityError
from .fpmodule import FPModule, ModuleMap, projectivity_certificate
from .monoidal import chom, chom_post, chom_pre, ctensor, symmetry
from .report import Report


class Complex:
    """Terms indexed by degree; a missing term is zero and a missing differential is zero."""

    def __init__(self, algebroid, terms, differentials=None, check=True, name=None):
        self.algebroid = algebroid
        self.terms = {n: M for n, M in terms.items() if M.ngens}
        self.differentials = {}
        self.name = name
        for n, d in (differentials or {}).items():
            if n in self.terms and (n + 1) in self.terms:
                self.differentials[n] = d
        if check:
            rep = self.check()
            if not rep.passed:
                raise ValueError(f"not a complex: {rep.failures()[0].name}")

    def degrees(self):
        return sorted(self.terms)

    @property
    def range(self):
        ds = self.degrees()
        return (ds[0], ds[-1]) if ds else (0, -1)

    def term(self, n):
        return self.terms.get(n) or zero_comodule(self.algebroid)

    def d(self, n):
        if n in self.differentials:
            return self.differentials[n]
        return ComoduleMap.zero(self.term(n), self.term(n + 1))

    def check(self):
        rep = Report(f"complex {self.name or ''}".strip())
        for n, d in sorted(self.differentials.items()):
            ok = d.matrix.shape == (self.terms[n + 1].ngens, self.terms[n].ngens)
            rep.add(f"d^{n} shape", ok)
            if ok:
                rep.add(f"d^{n} well-defined", d.module_map.is_well_defined())
        for n in sorted(self.differentials):
            if n + 1 in self.differentials:
                rep.add(f"d^{n + 1}∘d^{n} = 0", (self.differentials[n + 1] @ self.differentials[n]).is_zero())
        return rep

    def __repr__(self):
        body = ", ".join(f"{n}: {M}" for n, M in sorted(self.terms.items()))
        return self.name or f"Complex({body})"


def single(M, degree=0):
    return Complex(M.algebroid, {degree: M})


@dataclass
class ChainMap:
    source: Complex
    target: Complex
    components: dict = field(default_factory=dict)

    def at(self, n):
        f = self.components.get(n)
        if f is None:
            return ComoduleMap.zero(self.source.term(n), self.target.term(n))
        return f

    def degrees(self):
        return sorted(set(self.source.degrees()) | set(self.target.degrees()))

    def check(self):
        rep = Report("chain map")
        for n in self.degrees():
            lhs = self.target.d(n) @ self.at(n)
            rhs = self.at(n + 1) @ self.source.d(n)
            rep.add(f"commutes in degree {n}", lhs == rhs)
        return rep

    def __matmul__(self, other):
        return ChainMap(other.source, self.target,
                        {n: self.at(n) @ other.at(n) for n in set(self.components) | set(other.components)})

    def scale(self, c):
        return ChainMap(self.source, self.target, {n: f.scale(c) for n, f in self.components.items()})

    def __eq__(self, other):
        return all(self.at(n) == other.at(n) for n in set(self.degrees()) | set(other.degrees()))

    __hash__ = None


def identity_chain_map(C):
    return ChainMap(C, C, {n: ComoduleMap.identity(M) for n, M in C.terms.items()})


def homology(C, n):
    """H^n(C) as a comodule: the cokernel of C^{n-1} → ker d^n."""
    K, inc = kernel_comodule(C.d(n))
    incoming = C.d(n - 1)
    if incoming.source.ngens == 0 or K.ngens == 0:
        return K
    corestricted = lift_comodule_map(incoming, inc)
    Q, _ = cokernel_comodule(corestricted)
    return Q


def homology_dims(C, degrees=None):
    """k-dimensions of homology (None where infinite)."""
    lo, hi = C.range
    degrees = degrees if degrees is not None else range(lo - 1, hi + 2)
    return {n: homology(C, n).kdim() for n in degrees}


def is_acyclic(C):
    lo, hi = C.range
    return all(homology(C, n).module.is_zero() for n in range(lo, hi + 1))


def shift(C, r):
    sign = -1 if r % 2 else 1
    terms = {n - r: M for n, M in C.terms.items()}
    diffs = {n - r: d.scale(sign) for n, d in C.differentials.items()}
    return Complex(C.algebroid, terms, diffs, check=False, name=None if C.name is None else f"{C.name}[{r}]")


# direct-sum bookkeeping

def _assemble(A0, rows, cols, blocks):
    """Block matrix from ``blocks[(i, j)]`` given row and column sizes."""
    roff = [0]
    for r in rows:
        roff.append(roff[-1] + r)
    coff = [0]
    for c in cols:
        coff.append(coff[-1] + c)
    out = Matrix.zeros(A0, roff[-1], coff[-1])
    for (i, j), b in blocks.items():
        for a in range(b.nrows):
            out.rows[roff[i] + a][coff[j]:coff[j] + b.ncols] = b.rows[a]
    return out


def _require_projective(C, what):
    for n, M in C.terms.items():
        if projectivity_certificate(M.module) is None:
            raise CapabilityError(f"{what}: term {n} has no projectivity certificate; pass underived=True")


def tensor_complexes(C, D, underived=False):
    """Total tensor complex; derived unless ``underived`` (then terms need not be projective)."""
    if not underived:
        _require_projective(C, "derived tensor")
        _require_projective(D, "derived tensor")
    H = C.algebroid
    A0 = H.A0
    terms, summands, parts = {}, {}, {}
    for p, Mp in C.terms.items():
        for q, Nq in D.terms.items():
            summands.setdefault(p + q, []).append((p, q))
    for n in summands:
        summands[n].sort()
        parts[n] = [ctensor(C.terms[p], D.terms[q]) for p, q in summands[n]]
        terms[n] = direct_sum(*parts[n])
    diffs = {}
    for n in summands:
        if n + 1 not in summands:
            continue
        src, tgt = summands[n], summands[n + 1]
        index = {pq: i for i, pq in enumerate(tgt)}
        blocks = {}
        for j, (p, q) in enumerate(src):
            if (p + 1, q) in index and p in C.differentials:
                blocks[(index[(p + 1, q)], j)] = C.d(p).matrix.kron(Matrix.identity(A0, D.terms[q].ngens))
            if (p, q + 1) in index and q in D.differentials:
                b = Matrix.identity(A0, C.terms[p].ngens).kron(D.d(q).matrix)
                blocks[(index[(p, q + 1)], j)] = b.scale(-1) if p % 2 else b
        mat = _assemble(A0, [P.ngens for P in parts[n + 1]], [P.ngens for P in parts[n]], blocks)
        diffs[n] = ComoduleMap(terms[n], terms[n + 1], mat)
    T = Complex(H, terms, diffs)
    T.summands = summands
    T.parts = parts
    return T


def tensor_symmetry(C, D, CD=None, DC=None):
    """x⊗y ↦ (-1)^{pq} y⊗x as a chain map C⊗D → D⊗C."""
    CD = CD or tensor_complexes(C, D, underived=True)
    DC = DC or tensor_complexes(D, C, underived=True)
    A0 = C.algebroid.A0
    comps = {}
    for n, src in CD.summands.items():
        tgt = DC.summands[n]
        index = {qp: i for i, qp in enumerate(tgt)}
        blocks = {}
        for j, (p, q) in enumerate(src):
            s = symmetry(C.terms[p], D.terms[q]).forward.matrix
            blocks[(index[(q, p)], j)] = s.scale(-1) if (p * q) % 2 else s
        mat = _assemble(A0, [P.ngens for P in DC.parts[n]], [P.ngens for P in CD.parts[n]], blocks)
        comps[n] = ComoduleMap(CD.terms[n], DC.terms[n], mat)
    return ChainMap(CD, DC, comps)


def shift_identification(C, D, r, s, left=None, right=None):
    """C[r] ⊗ D[s] → (C⊗D)[r+s], x⊗y ↦ (-1)^{p s} x⊗y with p the degree of x in C[r]."""
    Cr, Ds = shift(C, r), shift(D, s)
    left = left or tensor_complexes(Cr, Ds, underived=True)
    CD = tensor_complexes(C, D, underived=True)
    right = right or shift(CD, r + s)
    right.summands = {n - r - s: v for n, v in CD.summands.items()}
    right.parts = {n - r - s: v for n, v in CD.parts.items()}
    A0 = C.algebroid.A0
    comps = {}
    for n, src in left.summands.items():
        tgt = right.summands[n]
        index = {pq: i for i, pq in enumerate(tgt)}
        blocks = {}
        for j, (p, q) in enumerate(src):
            size = left.parts[n][j].ngens
            b = Matrix.identity(A0, size)
            blocks[(index[(p + r, q + s)], j)] = b.scale(-1) if (p * s) % 2 else b
        mat = _assemble(A0, [P.ngens for P in right.parts[n]], [P.ngens for P in left.parts[n]], blocks)
        comps[n] = ComoduleMap(left.terms[n], right.terms[n], mat)
    return ChainMap(left, right, comps)


def shifted_chain_map(f, r, source=None, target=None):
    """f[r] : C[r] → D[r]."""
    source = source or shift(f.source, r)
    target = target or shift(f.target, r)
    return ChainMap(source, target, {n - r: g for n, g in f.components.items()})


def sign_rule_report(C, D, r, s):
    """Compare the symmetry on shifted complexes with the shifted symmetry.

    The composite ι_{D,C} ∘ τ_{C[r],D[s]} ∘ ι_{C,D}^{-1} must equal (-1)^{rs} τ_{C,D}[r+s].
    """
    Cr, Ds = shift(C, r), shift(D, s)
    CrDs = tensor_complexes(Cr, Ds, underived=True)
    DsCr = tensor_complexes(Ds, Cr, underived=True)
    CD = tensor_complexes(C, D, underived=True)
    DC = tensor_complexes(D, C, underived=True)
    iota_cd = shift_identification(C, D, r, s, left=CrDs)
    iota_dc = shift_identification(D, C, s, r, left=DsCr)
    tau = tensor_symmetry(Cr, Ds, CrDs, DsCr)
    tau_shift = shifted_chain_map(tensor_symmetry(C, D, CD, DC), r + s, iota_cd.target, iota_dc.target)
    inv_cd = ChainMap(iota_cd.target, iota_cd.source,
                      {n: ComoduleMap(g.target, g.source, g.matrix) for n, g in iota_cd.components.items()})
    composite = iota_dc @ tau @ inv_cd
    sign = -1 if (r * s) % 2 else 1
    rep = Report(f"sign rule r={r} s={s}")
    rep.add("identification is a chain map", iota_cd.check().passed and iota_dc.check().passed)
    rep.add("symmetry is a chain map", tau.check().passed)
    rep.add("composite = (-1)^{rs} shifted symmetry", composite == tau_shift.scale(sign))
    return rep, composite, sign


def hom_complexes(C, D):
    """Hom^n = ⊕_p chom(C^p, D^{p+n}) with d(f) = d_D∘f - (-1)^n f∘d_C."""
    H = C.algebroid
    H.require_free_finite("hom complexes")
    A0 = H.A0
    summands, parts, terms = {}, {}, {}
    for p in C.degrees():
        for q in D.degrees():
            summands.setdefault(q - p, []).append(p)
    for n in summands:
        summands[n].sort()
        parts[n] = [chom(C.terms[p], D.terms[p + n]).comodule for p in summands[n]]
        terms[n] = direct_sum(*parts[n])
    diffs = {}
    for n in summands:
        if n + 1 not in summands:
            continue
        index = {p: i for i, p in enumerate(summands[n + 1])}
        blocks = {}
        sign = -1 if n % 2 else 1
        for j, p in enumerate(summands[n]):
            if p in index and (p + n) in D.differentials:
                blocks[(index[p], j)] = chom_post(C.terms[p], D.d(p + n)).matrix
            if (p - 1) in index and (p - 1) in C.differentials:
                m = chom_pre(C.d(p - 1), D.terms[p + n]).matrix
                blocks[(index[p - 1], j)] = m.scale(-sign)
        mat = _assemble(A0, [P.ngens for P in parts[n + 1]], [P.ngens for P in parts[n]], blocks)
        diffs[n] = ComoduleMap(terms[n], terms[n + 1], mat)
    T = Complex(H, terms, diffs)
    T.summands = summands
    T.parts = parts
    return T


def mapping_cone(f):
    C, D = f.source, f.target
    H = C.algebroid
    A0 = H.A0
    degrees = sorted({n - 1 for n in C.degrees()} | set(D.degrees()))
    terms, layout = {}, {}
    for n in degrees:
        pieces = [C.term(n + 1), D.term(n)]
        layout[n] = pieces
        terms[n] = direct_sum(*pieces)
    diffs = {}
    for n in degrees:
        if n + 1 not in terms:
            continue
        blocks = {(0, 0): C.d(n + 1).matrix.scale(-1), (1, 0): f.at(n + 1).matrix, (1, 1): D.d(n).matrix}
        mat = _assemble(A0, [P.ngens for P in layout[n + 1]], [P.ngens for P in layout[n]], blocks)
        diffs[n] = ComoduleMap(terms[n], terms[n + 1], mat)
    return Complex(H, terms, diffs)


def is_quasi_iso(f):
    if not f.check().passed:
        raise ValueError("not a chain map")
    return is_acyclic(mapping_cone(f))


# cobar resolution

def monad_power(H, f, i):
    """T^i(f) for a comodule map f, where T = extend∘forget."""
    for _ in range(i):
        f = ext_map(H, f.module_map, source=extend(H, f.source.module), target=extend(H, f.target.module))
    return f


@dataclass
class CobarData:
    source: object
    depth: int
    terms: list
    differentials: list
    augmentation: ComoduleMap

    @property
    def complex(self):
        return Complex(self.source.algebroid, dict(enumerate(self.terms)), dict(enumerate(self.differentials)),
                       check=False, name=f"cobar({self.source})")

    def augmented_complex(self):
        terms = {-1: self.source, **dict(enumerate(self.terms))}
        diffs = {-1: self.augmentation, **dict(enumerate(self.differentials))}
        return Complex(self.source.algebroid, terms, diffs, check=False)

    def report(self):
        rep = Report(f"cobar resolution of {self.source}")
        C = self.augmented_complex()
        rep.extend(C.check())
        for n in range(-1, self.depth):
            rep.add(f"exact at {n}", homology(C, n).module.is_zero())
        return rep


def cobar(M, depth):
    """Terms T^{s+1}M for 0 ≤ s ≤ depth with d^s = Σ_i (-1)^i T^i(ψ_{T^{s+1-i}M})."""
    H = M.algebroid
    H.require_free_finite("the cobar resolution")
    powers = [M]
    for _ in range(depth + 1):
        powers.append(extend(H, powers[-1].module))
    units = [coaction_map(X) for X in powers[:depth + 1]]
    diffs = []
    for s in range(depth):
        d = None
        for i in range(s + 2):
            term = monad_power(H, units[s + 1 - i], i)
            if i % 2:
                term = -term
            d = term if d is None else d + term
        diffs.append(ComoduleMap(powers[s + 1], powers[s + 2], d.matrix))
    return CobarData(M, depth, powers[1:depth + 2], diffs, units[0])


def _field_matrix(f, source, target):
    """k-matrix of an A0-linear map between k-finite modules."""
    cols = [target.kcoords(f(v)) for v in source.kbasis_vectors()]
    return linalg.transpose(cols, len(target.kbasis())) if cols else [[] for _ in range(len(target.kbasis()))]


def collapsed_cobar(M, depth):
    """The complex U T^s M (0 ≤ s ≤ depth) computing Ext(A0, M), as trivial comodules."""
    H = M.algebroid
    if not H.is_hopf_algebra:
        raise CapabilityError("collapsed cobar complexes need A0 to be the base field")
    data = cobar(M, depth)
    U = unit(H)
    modules = [M.module] + [T.module for T in data.terms[:depth]]
    terms = {s: trivial(H, Y) for s, Y in enumerate(modules)}
    diffs = {}
    for s in range(depth):
        Y = modules[s]
        d = data.differentials[s]
        cols = []
        for j in range(Y.ngens):
            g = ModuleMap(FPModule.free(H.A0, 1), Y, Matrix.from_columns(H.A0, [Y.basis_vector(j)], Y.ngens))
            cols.append(forward(d @ back(U, g, target=data.terms[s])).matrix.column(0))
        diffs[s] = ComoduleMap(terms[s], terms[s + 1], Matrix.from_columns(H.A0, cols, modules[s + 1].ngens))
    return Complex(H, terms, diffs, name=f"collapsed cobar({M})")


def ext_dims(M, depth):
    """dim Ext^s(A0, M) for 0 ≤ s ≤ depth, from the collapsed cobar complex."""
    H = M.algebroid
    field = H.field
    C = collapsed_cobar(M, depth + 1)
    dims = [C.term(s).module.kdim() for s in range(depth + 2)]
    if any(d is None for d in dims):
        raise CapabilityError("Ext dimensions need finite-dimensional terms")
    ranks = []
    for s in range(depth + 1):
        m = _field_matrix(C.d(s).module_map, C.term(s).module, C.term(s + 1).module)
        ranks.append(linalg.rank(field, m, dims[s]) if dims[s] and dims[s + 1] else 0)
    return [dims[s] - ranks[s] - (ranks[s - 1] if s else 0) for s in range(depth + 1)]


__all__ = [
    "Complex", "ChainMap", "CobarData", "single", "identity_chain_map", "homology", "homology_dims",
    "is_acyclic", "shift", "tensor_complexes", "tensor_symmetry", "shift_identification",
    "shifted_chain_map", "sign_rule_report", "hom_complexes", "mapping_cone", "is_quasi_iso",
    "monad_power", "cobar", "collapsed_cobar", "ext_dims",
]
