"""Independent ℤ-graded vector-space model used to cross-check comodules over ℚ[t, t⁻¹].

A comodule over the Hopf algebra ℚ[t, s]/(ts − 1) (t grouplike) is the same thing as a
finitely supported graded ℚ-vector space: ``ψ(v) = Σ_d t^d ⊗ v_d``.  This module computes
graded dimensions of tensor products, homs, invariants and Künneth-style tensor complexes
directly from degree data with sympy matrices, sharing no code with the comodule engine
beyond reading a coaction matrix.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .algebra import Matrix
from .comodule import Comodule, ComoduleMap, check_comodule, invariants
from .errors import CapabilityError
from .fpmodule import FPModule
from .report import Report


# the oracle side: plain graded spaces and complexes

@dataclass(frozen=True)
class GradedSpace:
    """Degree → dimension, zero entries dropped."""
    dims: tuple = ()

    @classmethod
    def of(cls, mapping):
        return cls(tuple(sorted((d, n) for d, n in mapping.items() if n)))

    def as_dict(self):
        return dict(self.dims)

    def total(self):
        return sum(n for _, n in self.dims)

    def degrees_list(self):
        """One degree per basis vector, ascending."""
        return [d for d, n in self.dims for _ in range(n)]


def tensor_spaces(a, b):
    out = {}
    for d1, n1 in a.dims:
        for d2, n2 in b.dims:
            out[d1 + d2] = out.get(d1 + d2, 0) + n1 * n2
    return GradedSpace.of(out)


def hom_spaces(a, b):
    """Graded hom: the degree-e piece maps V_d into W_{d+e}."""
    out = {}
    for d1, n1 in a.dims:
        for d2, n2 in b.dims:
            out[d2 - d1] = out.get(d2 - d1, 0) + n1 * n2
    return GradedSpace.of(out)


def invariant_dim(a):
    return a.as_dict().get(0, 0)


@dataclass
class GradedComplex:
    """Cochain complex of graded spaces; ``maps[n][e]`` is the degree-e block of d^n."""
    terms: dict
    maps: dict = field(default_factory=dict)

    def block(self, n, e):
        rows = self.terms.get(n + 1, GradedSpace()).as_dict().get(e, 0)
        cols = self.terms.get(n, GradedSpace()).as_dict().get(e, 0)
        m = self.maps.get(n, {}).get(e)
        return m if m is not None else sympy.zeros(rows, cols)

    def internal_degrees(self):
        return sorted({d for s in self.terms.values() for d, _ in s.dims})

    def homology(self, n):
        """H^n as a graded dimension dict."""
        out = {}
        for e in self.internal_degrees():
            dim = self.terms.get(n, GradedSpace()).as_dict().get(e, 0)
            if not dim:
                continue
            rank_out = self.block(n, e).rank() if dim else 0
            rank_in = self.block(n - 1, e).rank()
            h = dim - rank_out - rank_in
            if h:
                out[e] = h
        return out


def tensor_graded_complexes(C, D):
    """Total complex with ``d(x⊗y) = dx⊗y + (-1)^p x⊗dy``, assembled degree by degree."""
    terms, maps = {}, {}
    degs = lambda X: sorted(X.terms)
    internal = sorted({a + b for a in C.internal_degrees() for b in D.internal_degrees()})
    total_degrees = sorted({p + q for p in degs(C) for q in degs(D)})

    def pieces(n, e):
        """Ordered summands (p, q, a, b) of the degree-(n, e) part with their sizes."""
        out = []
        for p in degs(C):
            q = n - p
            if q not in D.terms:
                continue
            for a, na in C.terms[p].dims:
                nb = D.terms[q].as_dict().get(e - a, 0)
                if nb:
                    out.append((p, q, a, e - a, na, nb))
        return out

    for n in total_degrees:
        dims = {e: sum(na * nb for *_, na, nb in pieces(n, e)) for e in internal}
        terms[n] = GradedSpace.of(dims)
    for n in total_degrees:
        maps[n] = {}
        for e in internal:
            src, dst = pieces(n, e), pieces(n + 1, e)
            rows = sum(na * nb for *_, na, nb in dst)
            cols = sum(na * nb for *_, na, nb in src)
            M = sympy.zeros(rows, cols)
            col = 0
            for p, q, a, b, na, nb in src:
                row = 0
                for p2, q2, a2, b2, na2, nb2 in dst:
                    if (p2, q2, a2, b2) == (p + 1, q, a, b):
                        blk = sympy.kronecker_product(C.block(p, a), sympy.eye(nb))
                        M[row:row + blk.rows, col:col + blk.cols] = blk
                    elif (p2, q2, a2, b2) == (p, q + 1, a, b):
                        blk = (-1) ** p * sympy.kronecker_product(sympy.eye(na), D.block(q, b))
                        M[row:row + blk.rows, col:col + blk.cols] = blk
                    row += na2 * nb2
                col += na * nb
            maps[n][e] = M
    return GradedComplex(terms, maps)


# reading a comodule over ℚ[t, s]/(ts − 1) as a graded space

def _degree_parts(entry):
    """Split an A1 normal form into degree → coefficient (monomial t^a s^b has degree a − b)."""
    out = {}
    for (a, b), c in entry.items():
        out[a - b] = out.get(a - b, 0) + c
    return out


def graded_dims(M):
    """Graded dimensions of a comodule over the Laurent algebroid, via the degree projections of ψ."""
    module = M.module
    if module.kdim() is None:
        raise CapabilityError("graded reading needs a finite-dimensional comodule")
    basis = module.kbasis_vectors()
    projections = {}
    for j, v in enumerate(basis):
        for pos, entry in enumerate(M.psi(v)):
            for deg, c in _degree_parts(entry.poly).items():
                part = projections.setdefault(deg, [[0] * M.ngens for _ in basis])
                part[j][pos] += c
    dims = {}
    for deg, parts in projections.items():
        cols = [[_rational(x) for x in module.kcoords([M.A0(c) for c in vec])] for vec in parts]
        dims[deg] = sympy.Matrix(cols).rank()
    return GradedSpace.of(dims)


def _rational(x):
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def laurent_algebroid():
    """ℚ[t, s]/(ts − 1) with t grouplike."""
    from .hopf import hopf_algebra
    return hopf_algebra(0, ["t", "s"], ["t*s-1"], ["t_1*t_2", "s_1*s_2"], ["1", "1"], ["s", "t"],
                        name="F2")


def _monomial(H, d):
    t, s = H.A1.gens
    return t ** d if d >= 0 else s ** (-d)


def _random_invertible(rng, n):
    while True:
        P = sympy.Matrix(n, n, lambda i, j: rng.randint(-2, 2))
        if P.det() != 0:
            return P


def _frac(x):
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def realize(H, space, rng=None, name=None):
    """A comodule with the given graded dimensions, in a random basis when ``rng`` is given.

    Returns ``(comodule, P)`` where column j of P expresses generator j in the homogeneous basis.
    """
    degs = space.degrees_list()
    n = len(degs)
    P = _random_invertible(rng, n) if rng is not None and n else sympy.eye(n)
    Pinv = P.inv()
    A1 = H.A1
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = A1.zero
            for k, d in enumerate(degs):
                c = Pinv[i, k] * P[k, j]
                if c:
                    entry = entry + _monomial(H, d) * A1(_frac(c))
            row.append(entry)
        rows.append(row)
    M = Comodule(H, FPModule.free(H.A0, n), Matrix(A1, rows, n), name=name)
    return M, P


def realize_map(H, blocks, source, target, Psrc, Ptgt, src_space, tgt_space):
    """The comodule map with homogeneous blocks ``blocks[e]`` written in the realized bases."""
    sd, td = src_space.degrees_list(), tgt_space.degrees_list()
    big = sympy.zeros(len(td), len(sd))
    for e, blk in blocks.items():
        ri = [i for i, d in enumerate(td) if d == e]
        ci = [j for j, d in enumerate(sd) if d == e]
        for a, i in enumerate(ri):
            for b, j in enumerate(ci):
                big[i, j] = blk[a, b]
    mat = Ptgt.inv() * big * Psrc
    A0 = H.A0
    rows = [[A0(_frac(mat[i, j])) for j in range(mat.cols)] for i in range(mat.rows)]
    return ComoduleMap(source, target, Matrix(A0, rows, mat.cols))


# random instances

def random_space(rng, max_total=3, degree_range=(-2, 2)):
    n = rng.randint(0, max_total)
    dims = {}
    for _ in range(n):
        d = rng.randint(*degree_range)
        dims[d] = dims.get(d, 0) + 1
    return GradedSpace.of(dims)


def random_graded_complex(rng, max_total=2, degree_range=(-1, 1)):
    """A two-term complex C^0 → C^1 with random homogeneous blocks."""
    a = random_space(rng, max_total, degree_range)
    b = random_space(rng, max_total, degree_range)
    bd = b.as_dict()
    maps = {0: {e: sympy.Matrix(bd.get(e, 0), n, lambda i, j: rng.randint(-1, 1))
                for e, n in a.dims if bd.get(e, 0)}}
    return GradedComplex({0: a, 1: b}, maps)


def realize_complex(H, GC, rng):
    from .complexes import Complex
    terms, bases = {}, {}
    for n, space in GC.terms.items():
        terms[n], bases[n] = realize(H, space, rng)
    diffs = {}
    for n in GC.maps:
        if n + 1 in terms:
            diffs[n] = realize_map(H, GC.maps[n], terms[n], terms[n + 1], bases[n], bases[n + 1],
                                   GC.terms[n], GC.terms[n + 1])
    return Complex(H, terms, diffs)


def compare_instance(H, rng):
    """One random comparison of every comodule-level operation against the graded model."""
    from .complexes import homology, tensor_complexes
    from .monoidal import chom, ctensor

    rep = Report("graded oracle instance")
    a, b = random_space(rng), random_space(rng)
    M, _ = realize(H, a, rng, name="M")
    N, _ = realize(H, b, rng, name="N")
    rep.add("realized comodules valid", check_comodule(M).passed and check_comodule(N).passed)
    rep.add("graded reading", graded_dims(M) == a and graded_dims(N) == b,
            f"{graded_dims(M).as_dict()} vs {a.as_dict()}")
    T = ctensor(M, N)
    got, want = graded_dims(T), tensor_spaces(a, b)
    rep.add("ctensor", check_comodule(T).passed and got == want, f"{got.as_dict()} vs {want.as_dict()}")
    Hm = chom(M, N, method="hopf").comodule
    got, want = graded_dims(Hm), hom_spaces(a, b)
    rep.add("chom", check_comodule(Hm).passed and got == want, f"{got.as_dict()} vs {want.as_dict()}")
    rep.add("invariants", invariants(N).dim == invariant_dim(b),
            f"{invariants(N).dim} vs {invariant_dim(b)}")
    GC, GD = random_graded_complex(rng), random_graded_complex(rng)
    C, D = realize_complex(H, GC, rng), realize_complex(H, GD, rng)
    TC = tensor_complexes(C, D)
    oracle = tensor_graded_complexes(GC, GD)
    agree = True
    witness = None
    for n in range(-1, 4):
        got = graded_dims(homology(TC, n)).as_dict()
        want = oracle.homology(n)
        if got != want:
            agree, witness = False, f"H^{n}: {got} vs {want}"
            break
    rep.add("tensor_complexes homology", agree, witness)
    return rep


def oracle_suite(count=100, seed=0, H=None):
    """Run ``count`` random comparisons; returns (report, per-instance reports)."""
    H = H or laurent_algebroid()
    rng = random.Random(seed)
    instances = [compare_instance(H, rng) for _ in range(count)]
    summary = Report(f"graded oracle suite (seed {seed})")
    for name in [c.name for c in instances[0].checks] if instances else []:
        bad = [i for i, r in enumerate(instances) if not r[name].passed]
        summary.add(f"{name} on {count} instances", not bad,
                    None if not bad else f"instance {bad[0]}: {instances[bad[0]][name].witness}")
    return summary, instances
