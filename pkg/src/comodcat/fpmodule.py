"""Finitely presented modules over a :class:`PresentedAlgebra` and maps between them.

A module is given by ``ngens`` generators and a relation matrix whose
columns are the relations (``ngens`` rows).  Vectors are lists of algebra
elements indexed by generators.  A map is a matrix with one column per
source generator, expressed in target generators.
"""

from functools import cached_property

from .algebra import Matrix, Submodule, staircase
from .errors import IntegrityError


class FPModule:
    def __init__(self, ring, ngens, relations=None, name=None):
        self.ring = ring
        self.ngens = ngens
        cols = [] if relations is None else relations.columns()
        cols = [[ring(x) for x in c] for c in cols]
        cols = [c for c in cols if any(x.poly for x in c)]
        self.relations = Matrix.from_columns(ring, cols, ngens)
        self.name = name

    @classmethod
    def free(cls, ring, n, name=None):
        return cls(ring, n, None, name)

    @classmethod
    def zero(cls, ring):
        return cls(ring, 0)

    @classmethod
    def quotient(cls, ring, ngens, relation_columns, name=None):
        return cls(ring, ngens, Matrix.from_columns(ring, relation_columns, ngens), name)

    @cached_property
    def _sub(self):
        return Submodule(self.ring, self.ngens, self.relations.columns())

    @property
    def is_free_presentation(self):
        return self.relations.ncols == 0

    def vector(self, coords):
        v = [self.ring(x) for x in coords]
        if len(v) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(v)}")
        return v

    def basis_vector(self, i):
        v = [self.ring.zero] * self.ngens
        v[i] = self.ring.one
        return v

    def zero_vector(self):
        return [self.ring.zero] * self.ngens

    def reduce(self, vec):
        if self.is_free_presentation and not self.ring.relations:
            return list(vec)
        return self._sub.reduce(vec)

    def is_zero_vector(self, vec):
        if not any(x.poly for x in vec):
            return True
        if self.is_free_presentation:
            return False
        return self._sub.contains(vec)

    def equal(self, v, w):
        return self.is_zero_vector([a - b for a, b in zip(v, w)])

    def is_zero(self):
        return all(self.is_zero_vector(self.basis_vector(i)) for i in range(self.ngens))

    def element(self, coords):
        return ModuleElement(self, self.vector(coords))

    # finite-dimensional view over the base field

    @cached_property
    def _kbasis(self):
        field_terms = []
        leads = {}
        for (pos, exp) in self._sub._plain.leading_terms if (self.relations.ncols or self.ring.relations) else []:
            leads.setdefault(pos, []).append(exp)
        for pos in range(self.ngens):
            st = staircase(leads.get(pos, []), self.ring.nvars, self.ring.order)
            if st is None:
                return None
            field_terms.extend((pos, e) for e in st)
        return field_terms

    def kbasis(self):
        """Standard terms (generator, monomial) forming a k-basis, or None if infinite."""
        return self._kbasis

    def kdim(self):
        b = self._kbasis
        return None if b is None else len(b)

    def kbasis_vectors(self):
        out = []
        for pos, e in self._kbasis:
            v = self.zero_vector()
            v[pos] = self.ring.element({e: self.ring.field.one})
            out.append(v)
        return out

    def kcoords(self, vec):
        """Coordinates of ``vec`` on :meth:`kbasis` over the base field."""
        basis = self._kbasis
        if basis is None:
            raise IntegrityError("module is not finite-dimensional over the base field")
        nf = self._sub.reduce_terms(vec) if (self.relations.ncols or self.ring.relations) else {
            (p, e): c for p, x in enumerate(vec) for e, c in x.poly.items()}
        zero = self.ring.field.zero
        return [nf.get(t, zero) for t in basis]

    def __repr__(self):
        if self.name:
            return self.name
        return f"FPModule({self.ngens} gens, {self.relations.ncols} rels over {self.ring})"


class ModuleElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        self.parent = parent
        self.coords = list(coords)

    def __add__(self, other):
        return ModuleElement(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return ModuleElement(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __rmul__(self, r):
        r = self.parent.ring(r)
        return ModuleElement(self.parent, [r * a for a in self.coords])

    def __eq__(self, other):
        return (isinstance(other, ModuleElement) and other.parent is self.parent
                and self.parent.equal(self.coords, other.coords))

    __hash__ = None

    def normal_form(self):
        return self.parent.reduce(self.coords)

    def __repr__(self):
        return f"({', '.join(map(str, self.coords))})"


class ModuleMap:
    def __init__(self, source, target, matrix):
        if isinstance(matrix, list):
            matrix = Matrix(source.ring, matrix, source.ngens)
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not fit {target.ngens}x{source.ngens}")
        self.source = source
        self.target = target
        self.matrix = matrix

    @property
    def ring(self):
        return self.source.ring

    @classmethod
    def identity(cls, M):
        return cls(M, M, Matrix.identity(M.ring, M.ngens))

    @classmethod
    def zero(cls, M, N):
        return cls(M, N, Matrix.zeros(M.ring, N.ngens, M.ngens))

    def __call__(self, vec):
        if isinstance(vec, ModuleElement):
            return ModuleElement(self.target, self.matrix.apply(vec.coords))
        return self.matrix.apply(vec)

    def __matmul__(self, other):
        """Composition ``self ∘ other``."""
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other):
        return ModuleMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other):
        return ModuleMap(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self):
        return ModuleMap(self.source, self.target, -self.matrix)

    def scale(self, c):
        return ModuleMap(self.source, self.target, self.matrix.scale(c))

    def __eq__(self, other):
        if not isinstance(other, ModuleMap) or other.matrix.shape != self.matrix.shape:
            return False
        diff = self.matrix - other.matrix
        return all(self.target.is_zero_vector(c) for c in diff.columns())

    __hash__ = None

    def is_zero(self):
        return all(self.target.is_zero_vector(c) for c in self.matrix.columns())

    def is_well_defined(self):
        images = self.matrix @ self.source.relations
        return all(self.target.is_zero_vector(c) for c in images.columns())

    def kernel(self):
        return kernel(self)

    def cokernel(self):
        return cokernel(self)

    def is_injective(self):
        K, _ = kernel(self)
        return K.is_zero()

    def is_surjective(self):
        C, _ = cokernel(self)
        return C.is_zero()

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()

    @cached_property
    def _image_sub(self):
        """Image plus target relations, for lifting along this map (matrices are never mutated)."""
        return Submodule(self.ring, self.target.ngens, self.matrix.columns(), self.target.relations.columns())

    def inverse(self):
        """Inverse of an isomorphism; raises IntegrityError otherwise."""
        sub = self._image_sub
        cols = []
        for i in range(self.target.ngens):
            w = sub.lift(self.target.basis_vector(i))
            if w is None:
                raise IntegrityError("map is not surjective")
            cols.append(w)
        inv = ModuleMap(self.target, self.source, Matrix.from_columns(self.ring, cols, self.source.ngens))
        if not (inv @ self == ModuleMap.identity(self.source)):
            raise IntegrityError("map is not injective")
        return inv

    def __repr__(self):
        return f"ModuleMap({self.source} -> {self.target}: {self.matrix})"


def lift_through(f, g):
    """Matrix ``h`` with ``g ∘ h == f`` (same source); None if f does not factor."""
    sub = g._image_sub
    cols = []
    for c in f.matrix.columns():
        w = sub.lift(c)
        if w is None:
            return None
        cols.append(w)
    return Matrix.from_columns(f.ring, cols, g.source.ngens)


def kernel(f):
    """Kernel of ``f`` as (module, inclusion)."""
    M, N, A = f.source, f.target, f.ring
    if N.ngens == 0 or f.matrix.is_zero():
        return M, ModuleMap.identity(M)
    sub = Submodule(A, N.ngens, f.matrix.columns(), N.relations.columns())
    gens = [c for c in sub.syzygies() if not M.is_zero_vector(c)]
    gens = [M.reduce(c) for c in gens]
    return _submodule(M, gens)


def _submodule(M, gens):
    """Present the submodule of M generated by ``gens`` (vectors in M's generators)."""
    A = M.ring
    s = len(gens)
    if s == 0:
        K = FPModule.zero(A)
        return K, ModuleMap(K, M, Matrix.zeros(A, M.ngens, 0))
    rel = Submodule(A, M.ngens, gens, M.relations.columns()).syzygies()
    K = FPModule(A, s, Matrix.from_columns(A, rel, s))
    inc = ModuleMap(K, M, Matrix.from_columns(A, gens, M.ngens))
    return K, inc


def image(f):
    gens = [f.target.reduce(c) for c in f.matrix.columns()]
    gens = [c for c in gens if any(x.poly for x in c)]
    return _submodule(f.target, gens)


def cokernel(f):
    N = f.target
    rels = N.relations.columns() + f.matrix.columns()
    C = FPModule.quotient(f.ring, N.ngens, rels)
    return C, ModuleMap(N, C, Matrix.identity(f.ring, N.ngens))


def direct_sum(*modules):
    A = modules[0].ring
    n = sum(M.ngens for M in modules)
    cols = []
    offset = 0
    for M in modules:
        for c in M.relations.columns():
            v = [A.zero] * n
            v[offset:offset + M.ngens] = c
            cols.append(v)
        offset += M.ngens
    return FPModule.quotient(A, n, cols)


def direct_sum_maps(maps, source=None, target=None):
    from .algebra import block_diagonal
    A = maps[0].ring
    source = source or direct_sum(*[f.source for f in maps])
    target = target or direct_sum(*[f.target for f in maps])
    return ModuleMap(source, target, block_diagonal(A, [f.matrix for f in maps]))


def tensor(M, N):
    """M ⊗_A N with generators ``(i, j) -> i * N.ngens + j``."""
    A = M.ring
    m, n = M.ngens, N.ngens
    cols = []
    for r in M.relations.columns():
        for j in range(n):
            v = [A.zero] * (m * n)
            for i in range(m):
                v[i * n + j] = r[i]
            cols.append(v)
    for i in range(m):
        for r in N.relations.columns():
            v = [A.zero] * (m * n)
            v[i * n:(i + 1) * n] = r
            cols.append(v)
    return FPModule.quotient(A, m * n, cols)


def tensor_maps(f, g, source=None, target=None):
    source = source or tensor(f.source, g.source)
    target = target or tensor(f.target, g.target)
    return ModuleMap(source, target, f.matrix.kron(g.matrix))


def base_change(phi, M):
    """B ⊗_A M along an algebra map ``phi: A -> B``."""
    return FPModule(phi.target, M.ngens, M.relations.map(phi))


def base_change_map(phi, f, source=None, target=None):
    source = source or base_change(phi, f.source)
    target = target or base_change(phi, f.target)
    return ModuleMap(source, target, f.matrix.map(phi))


class HomModule(FPModule):
    """Hom_A(M, N) presented as a submodule of N^m.

    Generator ``t`` is the map whose matrix is ``generator_matrices[t]``;
    the flattening of an n×m matrix is column-major.
    """

    _standard = False

    def __init__(self, M, N):
        A = M.ring
        self.hom_source = M
        self.hom_target = N
        m, n = M.ngens, N.ngens
        self.ambient = direct_sum(*([N] * m)) if m else FPModule.zero(A)
        if M.relations.ncols == 0 or n == 0:
            gens = [self.ambient.basis_vector(i) for i in range(m * n)]
            K = self.ambient
            self._standard = True
        else:
            k = M.relations.ncols
            target = direct_sum(*([N] * k))
            rows = []
            R = M.relations
            for q in range(k):
                for l in range(n):
                    row = [A.zero] * (m * n)
                    for j in range(m):
                        row[j * n + l] = R[j, q]
                    rows.append(row)
            f = ModuleMap(self.ambient, target, Matrix(A, rows, m * n))
            K, inc = kernel(f)
            gens = inc.matrix.columns()
        self.generator_vectors = gens
        super().__init__(A, K.ngens, K.relations)

    def _reshape(self, flat):
        n = self.hom_target.ngens
        m = self.hom_source.ngens
        return Matrix(self.ring, [[flat[j * n + l] for j in range(m)] for l in range(n)], m)

    @property
    def generator_matrices(self):
        return [self._reshape(v) for v in self.generator_vectors]

    @cached_property
    def generator_matrix(self):
        """Column t is the flattened matrix of generator t."""
        return Matrix.from_columns(self.ring, self.generator_vectors, self.hom_source.ngens * self.hom_target.ngens)

    def to_map(self, coords):
        flat = [self.ring.zero] * (self.hom_source.ngens * self.hom_target.ngens)
        for c, v in zip(coords, self.generator_vectors):
            if c.poly:
                flat = [a + c * b if b.poly else a for a, b in zip(flat, v)]
        return ModuleMap(self.hom_source, self.hom_target, self._reshape(flat))

    @cached_property
    def _lifter(self):
        return Submodule(self.ring, self.ambient.ngens, self.generator_vectors,
                         self.ambient.relations.columns())

    def from_map(self, f):
        flat = [x for c in f.matrix.columns() for x in c]
        if self._standard:
            return flat
        w = self._lifter.lift(flat)
        if w is None:
            raise IntegrityError("map is not a well-defined homomorphism")
        return w

    def evaluate(self, h, m):
        """Evaluation pairing Hom(M, N) x M -> N."""
        return self.to_map(h)(m)


def hom_module(M, N):
    return HomModule(M, N)


def hom_map(M, g, H1=None, H2=None):
    """Post-composition Hom(M, g): Hom(M, N) -> Hom(M, N')."""
    H1 = H1 or HomModule(M, g.source)
    H2 = H2 or HomModule(M, g.target)
    cols = [H2.from_map(g @ H1.to_map(H1.basis_vector(t))) for t in range(H1.ngens)]
    return ModuleMap(H1, H2, Matrix.from_columns(M.ring, cols, H2.ngens))


def projectivity_certificate(M):
    """A section of the canonical surjection A^n -> M, or None.

    A returned section certifies that M is projective.
    """
    A = M.ring
    n = M.ngens
    F = FPModule.free(A, n)
    pi = ModuleMap(F, M, Matrix.identity(A, n))
    H_MF = HomModule(M, F)
    H_MM = HomModule(M, M)
    post = hom_map(M, pi, H_MF, H_MM)
    target = H_MM.from_map(ModuleMap.identity(M))
    sub = Submodule(A, H_MM.ngens, post.matrix.columns(), H_MM.relations.columns())
    w = sub.lift(target)
    if w is None:
        return None
    s_coords = post.source.vector(w)
    section = H_MF.to_map(s_coords)
    if not (pi @ section == ModuleMap.identity(M)):
        raise IntegrityError("section check failed")
    return section
