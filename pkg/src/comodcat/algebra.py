"""Finitely presented commutative algebras k[x_1..x_n]/I over QQ or GF(p)."""

from functools import cached_property
from fractions import Fraction

from . import linalg, polynomial as P
from .field import Field
from .groebner import GroebnerBasis, TermOrder
from .report import Report


def _ideal_order(order):
    return TermOrder(order)


class PresentedAlgebra:
    """Quotient of a polynomial ring by finitely many relations.

    Elements are kept in normal form with respect to the reduced Groebner
    basis of the relation ideal, so equality is structural.
    """

    def __init__(self, field, variables=(), relations=(), order=None, name=None):
        if not isinstance(field, Field):
            field = Field(field)
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.nvars = len(self.variables)
        self.order = order or P.DEGREVLEX
        self.name = name
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = P.parse_poly(field, self.variables, r)
            elif isinstance(r, AlgebraElement):
                r = r.poly
            if r:
                rels.append(dict(r))
        self.relations = tuple(rels)
        self._elem_cache = {}

    @cached_property
    def _gb(self):
        gens = [{(0, e): c for e, c in r.items()} for r in self.relations]
        return GroebnerBasis(gens, self.field, _ideal_order(self.order), ideal=True)

    @property
    def groebner_basis(self):
        """Reduced Groebner basis of the relation ideal, as polynomials."""
        return [{e: c for (_, e), c in v.items()} for v in self._gb.vectors]

    def reduce(self, poly):
        if not self.relations or not poly:
            return dict(poly)
        vec = {(0, e): c for e, c in poly.items()}
        return {e: c for (_, e), c in self._gb.reduce(vec).items()}

    # element construction

    def __call__(self, value=0):
        if isinstance(value, AlgebraElement):
            if value.parent is self:
                return value
            raise TypeError(f"element of {value.parent} is not in {self}")
        if isinstance(value, str):
            poly = P.parse_poly(self.field, self.variables, value)
        elif isinstance(value, dict):
            poly = {e: self.field(c) for e, c in value.items() if self.field(c)}
        elif isinstance(value, (int, Fraction)):
            poly = P.constant(self.field, value, self.nvars)
        else:
            raise TypeError(f"cannot coerce {value!r} into {self}")
        return AlgebraElement(self, self.reduce(poly))

    def element(self, poly):
        """Wrap a polynomial already known to be in normal form."""
        return AlgebraElement(self, poly)

    @cached_property
    def zero(self):
        return AlgebraElement(self, {})

    @cached_property
    def one(self):
        return self(1)

    def gen(self, i):
        if isinstance(i, str):
            i = self.variables.index(i)
        return self(P.variable(self.field, i, self.nvars))

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    @property
    def is_base_field(self):
        return self.nvars == 0

    def standard_monomials(self):
        """Exponents of a k-basis of the algebra, or ``None`` if infinite."""
        leads = [lt[1] for lt in self._gb.leading_terms] if self.relations else []
        return staircase(leads, self.nvars, self.order)

    def dimension(self):
        s = self.standard_monomials()
        return None if s is None else len(s)

    def format(self, poly):
        return P.format_poly(self.field, self.variables, poly, self.order)

    def __repr__(self):
        if self.name:
            return self.name
        rel = ", ".join(self.format(r) for r in self.relations)
        return f"{self.field}[{', '.join(self.variables)}]/({rel})"


def staircase(leads, nvars, order):
    """Standard monomials avoiding the monomial ideal generated by ``leads``."""
    if any(not any(e) for e in leads):
        return []
    for i in range(nvars):
        if not any(e[i] > 0 and sum(e) == e[i] for e in leads):
            return None
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(nvars):
                f = list(e)
                f[i] += 1
                f = tuple(f)
                if f in seen or any(P.divides(l, f) for l in leads):
                    continue
                seen.add(f)
                nxt.append(f)
        frontier = nxt
    return sorted(seen, key=order.key)


class AlgebraElement:
    __slots__ = ("parent", "poly", "_hash")

    def __init__(self, parent, poly):
        self.parent = parent
        self.poly = poly
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.parent is not self.parent:
                raise TypeError(f"mixing elements of {self.parent} and {other.parent}")
            return other
        return self.parent(other)

    def __add__(self, other):
        other = self._coerce(other)
        return AlgebraElement(self.parent, P.add(self.parent.field, self.poly, other.poly))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return AlgebraElement(self.parent, P.add(self.parent.field, self.poly, other.poly, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return AlgebraElement(self.parent, P.scale(self.parent.field, self.poly, -1))

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.poly or not other.poly:
            return self.parent.zero
        prod = P.mul(self.parent.field, self.poly, other.poly)
        return AlgebraElement(self.parent, self.parent.reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = self.parent.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                other = self.parent(other)
            except (TypeError, ValueError):
                return NotImplemented
        return other.parent is self.parent and other.poly == self.poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(P.poly_key(self.poly))
        return self._hash

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return not self.poly

    def constant_coefficient(self):
        return self.poly.get((0,) * self.parent.nvars, self.parent.field.zero)

    def is_constant(self):
        return all(not any(e) for e in self.poly)

    def __repr__(self):
        return self.parent.format(self.poly)


class AlgebraMap:
    """k-algebra homomorphism determined by the images of the source variables."""

    def __init__(self, source, target, images, name=None):
        self.source = source
        self.target = target
        if isinstance(images, dict):
            images = [images.get(v, v) for v in source.variables]
        images = list(images)
        if len(images) != source.nvars:
            raise ValueError(f"expected {source.nvars} images, got {len(images)}")
        self.images = tuple(target(i) for i in images)
        self.name = name
        self._powers = [{0: target.one, 1: img} for img in self.images]
        self._cache = {}

    def _power(self, i, k):
        table = self._powers[i]
        if k not in table:
            table[k] = self._power(i, k // 2) * self._power(i, k - k // 2)
        return table[k]

    def apply_poly(self, poly):
        tgt = self.target
        out = tgt.zero
        for e, c in poly.items():
            term = tgt(c)
            for i, k in enumerate(e):
                if k:
                    term = term * self._power(i, k)
            out = out + term
        return out

    def __call__(self, x):
        if isinstance(x, Matrix):
            return x.map(self)
        if not isinstance(x, AlgebraElement):
            x = self.source(x)
        key = P.poly_key(x.poly)
        hit = self._cache.get(key)
        if hit is None:
            hit = self.apply_poly(x.poly)
            self._cache[key] = hit
        return hit

    def compose(self, other):
        """``self ∘ other``."""
        return AlgebraMap(other.source, self.target, [self(img) for img in other.images])

    def __eq__(self, other):
        return (isinstance(other, AlgebraMap) and other.source is self.source
                and other.target is self.target and other.images == self.images)

    __hash__ = object.__hash__

    def __repr__(self):
        pairs = ", ".join(f"{v} -> {img}" for v, img in zip(self.source.variables, self.images))
        return f"AlgebraMap({pairs})"


def identity_map(A):
    return AlgebraMap(A, A, A.gens)


def check_algebra_map(f):
    """Report whether every source relation maps to zero."""
    rep = Report(f"algebra map {f.name or ''}".strip())
    if f.source.field != f.target.field:
        rep.add("base field", False, f"{f.source.field} vs {f.target.field}")
        return rep
    for r in f.source.relations:
        img = f.apply_poly(r)
        rep.add(f"relation {f.source.format(r)}", img.is_zero(),
                None if img.is_zero() else f"maps to {img}")
    if not f.source.relations:
        rep.add("no relations", True)
    return rep


def groebner_basis(field, variables, relations, order=None):
    """Reduced Groebner basis of the ideal generated by ``relations``."""
    return PresentedAlgebra(field, variables, relations, order).groebner_basis


def normal_form(poly, A):
    if isinstance(poly, str):
        return A(poly)
    return A(dict(poly))


def s_polynomial_check(A):
    """True iff every S-polynomial of A's basis reduces to zero."""
    gb = A.groebner_basis
    order = A.order
    field = A.field
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            f, g = gb[i], gb[j]
            lf, lg = P.leading_exponent(f, order), P.leading_exponent(g, order)
            lcm = P.monomial_lcm(lf, lg)
            s = P.add(field,
                      P.mul(field, P.scale(field, f, field.inv(f[lf])), {P.monomial_div(lcm, lf): field.one}),
                      P.mul(field, P.scale(field, g, field.inv(g[lg])), {P.monomial_div(lcm, lg): field.one}),
                      -1)
            if A.reduce(s):
                return False
    return True


class Matrix:
    """Dense matrix of :class:`AlgebraElement` over a single algebra."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows, ncols=None):
        self.ring = ring
        self.rows = [[x if type(x) is AlgebraElement and x.parent is ring else ring(x) for x in row]
                     for row in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        m = cls.zeros(ring, n, n)
        for i in range(n):
            m.rows[i][i] = ring.one
        return m

    @classmethod
    def from_columns(cls, ring, columns, nrows):
        columns = list(columns)
        rows = [[col[i] for col in columns] for i in range(nrows)]
        return cls(ring, rows, len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [row[j] for row in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @classmethod
    def _wrap(cls, ring, rows, ncols):
        """Trusted constructor: ``rows`` already hold elements of ``ring``."""
        m = cls.__new__(cls)
        m.ring, m.rows, m.nrows, m.ncols = ring, rows, len(rows), ncols
        return m

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ring = self.ring
        if not ring.nvars:
            return self._matmul_scalar(other)
        field, reduce = ring.field, ring.reduce
        out = []
        for row in self.rows:
            nz = [(k, a.poly) for k, a in enumerate(row) if a.poly]
            new = []
            for j in range(other.ncols):
                acc = {}
                for k, a in nz:
                    b = other.rows[k][j].poly
                    if b:
                        acc = P.add(field, acc, P.mul(field, a, b))
                new.append(AlgebraElement(ring, reduce(acc) if acc else {}))
            out.append(new)
        return Matrix._wrap(ring, out, other.ncols)

    def _matmul_scalar(self, other):
        """Product over the base field, where every polynomial is a constant."""
        ring = self.ring
        norm, unit = ring.field.norm, ()
        cols = [[x.poly.get(unit, 0) for x in r] for r in other.rows]
        out = []
        for row in self.rows:
            nz = [(k, a.poly[unit]) for k, a in enumerate(row) if a.poly]
            new = []
            for j in range(other.ncols):
                c = norm(sum(a * cols[k][j] for k, a in nz))
                new.append(AlgebraElement(ring, {unit: c} if c else {}))
            out.append(new)
        return Matrix._wrap(ring, out, other.ncols)

    def apply(self, vec):
        ring = self.ring
        field, reduce = ring.field, ring.reduce
        vec = [v.poly for v in vec]
        out = []
        for row in self.rows:
            acc = {}
            for a, b in zip(row, vec):
                if a.poly and b:
                    acc = P.add(field, acc, P.mul(field, a.poly, b))
            out.append(AlgebraElement(ring, reduce(acc) if acc else {}))
        return out

    def __add__(self, other):
        return Matrix._wrap(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        return Matrix._wrap(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix._wrap(self.ring, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        c = self.ring(c)
        return Matrix._wrap(self.ring, [[c * a for a in r] for r in self.rows], self.ncols)

    def map(self, f, ring=None):
        ring = ring or getattr(f, "target", self.ring)
        return Matrix(ring, [[f(a) for a in r] for r in self.rows], self.ncols)

    def transpose(self):
        return Matrix._wrap(self.ring, [self.column(j) for j in range(self.ncols)], self.nrows)

    def kron(self, other):
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([a * b for a in r for b in s])
        return Matrix(self.ring, rows, self.ncols * other.ncols)

    def hstack(self, other):
        return Matrix(self.ring, [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other):
        return Matrix(self.ring, self.rows + other.rows, self.ncols)

    def select(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else list(cols)
        return Matrix._wrap(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self):
        return all(not a.poly for r in self.rows for a in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)))

    __hash__ = None

    def __repr__(self):
        return "[" + "; ".join(", ".join(map(str, r)) for r in self.rows) + "]"


def block_diagonal(ring, blocks):
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    out = Matrix.zeros(ring, nr, nc)
    i = j = 0
    for b in blocks:
        for r in range(b.nrows):
            out.rows[i + r][j:j + b.ncols] = b.rows[r]
        i += b.nrows
        j += b.ncols
    return out


def _scalar(x):
    return x.poly.get((), x.parent.field.zero)


def _to_vec(vec, offset=0):
    return {(offset + p, e): c for p, el in enumerate(vec) for e, c in el.poly.items()}


class Submodule:
    """Submodule of A^rank spanned by ``columns``, taken modulo ``relations``.

    Over A = k[x]/I the computation lifts to k[x]^rank with the generators
    of I added at every position.  Cofactors for ``columns`` are tracked in
    an eliminated block, which yields both lifts and syzygies.
    """

    def __init__(self, ring, rank, columns=(), relations=()):
        self.ring = ring
        self.rank = rank
        self.columns = [list(c) for c in columns]
        self.relations = [list(r) for r in relations]

    def _ideal_vectors(self):
        out = []
        for g in self.ring.groebner_basis if self.ring.relations else ():
            for p in range(self.rank):
                out.append({(p, e): c for e, c in g.items()})
        return out

    @cached_property
    def _plain(self):
        gens = [_to_vec(c) for c in self.columns + self.relations]
        gens += self._ideal_vectors()
        return GroebnerBasis([g for g in gens if g], self.ring.field, TermOrder(self.ring.order))

    @cached_property
    def _tracked(self):
        n = self.rank
        gens = []
        for j, c in enumerate(self.columns):
            v = _to_vec(c)
            v[(n + j, (0,) * self.ring.nvars)] = self.ring.field.one
            gens.append(v)
        gens += [_to_vec(r) for r in self.relations]
        gens += self._ideal_vectors()
        return GroebnerBasis([g for g in gens if g], self.ring.field, TermOrder(self.ring.order, split=n))

    def _from_vec(self, vec, lo, hi):
        out = [dict() for _ in range(hi - lo)]
        for (p, e), c in vec.items():
            if lo <= p < hi:
                out[p - lo][e] = c
        return [self.ring(d) for d in out]

    def reduce_terms(self, vec):
        """Normal form as a raw term dictionary."""
        return self._plain.reduce(_to_vec(vec))

    def reduce(self, vec):
        return self._from_vec(self.reduce_terms(vec), 0, self.rank)

    def contains(self, vec):
        return not self.reduce_terms(vec)

    @cached_property
    def _elimination(self):
        """Over a field: rows of a transform T with T·[columns relations] in reduced echelon form."""
        field, n = self.ring.field, self.rank
        gens = self.columns + self.relations
        width = len(gens)
        aug = [[_scalar(g[i]) for g in gens] + [field.one if i == j else field.zero for j in range(n)]
               for i in range(n)]
        red, pivots = linalg.rref(field, aug, width + n)
        return [(p, [(i, a) for i, a in enumerate(row[width:]) if a]) for row, p in zip(red, pivots)], width

    def _field_lift(self, vec):
        field = self.ring.field
        rows, width = self._elimination
        v = [_scalar(x) for x in vec]
        w = [field.zero] * len(self.columns)
        for p, t in rows:
            y = field.norm(sum(a * v[i] for i, a in t))
            if p >= width:
                if y:
                    return None
            elif p < len(w):
                w[p] = y
        return [self.ring.element({(): c} if c else {}) for c in w]

    def lift(self, vec):
        """Coefficients ``w`` with ``sum w_j columns_j == vec`` modulo relations, or None."""
        if self.ring.nvars == 0 and not self.ring.relations:
            return self._field_lift(vec)
        n = self.rank
        r = self._tracked.reduce(_to_vec(vec))
        if any(p < n for p, _ in r):
            return None
        w = self._from_vec(r, n, n + len(self.columns))
        return [-x for x in w]

    def syzygies(self):
        """Generators of the relations among ``columns`` (as coefficient vectors)."""
        n = self.rank
        out = []
        for v in self._tracked.vectors:
            if all(p >= n for p, _ in v):
                w = self._from_vec(v, n, n + len(self.columns))
                if any(x.poly for x in w):
                    out.append(w)
        return out


def syzygies(M):
    """Matrix whose columns generate the kernel of ``v -> M v``."""
    sub = Submodule(M.ring, M.nrows, M.columns())
    cols = sub.syzygies()
    return Matrix.from_columns(M.ring, cols, M.ncols)
