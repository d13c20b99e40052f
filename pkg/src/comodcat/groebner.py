"""Buchberger's algorithm for submodules of free modules over k[x_1, ..., x_n].

A module vector is a ``dict`` mapping terms ``(position, exponent)`` to
nonzero coefficients; ideals are the rank-one case (position 0).  Pairs are
selected by the normal strategy with ties broken by index, so results are
reproducible.  Every reduction step is charged against a budget; exceeding
it raises :class:`~comodcat.errors.ResourceLimitError`.
"""

import heapq
from contextlib import contextmanager
from contextvars import ContextVar

from .errors import ResourceLimitError
from .polynomial import divides, monomial_div, monomial_lcm, monomial_mul

DEFAULT_BUDGET = 5_000_000

_budget = ContextVar("comodcat_budget", default=DEFAULT_BUDGET)


@contextmanager
def budget(max_reductions):
    """Set the reduction budget for computations started inside the block."""
    token = _budget.set(int(max_reductions))
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget():
    return _budget.get()


class Counter:
    __slots__ = ("limit", "used")

    def __init__(self, limit=None):
        self.limit = _budget.get() if limit is None else limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise ResourceLimitError(f"reduction budget of {self.limit} exceeded")


class TermOrder:
    """Order on module terms.

    Positions below ``split`` form the main block and dominate every term
    in the remaining (tracking) block.  Inside a block the order is
    term-over-position with lower positions larger.
    """

    def __init__(self, monomial_order, split=None):
        self.monomial_order = monomial_order
        self.split = split
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            pos, exp = term
            main = 1 if self.split is None or pos < self.split else 0
            k = (main, self.monomial_order.key(exp), -pos)
            self._cache[term] = k
        return k

    def leading(self, vec):
        return max(vec, key=self.key)


class _Basis:
    """Leading-term index used for reduction."""

    def __init__(self, field, order):
        self.field = field
        self.order = order
        self.elems = []
        self.by_pos = {}

    def add(self, vec):
        lt = self.order.leading(vec)
        lc = vec[lt]
        if lc != self.field.one:
            inv = self.field.inv(lc)
            vec = {t: self.field.norm(c * inv) for t, c in vec.items()}
        idx = len(self.elems)
        self.elems.append((lt, vec))
        self.by_pos.setdefault(lt[0], []).append(idx)
        return idx

    def find(self, term, skip=None):
        pos, exp = term
        for idx in self.by_pos.get(pos, ()):
            if idx == skip:
                continue
            lt = self.elems[idx][0]
            if divides(lt[1], exp):
                return idx
        return None


def _sub_multiple(field, p, q, shift, vec):
    """In place: ``p -= q * x^shift * vec``."""
    norm = field.norm
    for (pos, e), c in vec.items():
        t = (pos, monomial_mul(e, shift))
        v = norm(p.get(t, 0) - q * c)
        if v:
            p[t] = v
        else:
            p.pop(t, None)


def reduce_vector(vec, basis, counter, full=True, skip=None):
    """Normal form of ``vec`` modulo the elements of ``basis``."""
    field, order = basis.field, basis.order
    p = dict(vec)
    r = {}
    while p:
        t = order.leading(p)
        idx = basis.find(t, skip)
        if idx is None:
            if not full:
                r.update(p)
                break
            r[t] = p.pop(t)
            continue
        counter.tick()
        lt, g = basis.elems[idx]
        _sub_multiple(field, p, p[t], monomial_div(t[1], lt[1]), g)
    return r


def _spoly(field, a, b):
    (lta, va), (ltb, vb) = a, b
    lcm = monomial_lcm(lta[1], ltb[1])
    s = {}
    _sub_multiple(field, s, -1, monomial_div(lcm, lta[1]), va)
    _sub_multiple(field, s, 1, monomial_div(lcm, ltb[1]), vb)
    return s


def groebner(generators, field, order, ideal=False, counter=None):
    """Reduced Groebner basis of the submodule spanned by ``generators``.

    ``order`` is a :class:`TermOrder`.  With ``ideal=True`` (all vectors at
    position 0) Buchberger's coprime criterion is applied as well.
    Returns monic vectors sorted by leading term, largest first.
    """
    counter = counter or Counter()
    basis = _Basis(field, order)
    heap = []
    live = set()
    pending = set()

    def push_pairs(j):
        ltj = basis.elems[j][0]
        for i in sorted(live):
            lti = basis.elems[i][0]
            if lti[0] != ltj[0]:
                continue
            lcm = monomial_lcm(lti[1], ltj[1])
            if ideal and lcm == monomial_mul(lti[1], ltj[1]):
                continue
            heapq.heappush(heap, (order.key((ltj[0], lcm)), i, j))
            pending.add((i, j))

    def insert(vec):
        j = basis.add(vec)
        push_pairs(j)
        live.add(j)

    for g in generators:
        h = reduce_vector(g, basis, counter) if basis.elems else dict(g)
        if h:
            insert(h)

    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lti, ltj = basis.elems[i][0], basis.elems[j][0]
        lcm = monomial_lcm(lti[1], ltj[1])
        if _chain_redundant(basis, live, pending, i, j, ltj[0], lcm):
            continue
        h = reduce_vector(_spoly(field, basis.elems[i], basis.elems[j]), basis, counter)
        if h:
            insert(h)

    return _interreduce(field, order, [basis.elems[i][1] for i in sorted(live)], counter)


def _chain_redundant(basis, live, pending, i, j, pos, lcm):
    for k in live:
        if k in (i, j):
            continue
        ltk = basis.elems[k][0]
        if ltk[0] != pos or not divides(ltk[1], lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _interreduce(field, order, vecs, counter):
    items = [(order.leading(v), v) for v in vecs]
    keep = []
    for a, (lta, va) in enumerate(items):
        redundant = False
        for b, (ltb, _) in enumerate(items):
            if a == b or ltb[0] != lta[0] or not divides(ltb[1], lta[1]):
                continue
            if ltb != lta or b < a:
                redundant = True
                break
        if not redundant:
            keep.append(va)
    basis = _Basis(field, order)
    for v in keep:
        basis.add(v)
    out = []
    for idx, (lt, v) in enumerate(basis.elems):
        tail = {t: c for t, c in v.items() if t != lt}
        tail = reduce_vector(tail, basis, counter, skip=idx)
        tail[lt] = field.one
        out.append(tail)
    out.sort(key=lambda v: order.key(order.leading(v)), reverse=True)
    return out


class GroebnerBasis:
    """A computed basis with a reduction front end."""

    def __init__(self, generators, field, order, ideal=False):
        self.field = field
        self.order = order
        self.vectors = groebner(generators, field, order, ideal=ideal)
        self._basis = _Basis(field, order)
        for v in self.vectors:
            self._basis.add(v)

    @property
    def leading_terms(self):
        return [lt for lt, _ in self._basis.elems]

    def reduce(self, vec, counter=None):
        return reduce_vector(vec, self._basis, counter or Counter())
