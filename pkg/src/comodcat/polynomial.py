"""Sparse polynomials over a :class:`~comodcat.field.Field`.

A polynomial is a ``dict`` mapping exponent tuples to nonzero coefficients.
These helpers never mutate their arguments.
"""

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParseError


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order on exponent tuples.

    ``ranking`` lists variable indices from most to least significant
    (default: declaration order).  ``blocks`` splits the ranked variables
    into consecutive blocks compared lexicographically, giving an
    elimination order; each block uses ``kind`` internally.
    """

    kind: str = "degrevlex"
    ranking: tuple = None
    blocks: tuple = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exp):
        return _order_key(self, exp)


def _block_key(kind, e):
    if kind == "lex":
        return e
    return (sum(e),) + tuple(-x for x in reversed(e))


@lru_cache(maxsize=None)
def _order_key(order, exp):
    e = exp if order.ranking is None else tuple(exp[i] for i in order.ranking)
    if not order.blocks:
        return _block_key(order.kind, e)
    out, i = [], 0
    for size in order.blocks:
        out.append(_block_key(order.kind, e[i:i + size]))
        i += size
    return tuple(out)


DEGREVLEX = MonomialOrder()


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def add(field, f, g, scale=1):
    """Return ``f + scale*g``."""
    out = dict(f)
    for e, c in g.items():
        v = field.norm(out.get(e, 0) + scale * c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def mul(field, f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = monomial_mul(e1, e2)
            v = field.norm(out.get(e, 0) + c1 * c2)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def scale(field, f, c):
    c = field.norm(c)
    if not c:
        return {}
    return {e: field.norm(v * c) for e, v in f.items()}


def constant(field, c, nvars):
    c = field(c)
    return {(0,) * nvars: c} if c else {}


def variable(field, i, nvars):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): field.one}


def leading_exponent(f, order):
    return max(f, key=order.key)


def poly_key(f):
    """Hashable canonical form of a polynomial."""
    return frozenset(f.items())


# Parsing and formatting

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*^()/]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, field, variables, text):
        self.field = field
        self.index = {v: i for i, v in enumerate(variables)}
        self.n = len(variables)
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            return {}
        f = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return f

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        f = scale(self.field, self.term(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            s = 1 if self.take()[1] == "+" else -1
            f = add(self.field, f, self.term(), s)
        return f

    def term(self):
        f = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            f = mul(self.field, f, self.power())
        return f

    def power(self):
        f = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError(f"bad exponent in {self.text!r}")
            g = constant(self.field, 1, self.n)
            for _ in range(int(val)):
                g = mul(self.field, g, f)
            f = g
        return f

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return constant(self.field, self.field(val), self.n)
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r} in {self.text!r}")
            return variable(self.field, self.index[val], self.n)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return f
        if (kind, val) == ("op", "-"):
            return scale(self.field, self.atom(), -1)
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(field, variables, text):
    """Parse ``text`` such as ``"x^2*y - 3/2*x + 1"`` into a polynomial."""
    return _Parser(field, tuple(variables), str(text)).parse()


def format_poly(field, variables, f, order=DEGREVLEX):
    if not f:
        return "0"
    parts = []
    for e in sorted(f, key=order.key, reverse=True):
        c = f[e]
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k)
        neg = field.characteristic == 0 and c < 0
        a = field.format(-c if neg else c)
        if not mono:
            body = a
        elif a == "1":
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append(("-" if neg else "+", body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
