"""Line-oriented definition files for algebroids, comodules and complexes.

Grammar (UTF-8, one item per line)::

    file    := line*
    line    := blank | comment | header | entry
    comment := '#' text
    header  := '[' KIND ( ' ' NAME )? ']'
    entry   := KEY '=' VALUE?
    KEY     := IDENT ( '[' INDEX ( ',' INDEX )* ']' )*
    INDEX   := '-'? DIGITS

Text after ``#`` is a comment.  KIND is one of ``field``, ``algebroid``,
``A0``, ``A1``, ``etaL``, ``etaR``, ``counit``, ``comult``, ``antipode``,
``flatness`` (all unnamed and at most once) or ``comodule``/``complex``
(named).  Section contents:

``[field]``       ``characteristic = 0`` or a prime.
``[algebroid]``   ``name = ...``, optional ``involutive = true|false``.
``[A0]``/``[A1]`` ``variables = x, y`` and repeatable ``relation = <poly>``.
maps              one ``VAR = <poly>`` per source variable.  ``etaL``/``etaR``
                  send A0 variables into A1, ``counit`` sends A1 into A0,
                  ``antipode`` sends A1 into A1, and ``comult`` sends A1 into
                  A1⊗A1 written with variables ``v_1``, ``v_2``.
``[flatness]``    ``level = free-finite|projective-certified|user-declared-flat``, optional ``rank``.
``[comodule N]``  ``generators = n``, repeatable ``relation = p_1, ..., p_n``
                  (a column over A0) and ``coaction[k,j] = <A1 poly>``,
                  meaning ψ(e_j) = Σ_k c_kj ⊗ e_k.  Omitted entries are zero.
``[complex N]``   ``term[n] = <comodule name>`` and ``d[n][i,j] = <A0 poly>``.

Polynomials use ``+ - * ^`` with rational or integer coefficients.  Names must
be defined before use.  The comodule ``unit`` is predefined.
"""

import re
from dataclasses import dataclass, field

from .algebra import AlgebraMap, Matrix, PresentedAlgebra
from .comodule import Comodule, ComoduleMap, unit
from .errors import ComodError, ParseError
from .fpmodule import FPModule
from .hopf import FLATNESS_LEVELS, Flatness, HopfAlgebroid

SINGLE = ("field", "algebroid", "A0", "A1", "etaL", "etaR", "counit", "comult", "antipode", "flatness")
NAMED = ("comodule", "complex")

_HEADER = re.compile(r"^\[\s*([A-Za-z0-9_]+)(?:\s+([A-Za-z0-9_.\-]+))?\s*\]$")
_KEY = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\[-?\d+(,-?\d+)*\])*$")
_INDEX = re.compile(r"\[(-?\d+(?:,-?\d+)*)\]")


@dataclass(frozen=True)
class Entry:
    key: str
    value: str
    line: int = field(default=None, compare=False)


@dataclass(frozen=True)
class Section:
    kind: str
    name: str = None
    entries: tuple = ()
    line: int = field(default=None, compare=False)

    def get(self, key, default=None):
        for e in self.entries:
            if e.key == key:
                return e
        return default

    def all(self, key):
        return [e for e in self.entries if e.key == key]


@dataclass(frozen=True)
class DefinitionFile:
    sections: tuple = ()


def parse(text):
    """Text → :class:`DefinitionFile` (syntax only)."""
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = _HEADER.match(line)
            if not m:
                raise ParseError(f"malformed section header {line!r}", lineno)
            kind, name = m.group(1), m.group(2)
            if kind in SINGLE and name is not None:
                raise ParseError(f"section [{kind}] takes no name", lineno)
            if kind in NAMED and name is None:
                raise ParseError(f"section [{kind}] needs a name", lineno)
            if kind not in SINGLE + NAMED:
                raise ParseError(f"unknown section kind {kind!r}", lineno)
            current = [kind, name, [], lineno]
            sections.append(current)
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        if current is None:
            raise ParseError("entry outside any section", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        key = re.sub(r"\s+", "", key)
        if not _KEY.match(key):
            raise ParseError(f"malformed key {key!r}", lineno)
        current[2].append(Entry(key, value, lineno))
    return DefinitionFile(tuple(Section(k, n, tuple(es), ln) for k, n, es, ln in sections))


def serialize(ast):
    """:class:`DefinitionFile` → canonical text; ``parse(serialize(a)) == a``."""
    blocks = []
    for s in ast.sections:
        if s.kind not in SINGLE + NAMED or (s.kind in NAMED) != (s.name is not None):
            raise ValueError(f"cannot serialize section {s.kind!r} {s.name!r}")
        if s.name is not None and not re.fullmatch(r"[A-Za-z0-9_.\-]+", s.name):
            raise ValueError(f"bad section name {s.name!r}")
        lines = [f"[{s.kind}]" if s.name is None else f"[{s.kind} {s.name}]"]
        for e in s.entries:
            if not _KEY.match(e.key):
                raise ValueError(f"bad key {e.key!r}")
            if "#" in e.value or "\n" in e.value or "\r" in e.value or e.value != e.value.strip():
                raise ValueError(f"value {e.value!r} cannot be written on one line")
            lines.append(f"{e.key} = {e.value}".rstrip())
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n" if blocks else ""


# building objects from the syntax tree

@dataclass
class Definition:
    field: int
    algebroid: HopfAlgebroid
    comodules: dict
    complexes: dict
    ast: DefinitionFile


def _indices(key):
    base = key.split("[", 1)[0]
    return base, [tuple(int(x) for x in g.split(",")) for g in _INDEX.findall(key)]


def _split_list(value):
    value = value.strip()
    if value.startswith("(") and value.endswith(")"):
        value = value[1:-1]
    return [v.strip() for v in value.split(",")] if value.strip() else []


def _poly(ring, text, line):
    try:
        return ring(text)
    except (ValueError, KeyError, ZeroDivisionError, ComodError) as exc:
        raise ParseError(f"cannot read {text!r} in {ring}: {exc}", line) from None


def _algebra(section, field_char, what):
    if section is None:
        return PresentedAlgebra(field_char, (), ())
    known = {"variables", "relation"}
    for e in section.entries:
        if e.key not in known:
            raise ParseError(f"unknown key {e.key!r} in [{what}]", e.line)
    var_entry = section.get("variables")
    variables = _split_list(var_entry.value) if var_entry else []
    for v in variables:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", v):
            raise ParseError(f"bad variable name {v!r}", var_entry.line)
    free = PresentedAlgebra(field_char, variables, ())
    rels = [_poly(free, e.value, e.line).poly for e in section.all("relation")]
    try:
        return PresentedAlgebra(field_char, variables, rels)
    except ComodError as exc:
        raise ParseError(str(exc), section.line) from None


def _images(section, source, target, what):
    images = []
    if section is None:
        if source.nvars:
            raise ParseError(f"missing section [{what}]")
        return []
    seen = {e.key for e in section.entries}
    for e in section.entries:
        if e.key not in source.variables:
            raise ParseError(f"[{what}] assigns unknown variable {e.key!r}", e.line)
    for v in source.variables:
        if v not in seen:
            raise ParseError(f"[{what}] has no image for {v!r}", section.line)
        e = section.get(v)
        images.append(_poly(target, e.value, e.line))
    return images


def _int(entry, what):
    try:
        return int(entry.value)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {entry.value!r}", entry.line) from None


def build(ast):
    """Construct the algebroid, comodules and complexes; names must be defined before use."""
    singles = {}
    for s in ast.sections:
        if s.kind in SINGLE:
            if s.kind in singles:
                raise ParseError(f"section [{s.kind}] appears twice", s.line)
            singles[s.kind] = s
    order = {s.kind: i for i, s in enumerate(ast.sections) if s.kind in SINGLE}
    for later, earlier in [("A1", "A0"), ("etaL", "A1"), ("etaR", "A1"), ("counit", "A1"),
                           ("comult", "A1"), ("antipode", "A1"), ("A0", "field"), ("A1", "field")]:
        if later in order and earlier in order and order[later] < order[earlier]:
            raise ParseError(f"[{later}] refers to [{earlier}], which must come first", singles[later].line)
    if "A1" not in singles:
        raise ParseError("missing section [A1]")

    field_char = 0
    if "field" in singles:
        entry = singles["field"].get("characteristic")
        if entry is None:
            raise ParseError("[field] needs 'characteristic'", singles["field"].line)
        field_char = _int(entry, "characteristic")
        try:
            PresentedAlgebra(field_char, (), ())
        except (ValueError, ComodError) as exc:
            raise ParseError(str(exc), entry.line) from None

    A0 = _algebra(singles.get("A0"), field_char, "A0")
    A1 = _algebra(singles["A1"], field_char, "A1")
    name, involutive = None, True
    if "algebroid" in singles:
        sec = singles["algebroid"]
        if sec.get("name"):
            name = sec.get("name").value
        if sec.get("involutive"):
            v = sec.get("involutive")
            if v.value not in ("true", "false"):
                raise ParseError("involutive must be true or false", v.line)
            involutive = v.value == "true"
    etaL = _images(singles.get("etaL"), A0, A1, "etaL")
    etaR = _images(singles.get("etaR"), A0, A1, "etaR")
    counit = _images(singles.get("counit"), A1, A0, "counit")
    antipode = _images(singles.get("antipode"), A1, A1, "antipode")
    flat = Flatness()
    if "flatness" in singles:
        sec = singles["flatness"]
        lvl = sec.get("level")
        if lvl is None or lvl.value not in FLATNESS_LEVELS:
            raise ParseError(f"flatness level must be one of {', '.join(FLATNESS_LEVELS)}", sec.line)
        rank = sec.get("rank")
        flat = Flatness(lvl.value, _int(rank, "rank") if rank else None)
    H = HopfAlgebroid(A0, A1, etaL, etaR, counit, None, antipode, flatness=flat, name=name,
                      involutive=involutive)
    # comult images live in H.D, which exists only once the units are known
    H.comult = AlgebraMap(A1, H.D, _images(singles.get("comult"), A1, H.D, "comult"), name="comult")

    comodules = {"unit": unit(H)}
    complexes = {}
    for s in ast.sections:
        if s.kind == "comodule":
            if s.name in comodules:
                raise ParseError(f"comodule {s.name!r} defined twice", s.line)
            comodules[s.name] = _comodule(H, s)
        elif s.kind == "complex":
            if s.name in complexes:
                raise ParseError(f"complex {s.name!r} defined twice", s.line)
            complexes[s.name] = _complex(H, s, comodules)
    return Definition(field_char, H, comodules, complexes, ast)


def _comodule(H, s):
    gens = s.get("generators")
    if gens is None:
        raise ParseError(f"comodule {s.name!r} needs 'generators'", s.line)
    n = _int(gens, "generators")
    relations = []
    rows = [[H.A1.zero] * n for _ in range(n)]
    for e in s.entries:
        base, idx = _indices(e.key)
        if e.key == "generators":
            continue
        if e.key == "relation":
            parts = _split_list(e.value)
            if len(parts) != n:
                raise ParseError(f"relation needs {n} entries, got {len(parts)}", e.line)
            relations.append([_poly(H.A0, p, e.line) for p in parts])
        elif base == "coaction" and len(idx) == 1 and len(idx[0]) == 2:
            k, j = idx[0]
            if not (0 <= k < n and 0 <= j < n):
                raise ParseError(f"coaction index {(k, j)} out of range", e.line)
            rows[k][j] = _poly(H.A1, e.value, e.line)
        else:
            raise ParseError(f"unknown key {e.key!r} in comodule {s.name!r}", e.line)
    module = FPModule.quotient(H.A0, n, relations, name=s.name) if relations else FPModule.free(H.A0, n, name=s.name)
    return Comodule(H, module, Matrix(H.A1, rows, n), name=s.name)


def _complex(H, s, comodules):
    from .complexes import Complex
    terms, entries = {}, {}
    for e in s.entries:
        base, idx = _indices(e.key)
        if base == "term" and len(idx) == 1 and len(idx[0]) == 1:
            if e.value not in comodules:
                raise ParseError(f"comodule {e.value!r} is not defined before use", e.line)
            terms[idx[0][0]] = comodules[e.value]
        elif base == "d" and len(idx) == 2 and len(idx[0]) == 1 and len(idx[1]) == 2:
            entries.setdefault(idx[0][0], []).append((idx[1], e))
        else:
            raise ParseError(f"unknown key {e.key!r} in complex {s.name!r}", e.line)
    diffs = {}
    for n, items in entries.items():
        if n not in terms or n + 1 not in terms:
            raise ParseError(f"differential d[{n}] needs terms {n} and {n + 1}", items[0][1].line)
        src, dst = terms[n], terms[n + 1]
        rows = [[H.A0.zero] * src.ngens for _ in range(dst.ngens)]
        for (i, j), e in items:
            if not (0 <= i < dst.ngens and 0 <= j < src.ngens):
                raise ParseError(f"differential index {(i, j)} out of range", e.line)
            rows[i][j] = _poly(H.A0, e.value, e.line)
        diffs[n] = ComoduleMap(src, dst, Matrix(H.A0, rows, src.ngens))
    try:
        return Complex(H, terms, diffs, name=s.name)
    except ValueError as exc:
        raise ParseError(f"complex {s.name!r}: {exc}", s.line) from None


def comodule_section(M, name):
    """The ``[comodule]`` section describing M."""
    entries = [Entry("generators", str(M.ngens))]
    for col in M.module.relations.columns():
        entries.append(Entry("relation", ", ".join(str(x) for x in col)))
    for k in range(M.ngens):
        for j in range(M.ngens):
            c = M.coaction[k, j]
            if not c.is_zero():
                entries.append(Entry(f"coaction[{k},{j}]", str(c)))
    return Section("comodule", name, tuple(entries))


def load(text):
    return build(parse(text))


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())
