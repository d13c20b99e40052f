"""Definition files: parsing, canonical printing and building objects."""

import pytest
from hypothesis import given, strategies as st

from comodcat.comodule import check_comodule
from comodcat.errors import ParseError
from comodcat.fixtures import FIXTURES, fixture_text, load_fixture
from comodcat.serialize import (NAMED, SINGLE, DefinitionFile, Entry, Section, comodule_section, load, parse,
                                serialize)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    ast = parse(fixture_text(name))
    text = serialize(ast)
    assert parse(text) == ast
    assert serialize(parse(text)) == text
    rebuilt = load(text)
    original = load_fixture(name)
    assert sorted(rebuilt.comodules) == sorted(original.comodules)
    assert sorted(rebuilt.complexes) == sorted(original.complexes)


idents = st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True)
keys = st.one_of(idents, st.tuples(idents, st.lists(st.integers(-9, 9), min_size=1, max_size=3)).map(
    lambda t: f"{t[0]}[{','.join(map(str, t[1]))}]"))
values = st.from_regex(r"[A-Za-z0-9_+\-*^/,() ]{0,12}", fullmatch=True).map(str.strip)
entries = st.builds(Entry, keys, values)
sections = st.one_of(
    st.builds(Section, st.sampled_from(SINGLE), st.none(), st.lists(entries, max_size=4).map(tuple)),
    st.builds(Section, st.sampled_from(NAMED), idents, st.lists(entries, max_size=4).map(tuple)),
)
files = st.lists(sections, max_size=5).map(lambda s: DefinitionFile(tuple(s)))


@given(files)
def test_random_syntax_trees_round_trip(ast):
    assert parse(serialize(ast)) == ast


def test_unrepresentable_values_are_refused():
    bad = DefinitionFile((Section("A1", None, (Entry("variables", "x # y"),)),))
    with pytest.raises(ValueError):
        serialize(bad)


@pytest.mark.parametrize("text, line", [
    ("[A1]\nvariables = x\n[bogus]\n", 3),
    ("variables = x\n", 1),
    ("[A1]\nvariables = x\nno equals here\n", 3),
    ("[comodule]\n", 1),
    ("[A1 name]\n", 1),
    ("[A1]\nvariables = x\n\n[A1]\nvariables = y\n", 4),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        load(text)
    assert info.value.line == line


def test_names_must_be_defined_before_use():
    text = fixture_text("F1") + "\n[complex late]\nterm[0] = later\n\n[comodule later]\ngenerators = 1\ncoaction[0,0] = 1\n"
    with pytest.raises(ParseError) as info:
        load(text)
    assert "not defined before use" in str(info.value)


def test_section_order_is_enforced():
    text = "[A1]\nvariables = g\n\n[field]\ncharacteristic = 0\n"
    with pytest.raises(ParseError):
        load(text)


def test_bad_polynomial_reports_its_line():
    text = fixture_text("F1").replace("e = e_1 + e_2", "e = e_1 +* e_2")
    lineno = next(i for i, l in enumerate(text.splitlines(), 1) if "+*" in l)
    with pytest.raises(ParseError) as info:
        load(text)
    assert info.value.line == lineno


def test_comodule_section_rebuilds_the_comodule():
    D = load_fixture("F3")
    M = D.comodules["A_mod_x2_twisted"]
    section = comodule_section(M, "copy")
    text = fixture_text("F3") + "\n" + serialize(DefinitionFile((section,)))
    copy = load(text).comodules["copy"]
    assert check_comodule(copy).passed
    assert str(copy.coaction) == str(M.coaction)
    assert copy.module.kdim() == M.module.kdim()
