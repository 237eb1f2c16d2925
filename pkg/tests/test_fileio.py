import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplepoints.datasets import ARRANGEMENT_NAMES, INCIDENCE_NAMES, arrangement, builtin
from triplepoints.errors import ParseError, UnknownName
from triplepoints.fields import make_field
from triplepoints.fileio import (
    format_arrangement,
    format_incidence,
    format_t_vector,
    load_arrangement,
    load_incidence,
    parse_arrangement,
    parse_field_header,
    parse_incidence,
)
from triplepoints.incidence import IncidenceStructure
from triplepoints.realize import Arrangement


@pytest.mark.parametrize("name", INCIDENCE_NAMES + ("pg:3,2",))
def test_incidence_round_trip(name):
    inc = builtin(name)
    text = format_incidence(inc)
    assert parse_incidence(text) == inc
    assert format_incidence(parse_incidence(text)) == text


@pytest.mark.parametrize("name", ARRANGEMENT_NAMES)
def test_arrangement_round_trip(name):
    arr = arrangement(name)
    text = format_arrangement(arr)
    again = parse_arrangement(text)
    assert again == arr
    assert format_arrangement(again) == text


def test_incidence_comments_and_blank_lines():
    text = "# Fano\n\nn 7\n1 2 3  # first\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n"
    assert parse_incidence(text) == builtin("fano")
    assert format_incidence(builtin("fano"), comment="Fano").startswith("# Fano\nn 7\n")


@pytest.mark.parametrize(
    "text",
    ["", "n x\n", "7\n1 2 3\n", "n 7\n1 2\n", "n 7\n1 2 8\n", "n 7\n1 1 2\n", "n 7\n1 a 3\n"],
)
def test_incidence_parse_errors(text):
    with pytest.raises(ParseError):
        parse_incidence(text)


def test_field_headers():
    assert parse_field_header("field 11 1") == make_field(11)
    assert parse_field_header("field 2 4 1 0 0 1 1") == make_field(2, 4)
    assert parse_field_header("field Q") == make_field("Q")
    assert parse_field_header("field Qquad 4 -6 1") == make_field(quadratic=(4, -6, 1))
    for bad in ["field 12 1", "field", "field Qquad 1 0 -1", "fld 2 1", "field 2 x"]:
        with pytest.raises(ParseError):
            parse_field_header(bad)


def test_qquad_literals_with_spaces():
    text = "field Qquad 4 -6 1\nn 3\n1 0 0\n0 1 - eps 0\n1/2 + 3/4*eps -eps 1\n"
    arr = parse_arrangement(text)
    F = arr.field
    assert arr.columns[1][1] == F.coerce((Fraction(1), Fraction(-1)))
    assert arr.columns[2][0] == F.coerce((Fraction(1, 2), Fraction(3, 4)))
    assert arr.columns[2][1] == F.coerce((Fraction(0), Fraction(-1)))


def test_extension_literals_with_spaces():
    text = "field 3 2 1 0 1\nn 2\n[1, 2] 0 1\n1 [0,1] 0\n"
    arr = parse_arrangement(text)
    F = arr.field
    assert arr.columns[0][0] == F.from_coeffs([1, 2])
    assert arr.columns[1][1] == F.from_coeffs([0, 1])


@pytest.mark.parametrize(
    "text",
    [
        "n 3\n1 0 0\n",
        "field 5 1\nn 2\n1 0 0\n",
        "field 5 1\nn 1\n1 0\n",
        "field 5 1\nn 1\n1 0 x\n",
    ],
)
def test_arrangement_parse_errors(text):
    with pytest.raises(ParseError):
        parse_arrangement(text)


def test_t_vector_format():
    assert format_t_vector({3: 57}) == "t3=57 t2=0"
    assert format_t_vector({2: 9, 3: 23}) == "t3=23 t2=9"


def test_handles(tmp_path):
    assert load_incidence("@fano") == builtin("fano")
    assert load_incidence("@pg:3,2") == builtin("pg:3,2")
    assert load_arrangement("@f11_19") == arrangement("f11_19")
    with pytest.raises(UnknownName):
        load_arrangement("@nope")
    p = tmp_path / "sts.txt"
    p.write_text(format_incidence(builtin("sts13_1")))
    assert load_incidence(str(p)) == builtin("sts13_1")


@st.composite
def incidence_structures(draw):
    n = draw(st.integers(3, 12))
    fam = []
    for t in draw(st.lists(st.sampled_from(list(itertools.combinations(range(n), 3))), max_size=15)):
        if all(len(set(t) & set(b)) <= 1 for b in fam):
            fam.append(t)
    return IncidenceStructure(n, fam)


@settings(max_examples=100, deadline=None)
@given(incidence_structures())
def test_random_incidence_round_trip(inc):
    text = format_incidence(inc)
    assert parse_incidence(text) == inc
    assert format_incidence(parse_incidence(text)) == text


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (7, 1), (2, 3), (3, 2)]), st.data())
def test_random_arrangement_round_trip(pk, data):
    F = make_field(*pk)
    n = data.draw(st.integers(1, 6))
    cols = [tuple(data.draw(st.integers(0, F.size - 1)) for _ in range(3)) for _ in range(n)]
    arr = Arrangement(F, tuple(cols))
    text = format_arrangement(arr)
    assert parse_arrangement(text) == arr
    assert format_arrangement(parse_arrangement(text)) == text


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.fractions(max_denominator=9), st.fractions(max_denominator=9)), min_size=3, max_size=3))
def test_random_qeps_round_trip(entries):
    F = make_field(quadratic=(4, -6, 1))
    arr = Arrangement(F, (tuple(F.coerce(e) for e in entries),))
    text = format_arrangement(arr)
    assert parse_arrangement(text) == arr


def test_arrangement_handle_as_incidence():
    from triplepoints.realize import incidence_of

    assert load_incidence("@f11_19") == incidence_of(arrangement("f11_19"))[0]
    with pytest.raises(UnknownName, match="unknown name: nope"):
        load_incidence("@nope")
