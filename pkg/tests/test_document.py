from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalens.category import walking_arrow
from deltalens.corpus import FAMILIES, GenConfig, fork_lens, gen, walking_arrow_identity_lens
from deltalens.document import Document, ParseError, lens_document, parse, print_document

from conftest import SAMPLES

SHIPPED = sorted(SAMPLES.glob("*.dlens"))

ARROW = """\
category A
  objects: 0 1
  arrow u : 0 -> 1
end
"""


def test_empty_document():
    assert parse("") == Document()
    assert parse("\n  # nothing here\n") == Document()
    assert print_document(Document()) == ""


def test_walking_arrow_file():
    doc = parse((SAMPLES / "walking_arrow.dlens").read_text())
    assert doc.order == [("category", "Two")]
    C = doc.categories["Two"]
    assert len(C.arrows) == 3
    assert C == walking_arrow("Two")


def test_fork_file_matches_fixture():
    doc = parse((SAMPLES / "fork_lens.dlens").read_text())
    L = doc.lenses["Fork"]
    assert L.functor == fork_lens().functor
    assert L.cofunctor == fork_lens().cofunctor


def test_identity_file_matches_fixture():
    L = parse((SAMPLES / "identity_lens.dlens").read_text()).lenses["Id"]
    assert L == walking_arrow_identity_lens()


def test_comments_and_blank_lines_are_ignored():
    text = "# header\n\ncategory A   # trailing\n  objects: 0 1\n\n  arrow u : 0 -> 1\nend\n"
    assert parse(text) == parse(ARROW)


def test_composites_are_read():
    text = """\
category P
  objects: a b c
  arrow f : a -> b
  arrow g : b -> c
  arrow h : a -> c
  compose g . f = h
end
"""
    C = parse(text).categories["P"]
    assert C.comp(("f", "g")) == "h"
    assert print_document(parse(text)) == text


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("widget A\nend\n", 1, "unknown keyword"),
        (ARROW + "category A\n  objects: x\nend\n", 5, "duplicate category"),
        (ARROW + "lens L : A -> Nope\n  obj 0 |-> 0\nend\n", 5, "unknown category"),
        ("category P\n  objects: a b c\n  arrow f : a -> b\n  arrow g : b -> c\nend\n", 5, "missing composition"),
        ("category A\n  objects: 1_x\nend\n", 2, "reserved"),
        ("category A\n  objects: 0 1\n", 1, "missing 'end'"),
        ("category A\n  objects: 0\n  arrow u : 0 -> 9\nend\n", 3, "unknown object"),
        ("category A\n  objects: 0 0\nend\n", 2, "duplicate object"),
        (ARROW + "lens L : A -> A\n  obj 0 |-> 0\n  obj 1 |-> 1\n  arr u |-> u\nend\n", 9, "no lift"),
        (ARROW + "lens L : A -> A\n  obj 0 |-> 0\nend\n", 7, "no image"),
        ("category A\n  objects: 0\ncategory B\nend\n", 3, "not closed"),
        ("category A\n  arrow u 0 -> 1\nend\n", 2, "expected"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.line == line
    assert fragment in str(err.value)
    assert str(err.value).startswith(f"line {line}, column ")


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_files_print_exactly(path):
    text = path.read_text()
    doc = parse(text)
    assert print_document(doc) == text
    assert parse(print_document(doc)) == doc


@given(st.sampled_from(FAMILIES), st.integers(0, 10_000), st.integers(1, 5))
def test_generated_documents_round_trip(family, seed, size):
    if family == "monoid-section":
        size = 1
    doc = lens_document(gen(GenConfig(family, seed, size)).lens)
    text = print_document(doc)
    again = parse(text)
    assert again == doc
    assert print_document(again) == text
