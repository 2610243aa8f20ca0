from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalens.category import (
    InternalCategory,
    codiscrete,
    coproduct,
    discrete,
    free_on_acyclic_graph,
    from_table,
    monoid_category,
    terminal_category,
    validate_category,
    walking_arrow,
)
from deltalens.diagnostics import CarrierMismatch, CycleError, StructureError
from deltalens.finset import FinFn

from oracles import all_paths, category_violations, left_unit_witnesses


def redirect(C: InternalCategory, pair, target) -> InternalCategory:
    images = tuple(target if p == pair else h for p, h in C.comp.items())
    return InternalCategory(C.objects, C.arrows, C.dom, C.cod, C.ident, FinFn(C.comp.dom, C.arrows, images), C.name)


@st.composite
def dags(draw, max_vertices=5):
    n = draw(st.integers(0, max_vertices))
    vertices = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(draw(st.integers(0, 1 if n > 3 else 2))):
                edges.append((f"e{len(edges)}", vertices[i], vertices[j]))
    return vertices, edges


# -- validation ---------------------------------------------------------


def test_discrete_is_valid():
    assert validate_category(discrete(["a", "b", "c"])).ok


def test_walking_arrow_is_valid():
    C = walking_arrow()
    assert validate_category(C).ok
    assert C.objects.elements == ("0", "1")
    assert sorted(C.arrows) == ["1_0", "1_1", "u"]
    assert (C.dom("u"), C.cod("u")) == ("0", "1")


def test_redirected_unit_reports_left_unit():
    C = redirect(walking_arrow(), ("1_0", "u"), "1_0")
    report = validate_category(C)
    assert not report.ok
    # oracle: every composable pair whose first leg is an identity
    assert left_unit_witnesses(C) == [("1_0", "u")]
    assert [v.witness for v in report.find("left-unit")] == [("1_0", "u")]
    assert "left-unit" in category_violations(C)


def test_identity_failures_suppress_unit_checks():
    C = walking_arrow()
    bad_ident = FinFn(C.objects, C.arrows, ("u", "1_1"))
    D = InternalCategory(C.objects, C.arrows, C.dom, C.cod, bad_ident, C.comp)
    report = validate_category(D)
    assert report.find("identity-codomain")
    assert not report.find("left-unit") and not report.find("right-unit")


def test_category_rejects_misshapen_carriers():
    C = walking_arrow()
    with pytest.raises(CarrierMismatch):
        InternalCategory(C.objects, C.arrows, C.cod, C.dom, C.ident, C.comp)


# -- constructors -------------------------------------------------------


def test_discrete_sizes():
    empty = discrete([])
    assert len(empty.objects) == 0 and len(empty.arrows) == 0
    assert validate_category(empty).ok
    one = discrete(["x"])
    assert len(one.objects) == 1 and len(one.arrows) == 1
    assert terminal_category() == discrete(["*"])


@given(st.integers(0, 6))
def test_discrete_has_n_arrows(n):
    C = discrete([f"x{i}" for i in range(n)])
    assert len(C.arrows) == n
    assert C.identities == frozenset(C.arrows)


def test_codiscrete_singleton_is_terminal():
    C = codiscrete(["x"])
    assert len(C.objects) == 1 and len(C.arrows) == 1


def test_codiscrete_three():
    C = codiscrete(["a", "b", "c"])
    assert len(C.arrows) == 9
    assert all(len(C.hom(x, y)) == 1 for x in C.objects for y in C.objects)
    assert C.comp((("a", "b"), ("b", "c"))) == ("a", "c")


@pytest.mark.parametrize("n", range(6))
def test_codiscrete_validates(n):
    C = codiscrete([f"s{i}" for i in range(n)])
    assert validate_category(C).ok
    assert category_violations(C) == set()


def test_trivial_monoid_is_terminal():
    C = monoid_category(["e"], lambda x, y: "e", "e")
    assert len(C.objects) == 1 and len(C.arrows) == 1
    assert validate_category(C).ok


def test_idempotent_monoid():
    C = monoid_category(["e", "s"], lambda x, y: "s" if "s" in (x, y) else "e", "e")
    assert validate_category(C).ok
    assert len(C.arrows) == 2
    assert C.comp(("s", "s")) == "s"


def test_nonassociative_table_reports_associativity():
    # a.a = b, a.b = b, b.a = a, b.b = a; (a.a).a = a but a.(a.a) = b
    mul = {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "a"}
    table = {("e", x): x for x in "eab"} | {(x, "e"): x for x in "eab"} | mul
    C = monoid_category(["e", "a", "b"], table, "e")
    report = validate_category(C)
    assert set(report.checks_failed()) == {"associativity"}
    # oracle: first failing triple in (f, g, h) lexicographic order
    elems = ["e", "a", "b"]
    failing = [
        ((f, g), (g, h))
        for f in elems
        for g in elems
        for h in elems
        if table[(h, table[(g, f)])] != table[(table[(h, g)], f)]
    ]
    assert failing
    assert report.find("associativity")[0].witness == failing[0]
    assert [v.witness for v in report.find("associativity")] == failing


def test_monoid_rejects_incomplete_table():
    with pytest.raises(StructureError):
        monoid_category(["e", "s"], {("e", "e"): "e"}, "e")


def test_free_without_edges_is_discrete():
    assert free_on_acyclic_graph(["a", "b"], []) == discrete(["a", "b"])


def test_free_on_single_edge_is_walking_arrow():
    assert free_on_acyclic_graph(["0", "1"], [("u", "0", "1")]) == walking_arrow()


def test_free_on_triangle_graph():
    C = free_on_acyclic_graph(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")])
    assert sorted(C.nonidentity_arrows()) == sorted(["ab", "bc", "ac", "ab;bc"])
    assert C.comp(("ab", "bc")) == "ab;bc"
    assert sorted(C.hom("a", "c")) == ["ab;bc", "ac"]
    assert validate_category(C).ok


def test_free_rejects_cycles():
    with pytest.raises(CycleError):
        free_on_acyclic_graph(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])


def test_free_rejects_dangling_edge():
    with pytest.raises(StructureError):
        free_on_acyclic_graph(["a"], [("x", "a", "z")])


@given(dags())
def test_free_category_matches_path_enumeration(graph):
    vertices, edges = graph
    C = free_on_acyclic_graph(vertices, edges)
    paths = all_paths(vertices, edges)
    assert len(C.arrows) == len(paths)
    expected = {";".join(p) if p else f"1_{s}": (s, t) for p, s, t in paths}
    assert {m: (C.dom(m), C.cod(m)) for m in C.arrows} == expected
    assert validate_category(C).ok


@given(dags(4), dags(3))
def test_coproduct_validates(g1, g2):
    C = free_on_acyclic_graph(*g1)
    D = free_on_acyclic_graph(*g2)
    S = coproduct(C, D)
    assert validate_category(S).ok
    assert len(S.arrows) == len(C.arrows) + len(D.arrows)


@given(dags())
def test_validator_agrees_with_oracle(graph):
    C = free_on_acyclic_graph(*graph)
    assert category_violations(C) == set(validate_category(C).checks_failed())


def test_derived_carriers():
    C = walking_arrow()
    assert len(C.pairs.apex) == 4
    assert C.ident_first("u") == ("1_0", "u")
    assert C.ident_last("u") == ("u", "1_1")
    assert C.then("1_0", "u") == "u" and C.after("u", "1_0") == "u"
    assert len(C.triples.apex) == 5


def test_from_table_requires_composites():
    with pytest.raises(StructureError):
        from_table(["x"], {"1_x": ("x", "x")}, {"x": "1_x"}, {})
