from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalens.corpus import fork_lens
from deltalens.diagnostics import CarrierMismatch, ConeError, NotBijective, StructureError
from deltalens.finset import (
    FinFn,
    FinSet,
    all_maps,
    bijection_defect,
    compose,
    compose_fn,
    identity,
    inverse,
    is_bijection,
    mediate,
    preimage_counts,
    product,
    pullback,
    swap,
)
from deltalens.sopf import comparison

from oracles import pullback_pairs


def fs(*xs, name=""):
    return FinSet(xs, name)


def fn(dom, cod, mapping):
    return FinFn.of(dom, cod, mapping)


@st.composite
def maps_between(draw, n=4, m=4):
    dom = FinSet([f"d{i}" for i in range(draw(st.integers(0, n)))])
    cod = FinSet([f"c{i}" for i in range(draw(st.integers(1, m)))])
    images = draw(st.lists(st.sampled_from(cod.elements), min_size=len(dom), max_size=len(dom)))
    return FinFn(dom, cod, images)


@st.composite
def composable(draw):
    f = draw(maps_between())
    k = draw(st.integers(1, 4))
    cod = FinSet([f"e{i}" for i in range(k)])
    images = draw(st.lists(st.sampled_from(cod.elements), min_size=len(f.cod), max_size=len(f.cod)))
    return f, FinFn(f.cod, cod, images)


@st.composite
def cospans(draw):
    cod = FinSet(["x", "y", "z"])
    legs = []
    for prefix in "ab":
        dom = FinSet([f"{prefix}{i}" for i in range(draw(st.integers(0, 4)))])
        images = draw(st.lists(st.sampled_from(cod.elements), min_size=len(dom), max_size=len(dom)))
        legs.append(FinFn(dom, cod, images))
    return tuple(legs)


# -- carriers -----------------------------------------------------------


def test_finset_rejects_duplicates_and_bad_labels():
    with pytest.raises(StructureError):
        fs("a", "a")
    with pytest.raises(StructureError):
        fs(1)
    with pytest.raises(StructureError):
        fs(("a", "b", "c"))
    assert fs(("a", ("b", "c"))).elements == (("a", ("b", "c")),)


def test_equality_is_order_exact_and_ignores_names():
    assert fs("a", "b", name="X") == fs("a", "b", name="Y")
    assert fs("a", "b") != fs("b", "a")


def test_finfn_must_be_total_and_land_in_codomain():
    with pytest.raises(StructureError):
        FinFn(fs("a", "b"), fs("x"), ("x",))
    with pytest.raises(StructureError):
        FinFn(fs("a"), fs("x"), ("y",))
    with pytest.raises(StructureError):
        FinFn.of(fs("a", "b"), fs("x"), {"a": "x"})


# -- composition --------------------------------------------------------


def test_compose_with_identity():
    f = fn(fs("a"), fs("x", "y"), {"a": "x"})
    assert compose_fn(identity(f.cod), f) == f


def test_compose_constant():
    f = fn(fs("a", "b"), fs("x"), {"a": "x", "b": "x"})
    g = fn(fs("x"), fs("z"), {"x": "z"})
    assert compose_fn(g, f) == FinFn(fs("a", "b"), fs("z"), ("z", "z"))


def test_compose_rejects_mismatch():
    f = fn(fs("a"), fs("x"), {"a": "x"})
    with pytest.raises(CarrierMismatch):
        compose_fn(f, f)


@given(composable())
def test_compose_matches_lookup(pair):
    f, g = pair
    h = compose_fn(g, f)
    assert h.dom == f.dom and h.cod == g.cod
    assert all(h(x) == g.as_dict()[f.as_dict()[x]] for x in f.dom)


@given(composable())
def test_compose_is_associative_and_unital(pair):
    f, g = pair
    k = identity(g.cod)
    assert compose(k, g, f) == compose_fn(compose_fn(k, g), f) == compose_fn(k, compose_fn(g, f))
    assert compose_fn(f, identity(f.dom)) == f


# -- pullbacks ----------------------------------------------------------


def test_pullback_over_terminal_is_product():
    pb = pullback(fn(fs("0", "1"), fs("*"), {"0": "*", "1": "*"}), fn(fs("2"), fs("*"), {"2": "*"}))
    assert pb.apex.elements == (("0", "2"), ("1", "2"))
    assert product(fs("0", "1"), fs("2")).apex == pb.apex


def test_pullback_along_identity():
    g = fn(fs("c"), fs("a", "b"), {"c": "a"})
    pb = pullback(identity(fs("a", "b")), g)
    assert pb.apex.elements == (("a", "c"),)
    assert is_bijection(pb.p1)


def test_pullback_rejects_different_codomains():
    with pytest.raises(CarrierMismatch):
        pullback(identity(fs("a")), identity(fs("b")))


@given(cospans())
def test_pullback_matches_double_loop(legs):
    f, g = legs
    pb = pullback(f, g)
    assert list(pb.apex) == pullback_pairs(f, g)
    assert compose(f, pb.p0) == compose(g, pb.p1)


@given(cospans())
def test_pullback_is_symmetric_up_to_swap(legs):
    pb = pullback(*legs)
    s = swap(pb)
    assert is_bijection(s)
    flipped = pullback(legs[1], legs[0])
    assert compose(flipped.p1, s) == pb.p0
    assert compose(flipped.p0, s) == pb.p1


# -- mediation ----------------------------------------------------------


@given(cospans())
def test_mediate_projections_gives_identity(legs):
    pb = pullback(*legs)
    assert mediate(pb.p0, pb.p1, pb) == identity(pb.apex)


def test_mediate_singleton_cone():
    f = fn(fs("a", "b"), fs("x", "y"), {"a": "x", "b": "y"})
    g = fn(fs("c"), fs("x", "y"), {"c": "y"})
    pb = pullback(f, g)
    w = fs("w")
    m = mediate(fn(w, f.dom, {"w": "b"}), fn(w, g.dom, {"w": "c"}), pb)
    assert m.images == (("b", "c"),)


def test_mediate_rejects_noncommuting_cone():
    f = fn(fs("a", "b"), fs("x", "y"), {"a": "x", "b": "y"})
    pb = pullback(f, f)
    w = fs("w0", "w1")
    with pytest.raises(ConeError) as err:
        mediate(fn(w, f.dom, {"w0": "a", "w1": "a"}), fn(w, f.dom, {"w0": "a", "w1": "b"}), pb)
    assert err.value.witness == "w1"


@given(cospans(), st.data())
def test_mediate_is_tupling_and_unique(legs, data):
    f, g = legs
    pb = pullback(f, g)
    if not len(pb.apex):
        return
    w = FinSet([f"w{i}" for i in range(4)])
    chosen = data.draw(st.lists(st.sampled_from(pb.apex.elements), min_size=4, max_size=4))
    q0 = FinFn(w, f.dom, [x for x, _ in chosen])
    q1 = FinFn(w, g.dom, [y for _, y in chosen])
    m = mediate(q0, q1, pb)
    assert list(m.images) == chosen
    matches = [h for h in all_maps(w, pb.apex) if compose(pb.p0, h) == q0 and compose(pb.p1, h) == q1]
    assert matches == [m]


# -- bijections ---------------------------------------------------------


def test_identity_is_bijection():
    assert is_bijection(identity(fs("a", "b")))
    assert bijection_defect(identity(fs())) is None


def test_collision_reported():
    f = fn(fs("a", "b"), fs("x"), {"a": "x", "b": "x"})
    assert not is_bijection(f)
    assert bijection_defect(f) == ("collision", ("a", "b"))
    with pytest.raises(NotBijective):
        inverse(f)


def test_fork_comparison_is_not_bijective():
    L = fork_lens()
    cmp = comparison(L)
    A, B, f = L.src, L.dst, L.functor
    # brute force: every (w, u, v) with f w = v . u, and which of them are hit
    triangles = [
        (w, (u, v))
        for w in A.arrows
        for u in B.arrows
        for v in B.arrows
        if B.cod(u) == B.dom(v) and B.comp((u, v)) == f(w) and B.dom(u) == f.on_objects(A.dom(w))
    ]
    hit = {cmp(e) for e in cmp.dom}
    assert len(cmp.dom) == 6 and len(triangles) == 7
    assert [t for t in triangles if t not in hit] == [("m'", ("u", "1_y"))]
    assert not is_bijection(cmp)
    assert bijection_defect(cmp) == ("missed", ("m'", ("u", "1_y")))


@given(maps_between(3, 3))
def test_inverse_round_trip(f):
    if is_bijection(f):
        g = inverse(f)
        assert compose(g, f) == identity(f.dom)
        assert compose(f, g) == identity(f.cod)
    else:
        assert bijection_defect(f) is not None


@given(maps_between())
def test_preimage_counts_sum(f):
    counts = preimage_counts(f)
    assert sum(counts.values()) == len(f.dom)
    assert set(counts) == set(f.cod)


def test_empty_sets():
    e = fs()
    pb = pullback(FinFn(e, fs("x"), ()), identity(fs("x")))
    assert len(pb.apex) == 0
    assert list(all_maps(e, e)) == [identity(e)]
