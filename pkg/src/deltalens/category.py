"""Internal categories over finite sets.

A category is stored as the six maps of its underlying reflexive graph
plus composition.  The carrier of composable pairs is *derived*: it is
the canonical pullback of ``cod`` against ``dom``, so an element is a
pair ``(f, g)`` with ``cod f == dom g`` and ``comp((f, g))`` is "g after
f".  Composable triples and the maps between pairs and triples are
derived from these by the universal property, never stored.
"""
from __future__ import annotations

import graphlib
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .diagnostics import CarrierMismatch, CycleError, Report, StructureError
from .finset import (
    FinFn,
    FinSet,
    Label,
    Pullback,
    compose,
    identity,
    mediate,
    product,
    pullback,
)


def identity_label(x: Label) -> Label:
    """Reserved name of the identity on ``x``."""
    return f"1_{x}" if isinstance(x, str) else ("1", x)


@dataclass(frozen=True)
class InternalCategory:
    objects: FinSet
    arrows: FinSet
    dom: FinFn
    cod: FinFn
    ident: FinFn
    comp: FinFn
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        for label, fn, src, dst in (
            ("domain map", self.dom, self.arrows, self.objects),
            ("codomain map", self.cod, self.arrows, self.objects),
            ("identity map", self.ident, self.objects, self.arrows),
        ):
            if fn.dom != src:
                raise CarrierMismatch(f"{label} has the wrong domain", fn.dom, src)
            if fn.cod != dst:
                raise CarrierMismatch(f"{label} has the wrong codomain", fn.cod, dst)
        if self.comp.dom != self.pairs.apex:
            raise CarrierMismatch(
                "composition is not defined on the composable pairs", self.comp.dom, self.pairs.apex
            )
        if self.comp.cod != self.arrows:
            raise CarrierMismatch("composition has the wrong codomain", self.comp.cod, self.arrows)

    # -- derived carriers ------------------------------------------------

    @cached_property
    def pairs(self) -> Pullback:
        """Composable pairs ``(f, g)``: the pullback of ``cod`` and ``dom``."""
        return pullback(self.cod, self.dom, f"{self.name}.pairs" if self.name else "")

    @property
    def first(self) -> FinFn:
        return self.pairs.p0

    @property
    def second(self) -> FinFn:
        return self.pairs.p1

    @cached_property
    def triples(self) -> Pullback:
        """Composable triples, as pairs ``((f, g), (g, h))`` of pairs."""
        return pullback(self.second, self.first, f"{self.name}.triples" if self.name else "")

    @cached_property
    def ident_first(self) -> FinFn:
        """``w |-> (1_dom w, w)``."""
        return mediate(compose(self.ident, self.dom), identity(self.arrows), self.pairs)

    @cached_property
    def ident_last(self) -> FinFn:
        """``w |-> (w, 1_cod w)``."""
        return mediate(identity(self.arrows), compose(self.ident, self.cod), self.pairs)

    @cached_property
    def compose_front(self) -> FinFn:
        """``((f, g), (g, h)) |-> (g.f, h)``."""
        t = self.triples
        return mediate(compose(self.comp, t.p0), compose(self.second, t.p1), self.pairs)

    @cached_property
    def compose_back(self) -> FinFn:
        """``((f, g), (g, h)) |-> (f, h.g)``."""
        t = self.triples
        return mediate(compose(self.first, t.p0), compose(self.comp, t.p1), self.pairs)

    # -- elementwise conveniences ----------------------------------------

    def then(self, f: Label, g: Label) -> Label:
        """``g`` after ``f``, in diagrammatic order."""
        return self.comp((f, g))

    def after(self, g: Label, f: Label) -> Label:
        return self.comp((f, g))

    def identity_of(self, x: Label) -> Label:
        return self.ident(x)

    @cached_property
    def identities(self) -> frozenset:
        return frozenset(self.ident.images)

    def is_identity(self, m: Label) -> bool:
        return m in self.identities

    def nonidentity_arrows(self) -> list:
        return [m for m in self.arrows if m not in self.identities]

    def hom(self, x: Label, y: Label) -> list:
        return [m for m, a, b in zip(self.arrows, self.dom.images, self.cod.images) if a == x and b == y]

    def out_arrows(self, x: Label) -> list:
        return [m for m, a in zip(self.arrows, self.dom.images) if a == x]

    def __repr__(self) -> str:
        label = self.name or "InternalCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.arrows)} arrows>"


def validate_category(c: InternalCategory) -> Report:
    """Check the seven diagrams; an empty report means ``c`` is a category."""
    report = Report(f"category {c.name}".strip())
    for x in c.objects:
        if c.dom(c.ident(x)) != x:
            report.add("identity-domain", x)
    for x in c.objects:
        if c.cod(c.ident(x)) != x:
            report.add("identity-codomain", x)
    for pair, h in c.comp.items():
        if c.dom(h) != c.dom(pair[0]):
            report.add("comp-domain", pair, f"{h!r} should start at {c.dom(pair[0])!r}")
    for pair, h in c.comp.items():
        if c.cod(h) != c.cod(pair[1]):
            report.add("comp-codomain", pair, f"{h!r} should end at {c.cod(pair[1])!r}")
    failed = set(report.checks_failed())

    if not failed & {"identity-domain", "identity-codomain"}:
        for w, pair in c.ident_first.items():
            if c.comp(pair) != w:
                report.add("left-unit", pair, f"composes to {c.comp(pair)!r}, not {w!r}")
        for w, pair in c.ident_last.items():
            if c.comp(pair) != w:
                report.add("right-unit", pair, f"composes to {c.comp(pair)!r}, not {w!r}")

    if not failed & {"comp-domain", "comp-codomain"}:
        for t, front, back in zip(c.triples.apex, c.compose_front.images, c.compose_back.images):
            if c.comp(front) != c.comp(back):
                report.add("associativity", t, f"{c.comp(front)!r} != {c.comp(back)!r}")
    return report


def from_table(
    objects: Iterable[Label],
    arrows: Mapping[Label, tuple[Label, Label]],
    ident: Mapping[Label, Label],
    comp: Mapping[tuple, Label] | Callable[[tuple], Label],
    name: str = "",
) -> InternalCategory:
    """Assemble a category from elementwise data.

    ``arrows`` maps each arrow to its ``(dom, cod)`` and ``comp`` maps
    each composable pair ``(f, g)`` to "g after f".
    """
    obj = FinSet(objects, f"{name}.objects" if name else "")
    arr = FinSet(arrows, f"{name}.arrows" if name else "")
    dom = FinFn.of(arr, obj, {m: dc[0] for m, dc in arrows.items()}, "dom")
    cod = FinFn.of(arr, obj, {m: dc[1] for m, dc in arrows.items()}, "cod")
    unit = FinFn.of(obj, arr, ident, "ident")
    pairs = pullback(cod, dom)
    composite = FinFn.of(pairs.apex, arr, comp, "comp")
    return InternalCategory(obj, arr, dom, cod, unit, composite, name)


def discrete(s: FinSet | Iterable[Label], name: str = "") -> InternalCategory:
    objs = list(s)
    ids = {x: identity_label(x) for x in objs}
    return from_table(
        objs,
        {ids[x]: (x, x) for x in objs},
        ids,
        lambda pair: pair[0],
        name,
    )


def terminal_category(name: str = "1") -> InternalCategory:
    return discrete(["*"], name)


def codiscrete(s: FinSet | Iterable[Label], name: str = "") -> InternalCategory:
    """One arrow ``(x, y)`` between every ordered pair of objects."""
    obj = s if isinstance(s, FinSet) else FinSet(s)
    obj = obj.named(f"{name}.objects" if name else obj.name)
    sq = product(obj, obj)
    arr = sq.apex.named(f"{name}.arrows" if name else "")
    dom = FinFn(arr, obj, sq.p0.images, "dom")
    cod = FinFn(arr, obj, sq.p1.images, "cod")
    unit = FinFn.of(obj, arr, lambda x: (x, x), "ident")
    pairs = pullback(cod, dom)
    composite = FinFn.of(pairs.apex, arr, lambda p: (p[0][0], p[1][1]), "comp")
    return InternalCategory(obj, arr, dom, cod, unit, composite, name)


def monoid_category(
    elements: FinSet | Iterable[Label],
    table: Mapping[tuple, Label] | Callable[[Label, Label], Label],
    unit: Label,
    name: str = "",
) -> InternalCategory:
    """One-object category of a monoid.

    ``table[(x, y)]`` (or ``table(x, y)``) is the product ``x.y``; as
    composition, "g after f" is ``g.f``.  Validation of the result checks
    exactly the monoid laws.
    """
    elems = list(elements)
    if isinstance(table, Mapping):
        missing = [(x, y) for x in elems for y in elems if (x, y) not in table]
        if missing:
            raise StructureError(f"multiplication table undefined on {missing[0]!r}")
        mul = lambda x, y: table[(x, y)]  # noqa: E731
    else:
        mul = table
    if unit not in elems:
        raise StructureError(f"unit {unit!r} is not an element")
    return from_table(
        ["*"],
        {x: ("*", "*") for x in elems},
        {"*": unit},
        lambda pair: mul(pair[1], pair[0]),
        name,
    )


def free_on_acyclic_graph(
    vertices: Iterable[Label],
    edges: Iterable[tuple[str, Label, Label]],
    name: str = "",
) -> InternalCategory:
    """Free category on a finite acyclic graph.

    ``edges`` are ``(edge_name, source, target)``.  Arrows are the
    identities ``1_<v>`` followed by every nonempty path, listed by start
    vertex and then in depth-first order; a path is labelled by its edge
    names joined with ``";"``.
    """
    verts = list(vertices)
    edge_list = list(edges)
    known = set(verts)
    for e, s, t in edge_list:
        if s not in known or t not in known:
            raise StructureError(f"edge {e!r} has an endpoint outside the vertex set")
        if ";" in e:
            raise StructureError(f"edge name {e!r} contains ';'")
    sorter = graphlib.TopologicalSorter({v: set() for v in verts})
    for _, s, t in edge_list:
        sorter.add(t, s)
    try:
        sorter.prepare()
    except graphlib.CycleError as exc:
        raise CycleError("graph has a directed cycle; its free category is infinite", exc.args[1]) from None

    out: dict = {v: [] for v in verts}
    for e, s, t in edge_list:
        out[s].append((e, t))

    arrows: dict = {identity_label(v): (v, v) for v in verts}
    path_of: dict = {identity_label(v): () for v in verts}

    def walk(start: Label, at: Label, path: tuple) -> None:
        for e, t in out[at]:
            longer = path + (e,)
            label = ";".join(longer)
            arrows[label] = (start, t)
            path_of[label] = longer
            walk(start, t, longer)

    for v in verts:
        walk(v, v, ())

    def concat(pair: tuple) -> Label:
        f, g = pair
        joined = path_of[f] + path_of[g]
        if not joined:
            return f
        return ";".join(joined)

    return from_table(verts, arrows, {v: identity_label(v) for v in verts}, concat, name)


def walking_arrow(name: str = "2") -> InternalCategory:
    """Objects ``0``, ``1`` and a single nonidentity arrow ``u: 0 -> 1``."""
    return free_on_acyclic_graph(["0", "1"], [("u", "0", "1")], name)


def coproduct(c: InternalCategory, d: InternalCategory, name: str = "") -> InternalCategory:
    """Disjoint union, tagging labels with ``"L"`` or ``"R"``."""
    objects = [("L", x) for x in c.objects] + [("R", x) for x in d.objects]
    arrows = {("L", m): (("L", c.dom(m)), ("L", c.cod(m))) for m in c.arrows}
    arrows.update({("R", m): (("R", d.dom(m)), ("R", d.cod(m))) for m in d.arrows})
    ident = {("L", x): ("L", c.ident(x)) for x in c.objects}
    ident.update({("R", x): ("R", d.ident(x)) for x in d.objects})

    def comp(pair: tuple) -> Label:
        (tag, f), (_, g) = pair
        side = c if tag == "L" else d
        return (tag, side.comp((f, g)))

    return from_table(objects, arrows, ident, comp, name)

