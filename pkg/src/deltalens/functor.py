"""Internal functors, their two distinguished classes, and pullbacks of
categories.

The two classes that carry the whole theory are the
isomorphism-on-objects functors and the discrete opfibrations.  A
functor ``F: X -> Y`` is a discrete opfibration when the comparison
``<dom, F_arrows>: X_arrows -> X_objects x_{Y_objects} Y_arrows`` is a
bijection, i.e. every (object upstairs, arrow out of its image) has
exactly one lift.
"""
from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .category import InternalCategory
from .diagnostics import (
    CarrierMismatch,
    NotBijective,
    NotDiscreteOpfibration,
    Report,
    StructureError,
)
from .finset import (
    FinFn,
    Label,
    Pullback,
    compose,
    identity,
    inverse,
    is_bijection,
    mediate,
    preimage_counts,
    pullback,
)


@dataclass(frozen=True)
class InternalFunctor:
    src: InternalCategory
    dst: InternalCategory
    on_objects: FinFn
    on_arrows: FinFn
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        checks = (
            ("object map domain", self.on_objects.dom, self.src.objects),
            ("object map codomain", self.on_objects.cod, self.dst.objects),
            ("arrow map domain", self.on_arrows.dom, self.src.arrows),
            ("arrow map codomain", self.on_arrows.cod, self.dst.arrows),
        )
        for what, got, want in checks:
            if got != want:
                raise CarrierMismatch(f"functor {self.name}: {what}", got, want)

    @cached_property
    def on_pairs(self) -> FinFn:
        """Action on composable pairs, induced by the universal property."""
        f1 = self.on_arrows
        return mediate(compose(f1, self.src.first), compose(f1, self.src.second), self.dst.pairs)

    def __call__(self, x: Label) -> Label:
        """Apply to an arrow label."""
        return self.on_arrows(x)

    def __repr__(self) -> str:
        return f"<functor {self.name or ''} {self.src.name or '?'} -> {self.dst.name or '?'}>"


def functor_from_maps(
    src: InternalCategory,
    dst: InternalCategory,
    objects: Mapping,
    arrows: Mapping,
    name: str = "",
) -> InternalFunctor:
    return InternalFunctor(
        src,
        dst,
        FinFn.of(src.objects, dst.objects, objects),
        FinFn.of(src.arrows, dst.arrows, arrows),
        name,
    )


def validate_functor(F: InternalFunctor) -> Report:
    report = Report(f"functor {F.name}".strip())
    A, B = F.src, F.dst
    f0, f1 = F.on_objects, F.on_arrows
    for m in A.arrows:
        if B.dom(f1(m)) != f0(A.dom(m)):
            report.add("domain-square", m)
    for m in A.arrows:
        if B.cod(f1(m)) != f0(A.cod(m)):
            report.add("codomain-square", m)
    for x in A.objects:
        if f1(A.ident(x)) != B.ident(f0(x)):
            report.add("identity-square", x)
    if report.ok:
        for pair, image in F.on_pairs.items():
            if B.comp(image) != f1(A.comp(pair)):
                report.add("composition-square", pair)
    return report


def identity_functor(C: InternalCategory) -> InternalFunctor:
    return InternalFunctor(C, C, identity(C.objects), identity(C.arrows), f"1_{C.name}")


def compose_functors(G: InternalFunctor, F: InternalFunctor) -> InternalFunctor:
    """``G`` after ``F``."""
    if F.dst != G.src:
        raise CarrierMismatch("cannot compose functors", F.dst.name or F.dst, G.src.name or G.src)
    name = f"{G.name}.{F.name}" if G.name and F.name else ""
    return InternalFunctor(
        F.src,
        G.dst,
        compose(G.on_objects, F.on_objects),
        compose(G.on_arrows, F.on_arrows),
        name,
    )


def is_identity_on_objects(F: InternalFunctor) -> bool:
    return F.on_objects == identity(F.src.objects)


def is_isomorphism_on_objects(F: InternalFunctor) -> bool:
    return is_bijection(F.on_objects)


def is_isomorphism(F: InternalFunctor) -> bool:
    return is_bijection(F.on_objects) and is_bijection(F.on_arrows)


def is_faithful(F: InternalFunctor) -> bool:
    return faithfulness_defect(F) is None


def faithfulness_defect(F: InternalFunctor) -> tuple | None:
    """Two distinct parallel arrows with the same image, if any."""
    seen: dict = {}
    A = F.src
    for m, a, b, image in zip(A.arrows, A.dom.images, A.cod.images, F.on_arrows.images):
        key = (a, b, image)
        if key in seen:
            return (seen[key], m)
        seen[key] = m
    return None


# -- discrete (op)fibrations --------------------------------------------


def opfibration_pullback(F: InternalFunctor) -> Pullback:
    """Pairs ``(x, u)`` of an object upstairs and an arrow out of its image."""
    return pullback(F.on_objects, F.dst.dom)


def opfibration_comparison(F: InternalFunctor) -> FinFn:
    """``m |-> (dom m, F m)``."""
    return mediate(F.src.dom, F.on_arrows, opfibration_pullback(F))


def fibration_comparison(F: InternalFunctor) -> FinFn:
    """``m |-> (cod m, F m)``."""
    return mediate(F.src.cod, F.on_arrows, pullback(F.on_objects, F.dst.cod))


def is_discrete_opfibration(F: InternalFunctor) -> bool:
    return is_bijection(opfibration_comparison(F))


def is_discrete_fibration(F: InternalFunctor) -> bool:
    return is_bijection(fibration_comparison(F))


def opfibration_defect(F: InternalFunctor) -> tuple | None:
    """First ``(x, u)`` (in canonical order) whose number of lifts is not 1.

    Returns ``((x, u), count)`` or ``None`` for a discrete opfibration.
    """
    counts = preimage_counts(opfibration_comparison(F))
    for element, n in counts.items():
        if n != 1:
            return element, n
    return None


def dopf_lift_structure(F: InternalFunctor) -> FinFn:
    """The unique-lift map ``(x, u) |-> lift``, inverse to the comparison."""
    try:
        return inverse(opfibration_comparison(F))
    except NotBijective:
        element, n = opfibration_defect(F)
        raise NotDiscreteOpfibration(
            f"functor {F.name} is not a discrete opfibration: {n} lifts", element
        ) from None


# -- pullbacks in the category of categories ----------------------------


@dataclass(frozen=True)
class CatPullback:
    apex: InternalCategory
    p0: InternalFunctor
    p1: InternalFunctor
    left: InternalFunctor
    right: InternalFunctor


def pullback_in_cat(F: InternalFunctor, G: InternalFunctor, name: str = "") -> CatPullback:
    """Componentwise pullback of ``F: A -> B`` and ``G: C -> B``."""
    if F.dst != G.dst:
        raise CarrierMismatch("functors have different codomains", F.dst.name, G.dst.name)
    A, C = F.src, G.src
    obj = pullback(F.on_objects, G.on_objects)
    arr = pullback(F.on_arrows, G.on_arrows)
    dom = mediate(compose(A.dom, arr.p0), compose(C.dom, arr.p1), obj)
    cod = mediate(compose(A.cod, arr.p0), compose(C.cod, arr.p1), obj)
    ident = mediate(compose(A.ident, obj.p0), compose(C.ident, obj.p1), arr)
    pairs = pullback(cod, dom)
    left_pairs = mediate(compose(arr.p0, pairs.p0), compose(arr.p0, pairs.p1), A.pairs)
    right_pairs = mediate(compose(arr.p1, pairs.p0), compose(arr.p1, pairs.p1), C.pairs)
    comp = mediate(compose(A.comp, left_pairs), compose(C.comp, right_pairs), arr)
    apex = InternalCategory(obj.apex, arr.apex, dom, cod, ident, comp, name)
    p0 = InternalFunctor(apex, A, obj.p0, arr.p0, f"{name}.p0" if name else "")
    p1 = InternalFunctor(apex, C, obj.p1, arr.p1, f"{name}.p1" if name else "")
    return CatPullback(apex, p0, p1, F, G)


def mediate_functors(Q0: InternalFunctor, Q1: InternalFunctor, pb: CatPullback) -> InternalFunctor:
    if Q0.src != Q1.src:
        raise CarrierMismatch("cone legs have different domains", Q0.src.name, Q1.src.name)
    obj_pb = pullback(pb.left.on_objects, pb.right.on_objects)
    arr_pb = pullback(pb.left.on_arrows, pb.right.on_arrows)
    return InternalFunctor(
        Q0.src,
        pb.apex,
        mediate(Q0.on_objects, Q1.on_objects, obj_pb),
        mediate(Q0.on_arrows, Q1.on_arrows, arr_pb),
    )


# -- relabelling and isomorphism search ---------------------------------


def relabel(C: InternalCategory, objects: FinFn, arrows: FinFn, name: str = "") -> InternalFunctor:
    """Transport ``C`` along bijections of its carriers.

    Returns the isomorphism ``C -> C'`` whose codomain carries the new
    labels.
    """
    if objects.dom != C.objects or arrows.dom != C.arrows:
        raise CarrierMismatch("relabelling maps must start at the carriers", objects.dom, C.objects)
    obj_back = inverse(objects)
    arr_back = inverse(arrows)
    obj, arr = objects.cod, arrows.cod
    dom = compose(objects, C.dom, arr_back)
    cod = compose(objects, C.cod, arr_back)
    ident = compose(arrows, C.ident, obj_back)
    pairs = pullback(cod, dom)
    comp = FinFn.of(
        pairs.apex,
        arr,
        lambda p: arrows(C.comp((arr_back(p[0]), arr_back(p[1])))),
    )
    D = InternalCategory(obj, arr, dom, cod, ident, comp, name or C.name)
    return InternalFunctor(C, D, objects, arrows)


def relabel_objects(C: InternalCategory, objects: FinFn, name: str = "") -> InternalFunctor:
    return relabel(C, objects, identity(C.arrows), name)


def find_isomorphism(C: InternalCategory, D: InternalCategory) -> InternalFunctor | None:
    """Backtracking search for an isomorphism; meant for small categories."""
    if len(C.objects) != len(D.objects) or len(C.arrows) != len(D.arrows):
        return None
    c_obj, d_obj = list(C.objects), list(D.objects)
    c_hom = {(x, y): C.hom(x, y) for x in c_obj for y in c_obj}
    d_hom = {(x, y): D.hom(x, y) for x in d_obj for y in d_obj}

    def object_maps(i: int, chosen: dict):
        if i == len(c_obj):
            yield dict(chosen)
            return
        x = c_obj[i]
        used = set(chosen.values())
        for y in d_obj:
            if y in used:
                continue
            chosen[x] = y
            if all(
                len(c_hom[(x, x2)]) == len(d_hom[(y, chosen[x2])])
                and len(c_hom[(x2, x)]) == len(d_hom[(chosen[x2], y)])
                for x2 in c_obj[: i + 1]
            ):
                yield from object_maps(i + 1, chosen)
            del chosen[x]

    order = [m for m in C.arrows if not C.is_identity(m)]
    c_pairs = list(C.comp.items())

    for omap in object_maps(0, {}):
        amap = {C.ident(x): D.ident(omap[x]) for x in c_obj}

        def consistent() -> bool:
            for (f, g), h in c_pairs:
                if f in amap and g in amap and h in amap:
                    if D.comp((amap[f], amap[g])) != amap[h]:
                        return False
            return True

        def arrow_maps(i: int):
            if i == len(order):
                yield dict(amap)
                return
            m = order[i]
            used = set(amap.values())
            for n in d_hom[(omap[C.dom(m)], omap[C.cod(m)])]:
                if n in used or D.is_identity(n):
                    continue
                amap[m] = n
                if consistent():
                    yield from arrow_maps(i + 1)
                del amap[m]

        if not consistent():
            continue
        for found in arrow_maps(0):
            return functor_from_maps(C, D, omap, found)
    return None


def is_isomorphic(C: InternalCategory, D: InternalCategory) -> bool:
    return find_isomorphism(C, D) is not None


def enumerate_functors(A: InternalCategory, B: InternalCategory, limit: int | None = None):
    """Every functor ``A -> B``, by backtracking; tiny categories only."""
    a_obj = list(A.objects)
    order = [m for m in A.arrows if not A.is_identity(m)]
    pairs = list(A.comp.items())
    count = 0
    for images in itertools.product(B.objects.elements, repeat=len(a_obj)):
        omap = dict(zip(a_obj, images))
        amap = {A.ident(x): B.ident(omap[x]) for x in a_obj}

        def ok() -> bool:
            for (f, g), h in pairs:
                if f in amap and g in amap and h in amap and B.comp((amap[f], amap[g])) != amap[h]:
                    return False
            return True

        def extend(i: int):
            if i == len(order):
                yield dict(amap)
                return
            m = order[i]
            for n in B.hom(omap[A.dom(m)], omap[A.cod(m)]):
                amap[m] = n
                if ok():
                    yield from extend(i + 1)
                del amap[m]

        for found in extend(0):
            yield functor_from_maps(A, B, omap, found)
            count += 1
            if limit is not None and count >= limit:
                return


def functor_equal_up_to(F: InternalFunctor, G: InternalFunctor) -> bool:
    """Same object and arrow tables, ignoring category names."""
    return F.on_objects == G.on_objects and F.on_arrows == G.on_arrows


def check_functor_shape(F: InternalFunctor) -> None:
    """Raise unless ``F`` is a functor (used as a precondition guard)."""
    report = validate_functor(F)
    if not report.ok:
        raise StructureError(f"not a functor: {report.first()}")


__all__ = [name for name in dir() if not name.startswith("_")]
