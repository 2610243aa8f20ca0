"""Internal lenses: a functor ``f: A -> B`` with a cofunctor ``B -|> A``
on the same base map whose lifts ``f`` sends back to the requested arrow.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .category import InternalCategory, codiscrete
from .cofunctor import (
    InternalCofunctor,
    SpanRep,
    compose_cofunctors_formula,
    compose_spans,
    cofunctor_from_dopf,
    cofunctor_to_span,
    identity_cofunctor,
    span_to_cofunctor,
    validate_cofunctor,
)
from .diagnostics import CarrierMismatch, LawViolation, Report, TriangleError
from .finset import FinFn, compose, is_bijection, product
from .functor import (
    InternalFunctor,
    compose_functors,
    faithfulness_defect,
    identity_functor,
    mediate_functors,
    pullback_in_cat,
    validate_functor,
)


@dataclass(frozen=True)
class InternalLens:
    functor: InternalFunctor
    cofunctor: InternalCofunctor
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.functor.src != self.cofunctor.dst:
            raise CarrierMismatch("lens functor and cofunctor disagree on the source", self.functor.src.name, self.cofunctor.dst.name)
        if self.functor.dst != self.cofunctor.src:
            raise CarrierMismatch("lens functor and cofunctor disagree on the view", self.functor.dst.name, self.cofunctor.src.name)

    @classmethod
    def from_lifts(cls, functor: InternalFunctor, lifts: Mapping, name: str = "") -> InternalLens:
        """``lifts[(a, u)]`` for each nonidentity request; identities are implied."""
        cof = InternalCofunctor.from_lifts(functor.dst, functor.src, functor.on_objects, lifts, name)
        return cls(functor, cof, name)

    @property
    def src(self) -> InternalCategory:
        return self.functor.src

    @property
    def dst(self) -> InternalCategory:
        return self.functor.dst

    @property
    def lift(self) -> FinFn:
        return self.cofunctor.lift

    def __repr__(self) -> str:
        return f"<lens {self.name or ''} {self.src.name or '?'} => {self.dst.name or '?'}>"


def validate_lens(L: InternalLens) -> Report:
    report = Report(f"lens {L.name}".strip())
    report.nested["functor"] = validate_functor(L.functor)
    report.nested["cofunctor"] = validate_cofunctor(L.cofunctor)
    f, phi = L.functor, L.cofunctor
    for a, x, y in zip(f.src.objects, f.on_objects.images, phi.base.images):
        if x != y:
            report.add("left-triangle", a, f"functor sends it to {x!r}, base map to {y!r}")
    image = compose(f.on_arrows, phi.lift)
    for req, m, u in zip(phi.requests.apex, image.images, phi.request_arrow.images):
        if m != u:
            report.add("right-triangle", req, f"lift maps to {m!r}")
    return report


def identity_lens(A: InternalCategory) -> InternalLens:
    return InternalLens(identity_functor(A), identity_cofunctor(A), f"1_{A.name}" if A.name else "")


def dopf_lens(F: InternalFunctor) -> InternalLens:
    """A discrete opfibration with its unique lifts."""
    return InternalLens(F, cofunctor_from_dopf(F), F.name)


def is_dopf_lens(L: InternalLens) -> bool:
    """The lifting map is a bijection exactly for discrete opfibrations."""
    return is_bijection(L.lift)


# -- triangle representation --------------------------------------------


@dataclass(frozen=True)
class TriangleRep:
    span: SpanRep
    functor: InternalFunctor
    report: Report


def lens_to_triangle(L: InternalLens) -> TriangleRep:
    span = cofunctor_to_span(L.cofunctor)
    report = Report("triangle")
    composite = compose_functors(L.functor, span.right)
    for x, a, b in zip(span.apex.objects, composite.on_objects.images, span.left.on_objects.images):
        if a != b:
            report.add("triangle-commutes", x)
    for m, a, b in zip(span.apex.arrows, composite.on_arrows.images, span.left.on_arrows.images):
        if a != b:
            report.add("triangle-commutes", m)
    defect = faithfulness_defect(span.right)
    if defect is not None:
        report.add("right-leg-faithful", defect)
    return TriangleRep(span, L.functor, report)


def triangle_to_lens(
    right: InternalFunctor, left: InternalFunctor, functor: InternalFunctor, name: str = ""
) -> InternalLens:
    """Lens from ``right: X -> A`` (bijective on objects), ``left: X -> B``
    (a discrete opfibration) and ``functor: A -> B`` with
    ``functor . right == left``."""
    composite = compose_functors(functor, right)
    for x, a, b in zip(right.src.objects, composite.on_objects.images, left.on_objects.images):
        if a != b:
            raise TriangleError("triangle does not commute on objects", x)
    for m, a, b in zip(right.src.arrows, composite.on_arrows.images, left.on_arrows.images):
        if a != b:
            raise TriangleError("triangle does not commute on arrows", m)
    return InternalLens(functor, span_to_cofunctor(left, right, name), name)


# -- composition and pullback -------------------------------------------


def compose_lenses(second: InternalLens, first: InternalLens) -> InternalLens:
    """``second`` after ``first``, for ``first: A => B`` and ``second: B => C``."""
    if first.dst != second.src:
        raise CarrierMismatch("lenses do not meet", first.dst.name, second.src.name)
    name = f"{second.name}.{first.name}" if second.name and first.name else ""
    return InternalLens(
        compose_functors(second.functor, first.functor),
        compose_cofunctors_formula(first.cofunctor, second.cofunctor),
        name,
    )


def compose_lenses_pullback(second: InternalLens, first: InternalLens) -> InternalLens:
    """Composite built from the triangles by a pullback of categories."""
    if first.dst != second.src:
        raise CarrierMismatch("lenses do not meet", first.dst.name, second.src.name)
    span = compose_spans(cofunctor_to_span(first.cofunctor), cofunctor_to_span(second.cofunctor))
    name = f"{second.name}.{first.name}" if second.name and first.name else ""
    return triangle_to_lens(span.right, span.left, compose_functors(second.functor, first.functor), name)


@dataclass(frozen=True)
class PulledBackLens:
    lens: InternalLens
    apex: InternalCategory
    p0: InternalFunctor


def pullback_lens(L: InternalLens, g: InternalFunctor, name: str = "") -> PulledBackLens:
    """Lens on the projection ``A x_B C -> C`` for ``L: A => B``, ``g: C -> B``.

    ``p0`` is the other projection ``A x_B C -> A``.
    """
    if g.dst != L.dst:
        raise CarrierMismatch("functor does not land in the lens view", g.dst.name, L.dst.name)
    span = cofunctor_to_span(L.cofunctor)
    upstairs = pullback_in_cat(L.functor, g, name)
    lifted = pullback_in_cat(span.left, g)
    # both apexes have objects (a, c) with f a = g c
    compare = mediate_functors(
        compose_functors(span.right, lifted.p0), lifted.p1, upstairs
    )
    lens = triangle_to_lens(compare, lifted.p1, upstairs.p1, name)
    return PulledBackLens(lens, upstairs.apex, upstairs.p0)


# -- stock examples -----------------------------------------------------


def vwb_lens(get: FinFn, put: FinFn, name: str = "") -> InternalLens:
    """Lens between codiscrete categories from a very well-behaved lens.

    ``get: S -> V`` and ``put: S x V -> S`` with ``put((s, v))`` the
    updated source.  Raises :class:`LawViolation` naming the first
    failing law among PutGet, GetPut, PutPut.
    """
    S, V = get.dom, get.cod
    sq = product(S, V)
    if put.dom != sq.apex or put.cod != S:
        raise CarrierMismatch("put must map source x view to source", put.dom, sq.apex)
    for (s, v), s2 in put.items():
        if get(s2) != v:
            raise LawViolation("PutGet", (s, v))
    for s in S:
        if put((s, get(s))) != s:
            raise LawViolation("GetPut", s)
    for (s, v), s2 in put.items():
        for v2 in V:
            if put((s2, v2)) != put((s, v2)):
                raise LawViolation("PutPut", (s, v, v2))
    A = codiscrete(S, f"{name}.source" if name else "S")
    B = codiscrete(V, f"{name}.view" if name else "V")
    functor = InternalFunctor(
        A, B, FinFn(A.objects, B.objects, get.images), FinFn.of(A.arrows, B.arrows, lambda m: (get(m[0]), get(m[1])))
    )
    lifts = {(s, (get(s), v)): (s, put((s, v))) for s in S for v in V}
    return InternalLens.from_lifts(functor, lifts, name)


def monoid_section_lens(
    f: InternalFunctor, section: InternalFunctor, name: str = ""
) -> InternalLens:
    """Lens from a monoid homomorphism with a homomorphic right inverse."""
    if section.src != f.dst or section.dst != f.src:
        raise CarrierMismatch("section has the wrong boundary", section.src.name, f.dst.name)
    for label, F in (("functor", f), ("section", section)):
        report = validate_functor(F)
        if not report.ok:
            raise LawViolation(f"{label} is a homomorphism", report.first().witness)
    for b in f.dst.arrows:
        if f(section(b)) != b:
            raise LawViolation("section", b)
    lifts = {("*", b): section(b) for b in f.dst.arrows}
    return InternalLens.from_lifts(f, lifts, name)
