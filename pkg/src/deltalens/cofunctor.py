"""Internal cofunctors, the category of chosen lifts, and spans.

Direction convention: a cofunctor ``phi: B -|> A`` lifts arrows *from*
``B`` *to* ``A``.  The value stores ``src = B`` and ``dst = A``, while
its base map still runs ``A_objects -> B_objects``.

Carriers:

* requests ``(a, u)``: an object of ``A`` with an arrow ``u`` of ``B``
  leaving its base point (the pullback of the base map and ``B.dom``);
* request chains ``((a, u), (u, v))``: a request together with a second
  arrow composable after ``u``.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .category import InternalCategory
from .diagnostics import (
    CarrierMismatch,
    NotDiscreteOpfibration,
    NotIsoOnObjects,
    Report,
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
    pullback,
)
from .functor import (
    InternalFunctor,
    compose_functors,
    dopf_lift_structure,
    is_discrete_opfibration,
    opfibration_defect,
    pullback_in_cat,
    relabel_objects,
)


@dataclass(frozen=True)
class InternalCofunctor:
    src: InternalCategory
    dst: InternalCategory
    base: FinFn
    lift: FinFn
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.base.dom != self.dst.objects:
            raise CarrierMismatch("base map must start at the lifted category's objects", self.base.dom, self.dst.objects)
        if self.base.cod != self.src.objects:
            raise CarrierMismatch("base map must land in the base category's objects", self.base.cod, self.src.objects)
        if self.lift.dom != self.requests.apex:
            raise CarrierMismatch("lifting map must be defined on the requests", self.lift.dom, self.requests.apex)
        if self.lift.cod != self.dst.arrows:
            raise CarrierMismatch("lifting map must land in the lifted arrows", self.lift.cod, self.dst.arrows)

    @classmethod
    def from_lifts(
        cls,
        src: InternalCategory,
        dst: InternalCategory,
        base: Mapping | FinFn,
        lifts: Mapping,
        name: str = "",
    ) -> InternalCofunctor:
        """Build from ``{(a, u): m}``; lifts of identities may be omitted."""
        base_fn = base if isinstance(base, FinFn) else FinFn.of(dst.objects, src.objects, base)
        requests = pullback(base_fn, src.dom)

        def rule(req: tuple) -> Label:
            if req in lifts:
                return lifts[req]
            a, u = req
            if src.is_identity(u):
                return dst.ident(a)
            raise CarrierMismatch("no lift given for request", req, "lifts")

        return cls(src, dst, base_fn, FinFn.of(requests.apex, dst.arrows, rule), name)

    # -- derived structure -----------------------------------------------

    @cached_property
    def requests(self) -> Pullback:
        return pullback(self.base, self.src.dom)

    @property
    def request_state(self) -> FinFn:
        """``(a, u) |-> a``."""
        return self.requests.p0

    @property
    def request_arrow(self) -> FinFn:
        """``(a, u) |-> u``."""
        return self.requests.p1

    @cached_property
    def lifted_target(self) -> FinFn:
        """``(a, u) |-> cod(lift(a, u))``."""
        return compose(self.dst.cod, self.lift)

    @cached_property
    def unit_request(self) -> FinFn:
        """``a |-> (a, 1_{base a})``."""
        return mediate(identity(self.dst.objects), compose(self.src.ident, self.base), self.requests)

    @cached_property
    def request_chains(self) -> Pullback:
        return pullback(self.request_arrow, self.src.first)

    @cached_property
    def chain_compose(self) -> FinFn:
        """``((a, u), (u, v)) |-> (a, v.u)``."""
        ch = self.request_chains
        return mediate(compose(self.request_state, ch.p0), compose(self.src.comp, ch.p1), self.requests)

    @cached_property
    def chain_next(self) -> FinFn:
        """``((a, u), (u, v)) |-> (cod lift(a, u), v)``."""
        ch = self.request_chains
        return mediate(compose(self.lifted_target, ch.p0), compose(self.src.second, ch.p1), self.requests)

    @cached_property
    def chain_lifts(self) -> FinFn:
        """``((a, u), (u, v)) |-> (lift(a, u), lift(chain_next))``."""
        ch = self.request_chains
        return mediate(compose(self.lift, ch.p0), compose(self.lift, self.chain_next), self.dst.pairs)

    def __call__(self, a: Label, u: Label) -> Label:
        return self.lift((a, u))

    def __repr__(self) -> str:
        return f"<cofunctor {self.name or ''} {self.src.name or '?'} -|> {self.dst.name or '?'}>"


def validate_cofunctor(phi: InternalCofunctor) -> Report:
    report = Report(f"cofunctor {phi.name}".strip())
    A, B = phi.dst, phi.src
    for req, m in phi.lift.items():
        if A.dom(m) != req[0]:
            report.add("domain", req, f"lift {m!r} starts at {A.dom(m)!r}")
    for req, m in phi.lift.items():
        if phi.base(A.cod(m)) != B.cod(req[1]):
            report.add("codomain", req, f"lift {m!r} ends over {phi.base(A.cod(m))!r}")
    for a in A.objects:
        if phi.lift(phi.unit_request(a)) != A.ident(a):
            report.add("identity", a)
    if report.ok:
        composite = compose(phi.lift, phi.chain_compose)
        stepwise = compose(A.comp, phi.chain_lifts)
        for chain, x, y in zip(phi.request_chains.apex, composite.images, stepwise.images):
            if x != y:
                report.add("composition", chain, f"{x!r} != {y!r}")
    return report


def identity_cofunctor(A: InternalCategory) -> InternalCofunctor:
    base = identity(A.objects)
    req = pullback(base, A.dom)
    return InternalCofunctor(A, A, base, req.p1, f"1_{A.name}" if A.name else "")


def cofunctor_from_dopf(F: InternalFunctor) -> InternalCofunctor:
    """The unique lifts of a discrete opfibration ``F: A -> B``, as ``B -|> A``."""
    return InternalCofunctor(F.dst, F.src, F.on_objects, dopf_lift_structure(F), F.name)


def cofunctor_from_iso_on_objects(G: InternalFunctor) -> InternalCofunctor:
    """``G: A -> B`` bijective on objects gives ``A -|> B`` by ``(b, m) |-> G m``."""
    if not is_bijection(G.on_objects):
        raise NotIsoOnObjects("functor is not bijective on objects", G.name)
    base = inverse(G.on_objects)
    req = pullback(base, G.src.dom)
    return InternalCofunctor(G.src, G.dst, base, compose(G.on_arrows, req.p1), G.name)


# -- the category of chosen lifts and the span representation -----------


def lambda_category(phi: InternalCofunctor) -> InternalCategory:
    """Objects of ``A``, arrows the requests, target the lifted codomain."""
    A = phi.dst
    B = phi.src
    requests = phi.requests.apex
    dom = phi.request_state
    cod = phi.lifted_target
    pairs = pullback(cod, dom)
    # ((a, u), (a', v)) with a' the lifted target is a request chain
    arrows_of = mediate(
        compose(phi.request_arrow, pairs.p0), compose(phi.request_arrow, pairs.p1), B.pairs
    )
    to_chain = mediate(pairs.p0, arrows_of, phi.request_chains)
    comp = compose(phi.chain_compose, to_chain)
    name = f"L({phi.name})" if phi.name else ""
    return InternalCategory(A.objects, requests, dom, cod, phi.unit_request, comp, name)


@dataclass(frozen=True)
class SpanRep:
    """``left: apex -> B`` a discrete opfibration, ``right: apex -> A``."""

    apex: InternalCategory
    left: InternalFunctor
    right: InternalFunctor


def cofunctor_to_span(phi: InternalCofunctor) -> SpanRep:
    apex = lambda_category(phi)
    left = InternalFunctor(apex, phi.src, phi.base, phi.request_arrow, "left")
    right = InternalFunctor(apex, phi.dst, identity(phi.dst.objects), phi.lift, "right")
    return SpanRep(apex, left, right)


def span_to_cofunctor(left: InternalFunctor, right: InternalFunctor, name: str = "") -> InternalCofunctor:
    """Cofunctor from a span whose left leg is a discrete opfibration and
    whose right leg is bijective on objects."""
    if left.src != right.src:
        raise CarrierMismatch("span legs have different apexes", left.src.name, right.src.name)
    if not is_bijection(right.on_objects):
        raise NotIsoOnObjects("right leg is not bijective on objects", right.name)
    if not is_discrete_opfibration(left):
        element, n = opfibration_defect(left)
        raise NotDiscreteOpfibration(f"left leg is not a discrete opfibration: {n} lifts", element)
    back = inverse(right.on_objects)
    base = compose(left.on_objects, back)
    requests = pullback(base, left.dst.dom)
    upstairs = mediate(compose(back, requests.p0), requests.p1, pullback(left.on_objects, left.dst.dom))
    lift = compose(right.on_arrows, dopf_lift_structure(left), upstairs)
    return InternalCofunctor(left.dst, right.dst, base, lift, name)


def compose_cofunctors_formula(phi: InternalCofunctor, gamma: InternalCofunctor) -> InternalCofunctor:
    """``phi . gamma: C -|> A`` for ``gamma: C -|> B`` and ``phi: B -|> A``."""
    if gamma.dst != phi.src:
        raise CarrierMismatch("cofunctors do not meet", gamma.dst.name, phi.src.name)
    base = compose(gamma.base, phi.base)
    requests = pullback(base, gamma.src.dom)
    # (a, w) |-> (base a, w) |-> gamma lift |-> (a, that) |-> phi lift
    inner = mediate(compose(phi.base, requests.p0), requests.p1, gamma.requests)
    outer = mediate(requests.p0, compose(gamma.lift, inner), phi.requests)
    name = f"{phi.name}.{gamma.name}" if phi.name and gamma.name else ""
    return InternalCofunctor(gamma.src, phi.dst, base, compose(phi.lift, outer), name)


def compose_spans(phi: SpanRep, gamma: SpanRep) -> SpanRep:
    """Compose representative spans through a pullback of categories and
    relabel the apex objects to those of the far right category."""
    pb = pullback_in_cat(gamma.right, phi.left)
    left = compose_functors(gamma.left, pb.p0)
    right = compose_functors(phi.right, pb.p1)
    iso = relabel_objects(pb.apex, right.on_objects)
    apex = iso.dst
    back = inverse(iso.on_objects)
    left = InternalFunctor(apex, left.dst, compose(left.on_objects, back), left.on_arrows, "left")
    right = InternalFunctor(apex, right.dst, identity(apex.objects), right.on_arrows, "right")
    return SpanRep(apex, left, right)


def compose_cofunctors_span(phi: InternalCofunctor, gamma: InternalCofunctor) -> InternalCofunctor:
    if gamma.dst != phi.src:
        raise CarrierMismatch("cofunctors do not meet", gamma.dst.name, phi.src.name)
    span = compose_spans(cofunctor_to_span(phi), cofunctor_to_span(gamma))
    name = f"{phi.name}.{gamma.name}" if phi.name and gamma.name else ""
    return span_to_cofunctor(span.left, span.right, name)
