"""Strict factorisation systems and the vertical/lift factorisation of a lens.

For a lens ``(f, phi): A => B`` every arrow ``w: a -> a'`` may be
compared with the lift of its image, ``phi(a, f w)``.  The lens is a
split opfibration exactly when every ``w`` factors uniquely as that lift
followed by a *vertical* arrow (one that ``f`` sends to an identity).
The vertical part is ``chi(w)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .category import InternalCategory
from .cofunctor import cofunctor_to_span
from .diagnostics import ConeError, NotSplitOpfibration, Report
from .finset import FinFn, Pullback, bijection_defect, compose, identity, inverse, mediate, pullback
from .functor import InternalFunctor, faithfulness_defect, is_identity_on_objects
from .lens import InternalLens
from .sopf import SopfWitness, Verdict, certify_psi, require_valid, triangle_request, triangles


@dataclass(frozen=True)
class VerticalCategory:
    """Arrows sent to identities; ``fibre`` maps each to its base point."""

    category: InternalCategory
    inclusion: InternalFunctor
    fibre: FinFn


def vertical_category(F: InternalFunctor) -> VerticalCategory:
    A, B = F.src, F.dst
    arrows = A.arrows.subset(lambda w: B.is_identity(F(w)), f"V{A.name}.arrows" if A.name else "")
    include = FinFn(arrows, A.arrows, arrows.elements)
    dom = compose(A.dom, include)
    cod = compose(A.cod, include)
    ident = FinFn(A.objects, arrows, A.ident.images)
    pairs = pullback(cod, dom)
    comp = FinFn.of(pairs.apex, arrows, A.comp)
    V = InternalCategory(A.objects, arrows, dom, cod, ident, comp, f"V{A.name}" if A.name else "")
    j = InternalFunctor(V, A, identity(A.objects), include, "j")
    return VerticalCategory(V, j, compose(B.dom, F.on_arrows, include))


@dataclass(frozen=True)
class StrictFactorisationSystem:
    base: InternalCategory
    left: InternalFunctor
    right: InternalFunctor

    @cached_property
    def factorisations(self) -> Pullback:
        """``(x, y)`` with ``x`` from the left class followed by ``y`` from the right."""
        return pullback(self.left.src.cod, self.right.src.dom)

    @cached_property
    def mix(self) -> FinFn:
        pb = self.factorisations
        pair = mediate(
            compose(self.left.on_arrows, pb.p0), compose(self.right.on_arrows, pb.p1), self.base.pairs
        )
        return compose(self.base.comp, pair)


def validate_sfs(S: StrictFactorisationSystem) -> Report:
    report = Report("factorisation system")
    for side, F in (("left", S.left), ("right", S.right)):
        if not is_identity_on_objects(F):
            report.add(f"{side}-identity-on-objects", F.name)
        defect = faithfulness_defect(F)
        if defect is not None:
            report.add(f"{side}-faithful", defect)
    defect = bijection_defect(S.mix)
    if defect is not None:
        kind, where = defect
        if kind == "collision":
            report.add("unique-factorisation", S.mix(where[0]), f"two factorisations {where[0]!r}, {where[1]!r}")
        else:
            report.add("unique-factorisation", where, "no factorisation")
    return report


def lens_factorisation_system(L: InternalLens) -> tuple[StrictFactorisationSystem, VerticalCategory]:
    span = cofunctor_to_span(L.cofunctor)
    vert = vertical_category(L.functor)
    return StrictFactorisationSystem(L.src, span.right, vert.inclusion), vert


def _triple_of(L: InternalLens, w) -> tuple:
    u = L.functor(w)
    return (w, u, L.dst.ident(L.dst.cod(u)))


def check_sopf_factorisation(L: InternalLens) -> Verdict:
    require_valid(L)
    S, _ = lens_factorisation_system(L)
    report = validate_sfs(S)
    if report.ok:
        return Verdict(True, "factorisation")
    v = report.first()
    triple = _triple_of(L, v.witness) if v.check == "unique-factorisation" else None
    return Verdict(False, "factorisation", v.witness, triple, f"{v.check}: {v.detail}")


# -- chi structure ------------------------------------------------------


@dataclass(frozen=True)
class FactorisationWitness:
    lens: InternalLens
    chi: FinFn
    report: Report = field(compare=False)

    @cached_property
    def chihat(self) -> FinFn:
        """``w |-> (phi(dom w, f w), chi w)``."""
        return chihat_of(self.lens, self.chi)


def own_request(L: InternalLens) -> FinFn:
    """``w |-> (dom w, f w)``."""
    return mediate(L.src.dom, L.functor.on_arrows, L.cofunctor.requests)


def chihat_of(L: InternalLens, chi: FinFn) -> FinFn:
    return mediate(compose(L.lift, own_request(L)), chi, L.src.pairs)


def check_chi_axioms(L: InternalLens, chi: FinFn) -> Report:
    """The four axioms in the order dom, unique, fibre, comp."""
    A, B = L.src, L.dst
    report = Report("chi")
    got = compose(A.dom, chi)
    want = compose(A.cod, L.lift, own_request(L))
    for w, x, y in zip(A.arrows, got.images, want.images):
        if x != y:
            report.add("dom", w, f"{x!r} != {y!r}")
    S, _ = lens_factorisation_system(L)
    fact = S.factorisations
    got = compose(chi, S.mix)
    want = compose(S.right.on_arrows, fact.p1)
    for e, x, y in zip(fact.apex, got.images, want.images):
        if x != y:
            report.add("unique", e, f"{x!r} != {y!r}")
    got = compose(L.functor.on_arrows, chi)
    want = compose(B.ident, B.cod, L.functor.on_arrows)
    for w, x, y in zip(A.arrows, got.images, want.images):
        if x != y:
            report.add("fibre", w, f"{x!r} != {y!r}")
    if not report.find("dom"):
        composite = compose(A.comp, chihat_of(L, chi))
        for w, x in zip(A.arrows, composite.images):
            if x != w:
                report.add("comp", w, f"recomposes to {x!r}")
    return report


def certify_chi(L: InternalLens, chi: FinFn) -> FactorisationWitness:
    report = check_chi_axioms(L, chi)
    if not report.ok:
        v = report.first()
        raise NotSplitOpfibration(v.check, v.witness)
    return FactorisationWitness(L, chi, report)


def extract_chi(L: InternalLens) -> FactorisationWitness:
    verdict = check_sopf_factorisation(L)
    if not verdict.holds:
        raise NotSplitOpfibration("no unique factorisation", verdict.triple)
    S, _ = lens_factorisation_system(L)
    chi = compose(S.right.on_arrows, S.factorisations.p1, inverse(S.mix))
    return certify_chi(L, chi)


def chi_from_psi(W: SopfWitness) -> FactorisationWitness:
    """``chi(w) = psi(w, f w, 1)``."""
    L = W.lens
    B = L.dst
    f1 = L.functor.on_arrows
    with_unit = mediate(f1, compose(B.ident, B.cod, f1), B.pairs)
    to_triangle = mediate(identity(L.src.arrows), with_unit, triangles(L))
    return certify_chi(L, compose(W.psi, to_triangle))


def psi_from_chi(W: FactorisationWitness) -> SopfWitness:
    """``psi(w, u, v) = chi(w) . phi(cod phi(dom w, u), v)``."""
    L = W.lens
    phi = L.cofunctor
    tri = triangles(L)
    first = triangle_request(L)
    next_request = mediate(compose(phi.lifted_target, first), compose(L.dst.second, tri.p1), phi.requests)
    pair = mediate(compose(L.lift, next_request), compose(W.chi, tri.p0), L.src.pairs)
    return certify_psi(L, compose(L.src.comp, pair))


def check_johnstone_diagrams(W: FactorisationWitness) -> Report:
    """Four consequences of the chi axioms, each reported separately."""
    L, chi = W.lens, W.chi
    A = L.src
    phi = L.cofunctor
    report = Report("derived diagrams")
    got = compose(chi, L.lift)
    want = compose(A.ident, phi.lifted_target)
    for r, x, y in zip(phi.requests.apex, got.images, want.images):
        if x != y:
            report.add("lift-residue", r, f"{x!r} != {y!r}")
    try:
        inner = mediate(
            compose(chi, A.first), compose(L.lift, own_request(L), A.second), A.pairs
        )
        outer = mediate(compose(chi, A.comp, inner), compose(chi, A.second), A.pairs)
        got = compose(A.comp, outer)
        want = compose(chi, A.comp)
        for p, x, y in zip(A.pairs.apex, got.images, want.images):
            if x != y:
                report.add("composite-residue", p, f"{x!r} != {y!r}")
    except ConeError as exc:
        report.add("composite-residue", exc.witness, "composite is not defined")
    got = compose(A.cod, chi)
    for w, x, y in zip(A.arrows, got.images, A.cod.images):
        if x != y:
            report.add("codomain", w, f"{x!r} != {y!r}")
    got = compose(chi, chi)
    for w, x, y in zip(A.arrows, got.images, chi.images):
        if x != y:
            report.add("idempotent", w, f"{x!r} != {y!r}")
    return report
