"""Split opfibrations.

A lens ``(f, phi): A => B`` is a split opfibration when its chosen lifts
are opcartesian.  Three characterisations live here; a fourth (strict
factorisation) lives in :mod:`deltalens.factorisation`.

``pullback``
    the comparison ``((a, u), (phi(a, u), m)) |-> (m . phi(a, u), (u, f m))``
    from *extensions* of lifts to *triangles* ``(w, (u, v))`` with
    ``f w = v . u`` is a bijection;
``decalage``
    the functor ``Lambda x_A DA -> DB`` is a discrete opfibration;
``oracle``
    direct count, over every triangle, of the arrows ``m`` with
    ``f m = v`` and ``m . phi(dom w, u) = w``.

Failing verdicts carry a triangle ``(w, u, v)`` written as a flat triple.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .category import InternalCategory
from .cofunctor import InternalCofunctor, cofunctor_to_span
from .diagnostics import NotSplitOpfibration, Report
from .finset import FinFn, Pullback, compose, inverse, is_bijection, mediate, preimage_counts, pullback
from .functor import (
    InternalFunctor,
    compose_functors,
    opfibration_comparison,
    pullback_in_cat,
)
from .lens import InternalLens, validate_lens


@dataclass(frozen=True)
class Verdict:
    holds: bool
    method: str
    witness: Any = None
    triple: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


def require_valid(L: InternalLens) -> None:
    validate_lens(L).require("lens is not valid")


# -- triangles and extensions -------------------------------------------


def triangles(L: InternalLens) -> Pullback:
    """``(w, (u, v))`` with ``f w == v . u``."""
    return pullback(L.functor.on_arrows, L.dst.comp)


def extensions(L: InternalLens) -> Pullback:
    """``((a, u), (phi(a, u), m))``: a lift followed by any arrow."""
    return pullback(L.lift, L.src.first)


def comparison(L: InternalLens) -> FinFn:
    """extensions -> triangles, ``(r, (l, m)) |-> (m . l, (f l, f m))``."""
    ext = extensions(L)
    return mediate(
        compose(L.src.comp, ext.p1), compose(L.functor.on_pairs, ext.p1), triangles(L)
    )


def triangle_request(L: InternalLens) -> FinFn:
    """triangles -> requests, ``(w, (u, v)) |-> (dom w, u)``."""
    tri = triangles(L)
    return mediate(compose(L.src.dom, tri.p0), compose(L.dst.first, tri.p1), L.cofunctor.requests)


def as_triple(element: tuple) -> tuple:
    w, (u, v) = element
    return (w, u, v)


def check_sopf_pullback(L: InternalLens) -> Verdict:
    require_valid(L)
    k = comparison(L)
    for element, n in preimage_counts(k).items():
        if n != 1:
            kind = "no" if n == 0 else f"{n}"
            return Verdict(False, "pullback", element, as_triple(element), f"{kind} preimages")
    return Verdict(True, "pullback")


# -- psi structure ------------------------------------------------------


@dataclass(frozen=True)
class SopfWitness:
    """Lens with its map ``psi: triangles -> A_arrows`` choosing the
    unique factorisation of each ``w`` through the lift of ``u``."""

    lens: InternalLens
    psi: FinFn
    report: Report = field(compare=False)

    @cached_property
    def psihat(self) -> FinFn:
        """``(w, (u, v)) |-> (phi(dom w, u), psi(w, u, v))``."""
        return psihat_of(self.lens, self.psi)


def psihat_of(L: InternalLens, psi: FinFn) -> FinFn:
    return mediate(compose(L.lift, triangle_request(L)), psi, L.src.pairs)


def check_psi_axioms(L: InternalLens, psi: FinFn) -> Report:
    """The four axioms in the order dom, unique, lift, comp."""
    A, B = L.src, L.dst
    report = Report("psi")
    tri = triangles(L)
    expected_dom = compose(A.cod, L.lift, triangle_request(L))
    got_dom = compose(A.dom, psi)
    for t, x, y in zip(tri.apex, got_dom.images, expected_dom.images):
        if x != y:
            report.add("dom", t, f"{x!r} != {y!r}")
    ext = extensions(L)
    got = compose(psi, comparison(L))
    for e, x, y in zip(ext.apex, got.images, compose(A.second, ext.p1).images):
        if x != y:
            report.add("unique", e, f"{x!r} != {y!r}")
    image = compose(L.functor.on_arrows, psi)
    for t, x, y in zip(tri.apex, image.images, compose(B.second, tri.p1).images):
        if x != y:
            report.add("lift", t, f"{x!r} != {y!r}")
    if not report.find("dom"):
        composite = compose(A.comp, psihat_of(L, psi))
        for t, x, y in zip(tri.apex, composite.images, tri.p0.images):
            if x != y:
                report.add("comp", t, f"{x!r} != {y!r}")
    return report


def extract_psi(L: InternalLens) -> SopfWitness:
    verdict = check_sopf_pullback(L)
    if not verdict.holds:
        raise NotSplitOpfibration("comparison has no inverse", verdict.triple)
    psi = compose(L.src.second, extensions(L).p1, inverse(comparison(L)))
    return certify_psi(L, psi)


def certify_psi(L: InternalLens, psi: FinFn) -> SopfWitness:
    report = check_psi_axioms(L, psi)
    if not report.ok:
        v = report.first()
        raise NotSplitOpfibration(v.check, v.witness)
    return SopfWitness(L, psi, report)


# -- opcartesian oracle -------------------------------------------------


def opcartesian_oracle(L: InternalLens) -> Verdict:
    """Elementwise count; shares no code with the pullback machinery."""
    require_valid(L)
    A, B = L.src, L.dst
    f0 = L.functor.on_objects.as_dict()
    f1 = L.functor.on_arrows.as_dict()
    lift = L.lift.as_dict()
    a_dom, a_cod = A.dom.as_dict(), A.cod.as_dict()
    b_dom, b_cod = B.dom.as_dict(), B.cod.as_dict()
    a_comp, b_comp = A.comp.as_dict(), B.comp.as_dict()
    hom: dict = {}
    for m in A.arrows:
        hom.setdefault((a_dom[m], a_cod[m]), []).append(m)
    out: dict = {}
    for u in B.arrows:
        out.setdefault(b_dom[u], []).append(u)
    for w in A.arrows:
        a = a_dom[w]
        for u in out.get(f0[a], ()):
            chosen = lift[(a, u)]
            for v in out.get(b_cod[u], ()):
                if b_comp[(u, v)] != f1[w]:
                    continue
                count = sum(
                    1
                    for m in hom.get((a_cod[chosen], a_cod[w]), ())
                    if f1[m] == v and a_comp[(chosen, m)] == w
                )
                if count != 1:
                    return Verdict(False, "oracle", (w, u, v), (w, u, v), f"{count} factorisations")
    return Verdict(True, "oracle")


# -- right decalage -----------------------------------------------------


@dataclass(frozen=True)
class DecalageResult:
    category: InternalCategory
    counit: InternalFunctor


def decalage(A: InternalCategory) -> DecalageResult:
    """Objects the arrows of ``A``; an arrow ``(u, v)`` runs from ``v . u`` to ``v``."""
    pairs = A.pairs
    name = f"D{A.name}" if A.name else ""
    D_pairs = pullback(A.second, A.comp)
    first_leg = mediate(compose(A.first, D_pairs.p0), compose(A.first, D_pairs.p1), pairs)
    to_triples = mediate(first_leg, D_pairs.p1, A.triples)
    comp = compose(A.compose_front, to_triples)
    D = InternalCategory(A.arrows, pairs.apex, A.comp, A.second, A.ident_first, comp, name)
    counit = InternalFunctor(D, A, A.dom, A.first, f"counit_{A.name}" if A.name else "")
    return DecalageResult(D, counit)


def decalage_functor(F: InternalFunctor) -> InternalFunctor:
    DA = decalage(F.src).category
    DB = decalage(F.dst).category
    return InternalFunctor(DA, DB, F.on_arrows, F.on_pairs, f"D{F.name}" if F.name else "")


def check_sopf_decalage(L: InternalLens) -> Verdict:
    require_valid(L)
    span = cofunctor_to_span(L.cofunctor)
    dec = decalage(L.src)
    pb = pullback_in_cat(span.right, dec.counit)
    G = compose_functors(decalage_functor(L.functor), pb.p1)
    k = opfibration_comparison(G)
    if is_bijection(k):
        return Verdict(True, "decalage")
    # elements ((a, w), (u, v)); report the earliest triangle
    order = triangles(L).apex
    bad = [(e, n) for e, n in preimage_counts(k).items() if n != 1]
    element, n = min(bad, key=lambda en: order.index((en[0][0][1], en[0][1])))
    (_, w), (u, v) = element
    return Verdict(False, "decalage", element, (w, u, v), f"{n} lifts")


def decalage_lens(L: InternalLens) -> InternalLens:
    """Lens on ``DF: DA -> DB`` whose lifts are ``psihat``."""
    W = extract_psi(L)
    DF = decalage_functor(L.functor)
    cof = InternalCofunctor(DF.dst, DF.src, L.functor.on_arrows, W.psihat, f"D{L.name}" if L.name else "")
    return InternalLens(DF, cof, cof.name)
