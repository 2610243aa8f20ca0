"""End-to-end acceptance checks, one test per criterion.

The terminal summary prints a PASS/FAIL line for each of them.
"""
from __future__ import annotations

import random

import pytest

from deltalens.category import coproduct, terminal_category, walking_arrow
from deltalens.cofunctor import (
    compose_cofunctors_formula,
    compose_cofunctors_span,
    cofunctor_to_span,
    identity_cofunctor,
    span_to_cofunctor,
)
from deltalens.corpus import (
    GenConfig,
    fork_lens,
    free_lens_chain,
    gen,
    random_functor_into,
    walking_arrow_identity_lens,
)
from deltalens.document import parse, print_document
from deltalens.factorisation import (
    check_johnstone_diagrams,
    check_sopf_factorisation,
    chi_from_psi,
    extract_chi,
    psi_from_chi,
)
from deltalens.functor import compose_functors, is_discrete_fibration, is_isomorphic, validate_functor
from deltalens.lens import pullback_lens, validate_lens
from deltalens.sopf import (
    check_sopf_decalage,
    check_sopf_pullback,
    decalage,
    decalage_functor,
    extract_psi,
    opcartesian_oracle,
)

import closure
from conftest import GOLDEN, SAMPLES, corpus
from test_cli import CASES, run

METHODS = (check_sopf_pullback, check_sopf_decalage, check_sopf_factorisation, opcartesian_oracle)
FORK_TRIPLE = ("m'", "u", "1_y")


def verdicts(L) -> list[bool]:
    return [m(L).holds for m in METHODS]


def test_criterion_1_four_way_equivalence(lenses):
    assert len(lenses) >= 200
    assert all(len(L.src.objects) <= 6 and len(L.src.arrows) <= 24 for L in lenses)
    assert all(len(L.dst.objects) <= 6 and len(L.dst.arrows) <= 24 for L in lenses)
    disagreements = []
    truths = []
    for i, L in enumerate(lenses):
        v = verdicts(L)
        if len(set(v)) != 1:
            disagreements.append((i, v))
        truths.append(v[0])
    assert disagreements == []
    assert sum(truths) >= 30
    assert len(truths) - sum(truths) >= 30


def test_criterion_2_fixtures(lenses):
    identity = walking_arrow_identity_lens()
    assert verdicts(identity) == [True] * 4
    fork = fork_lens()
    for method in METHODS:
        verdict = method(fork)
        assert not verdict.holds
        assert verdict.triple == FORK_TRIPLE
    copresheaf = [inst.lens for inst in corpus() if inst.config.family == "copresheaf-dopf"]
    assert len(copresheaf) >= 30
    # and a fresh batch beyond the corpus
    copresheaf += [gen(GenConfig("copresheaf-dopf", 10_000 + s, 1 + s % 6)).lens for s in range(200)]
    assert all(verdicts(L) == [True] * 4 for L in copresheaf)


def test_criterion_3_decalage(lenses):
    D = decalage(walking_arrow()).category
    assert len(D.objects) == 3 and len(D.arrows) == 4
    assert is_isomorphic(D, coproduct(terminal_category(), walking_arrow()))
    for L in lenses:
        F = L.functor
        dec_a, dec_b = decalage(F.src), decalage(F.dst)
        assert is_discrete_fibration(dec_a.counit) and is_discrete_fibration(dec_b.counit)
        DF = decalage_functor(F)
        assert validate_functor(DF).ok
        assert compose_functors(dec_b.counit, DF) == compose_functors(F, dec_a.counit)


def test_criterion_4_cofunctor_routes(lenses):
    pairs = 0
    for seed in range(120):
        L1, L2 = free_lens_chain(seed, 5, 24, 2)
        phi, gamma = L1.cofunctor, L2.cofunctor
        assert compose_cofunctors_span(phi, gamma) == compose_cofunctors_formula(phi, gamma)
        pairs += 1
    for L in lenses:
        phi = L.cofunctor
        unit = identity_cofunctor(phi.src)
        assert compose_cofunctors_span(phi, unit) == compose_cofunctors_formula(phi, unit) == phi
        pairs += 1
    assert pairs >= 100
    for L in lenses:
        phi = L.cofunctor
        span = cofunctor_to_span(phi)
        assert span_to_cofunctor(span.left, span.right) == phi
        again = cofunctor_to_span(span_to_cofunctor(span.left, span.right))
        assert again.left == span.left and again.right == span.right


def test_criterion_5_psi_chi_conversions(sopf_members):
    assert len(sopf_members) >= 30
    for L in sopf_members:
        P, X = extract_psi(L), extract_chi(L)
        assert chi_from_psi(P) == X
        assert psi_from_chi(X) == P
        assert psi_from_chi(chi_from_psi(P)) == P
        assert chi_from_psi(psi_from_chi(X)) == X
        report = check_johnstone_diagrams(X)
        assert report.ok, report.lines()


CLOSURE_CHECKS = (
    closure.check_composites,
    closure.check_isomorphisms,
    closure.check_pullback_stability,
    closure.check_right_cancellation,
)


def test_criterion_6_closure_suite(lenses, sopf_members):
    for kind in sorted(closure.CLASSES):
        for check in CLOSURE_CHECKS:
            tested, bad = check(kind, lenses, random.Random(2024))
            assert tested > 0, (kind, check.__name__)
            assert bad == [], (kind, check.__name__, len(bad))
    rng = random.Random(99)
    pairs = 0
    for L in sopf_members:
        for _ in range(2):
            g = random_functor_into(L.dst, rng, 3)
            P = pullback_lens(L, g).lens
            assert validate_lens(P).ok
            assert check_sopf_pullback(P).holds
            pairs += 1
    assert pairs >= 50


def test_criterion_7_cli_end_to_end(capsys, monkeypatch):
    monkeypatch.chdir(SAMPLES)
    for name, argv in sorted(CASES.items()):
        expected = (GOLDEN / f"{name}.txt").read_text()
        assert run(capsys, argv) == expected, name
    shipped = sorted(SAMPLES.glob("*.dlens"))
    assert len(shipped) >= 4
    for path in shipped:
        text = path.read_text()
        doc = parse(text)
        assert print_document(doc) == text
        assert parse(print_document(doc)) == doc


@pytest.fixture(autouse=True, scope="module")
def _warm_corpus():
    corpus()
