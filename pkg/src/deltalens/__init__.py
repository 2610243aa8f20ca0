"""Finite internal categories, cofunctors and delta lenses, with several
independent decision procedures for split opfibrations."""
from __future__ import annotations

from .category import (
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
from .cofunctor import (
    InternalCofunctor,
    SpanRep,
    compose_cofunctors_formula,
    compose_cofunctors_span,
    cofunctor_to_span,
    identity_cofunctor,
    lambda_category,
    span_to_cofunctor,
    validate_cofunctor,
)
from .diagnostics import DeltaLensError, Report, Violation
from .factorisation import (
    FactorisationWitness,
    StrictFactorisationSystem,
    VerticalCategory,
    check_johnstone_diagrams,
    check_sopf_factorisation,
    chi_from_psi,
    extract_chi,
    psi_from_chi,
    validate_sfs,
    vertical_category,
)
from .finset import FinFn, FinSet, compose, compose_fn, inverse, is_bijection, mediate, pullback
from .functor import (
    InternalFunctor,
    compose_functors,
    dopf_lift_structure,
    identity_functor,
    is_discrete_fibration,
    is_discrete_opfibration,
    is_identity_on_objects,
    is_isomorphism_on_objects,
    pullback_in_cat,
    validate_functor,
)
from .lens import (
    InternalLens,
    compose_lenses,
    compose_lenses_pullback,
    identity_lens,
    lens_to_triangle,
    monoid_section_lens,
    pullback_lens,
    triangle_to_lens,
    validate_lens,
    vwb_lens,
)
from .sopf import (
    DecalageResult,
    SopfWitness,
    Verdict,
    check_sopf_decalage,
    check_sopf_pullback,
    decalage,
    decalage_functor,
    decalage_lens,
    extract_psi,
    opcartesian_oracle,
)

__version__ = "0.1.0"
