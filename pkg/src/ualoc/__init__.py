"""Finite algebras localized to idempotent unary term neighborhoods.

The package computes unary term monoids and their idempotents, decides when
an idempotent ``e`` separates an algebra or is dense for it, transfers
homomorphisms and congruences between ``A`` and its localization ``e(A)``,
and uses that to test isomorphism, classify strictly simple algebras and
decide their projectivity.
"""

from .algebra import (
    App,
    FiniteAlgebra,
    Operation,
    Term,
    Var,
    direct_product,
    eval_term,
    relabel,
    restrict,
    term_table,
)
from .config import Limits, get_limits, using_limits
from .congruences import Congruence, all_congruences, congruence_generated
from .corpus import NAMES as CORPUS_NAMES
from .corpus import builtin
from .errors import (
    AlgebraError,
    ParseError,
    PreconditionError,
    ResourceBoundError,
    SignatureError,
    UalocError,
)
from .fileformat import parse_algebra, render_algebra
from .homs import HomGraph, enumerate_homomorphisms, is_homomorphism
from .isomorphism import (
    brute_force_isomorphism,
    free_algebra,
    hom_restriction_report,
    iso_via_localization,
    localized_isomorphism_search,
    retract_oracle,
)
from .localization import (
    LocalMap,
    Neighborhood,
    densify,
    enumerate_local_homs,
    inseparable_pairs,
    is_dense,
    is_local_congruence,
    is_local_hom,
    lemma21_oracle,
    lift_local_congruence,
    lift_local_hom,
    local_congruences,
    localize_clone_fragment,
    malcev_probe,
    neighborhood,
    restrict_hom,
    separates,
)
from .structure import (
    classify_local,
    is_abelian,
    is_simple,
    is_strictly_simple,
    projectivity_verdict,
    strongly_abelian_verdict,
    term_condition_oracle,
)
from .subuniverses import SubUniverse, all_subuniverses, closure_of, subuniverse_generated
from .unary import (
    UnaryTermMap,
    chosen_minimal_idempotent,
    idempotent_unary_terms,
    minimal_idempotents,
    unary_term_monoid,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "App",
    "CORPUS_NAMES",
    "Congruence",
    "FiniteAlgebra",
    "HomGraph",
    "Limits",
    "LocalMap",
    "Neighborhood",
    "Operation",
    "ParseError",
    "PreconditionError",
    "ResourceBoundError",
    "SignatureError",
    "SubUniverse",
    "Term",
    "UalocError",
    "UnaryTermMap",
    "Var",
    "all_congruences",
    "all_subuniverses",
    "brute_force_isomorphism",
    "builtin",
    "chosen_minimal_idempotent",
    "classify_local",
    "closure_of",
    "congruence_generated",
    "densify",
    "direct_product",
    "enumerate_homomorphisms",
    "enumerate_local_homs",
    "eval_term",
    "free_algebra",
    "get_limits",
    "hom_restriction_report",
    "idempotent_unary_terms",
    "inseparable_pairs",
    "is_abelian",
    "is_dense",
    "is_homomorphism",
    "is_local_congruence",
    "is_local_hom",
    "is_simple",
    "is_strictly_simple",
    "iso_via_localization",
    "lemma21_oracle",
    "lift_local_congruence",
    "lift_local_hom",
    "local_congruences",
    "localize_clone_fragment",
    "localized_isomorphism_search",
    "malcev_probe",
    "minimal_idempotents",
    "neighborhood",
    "parse_algebra",
    "projectivity_verdict",
    "relabel",
    "render_algebra",
    "restrict",
    "restrict_hom",
    "retract_oracle",
    "separates",
    "strongly_abelian_verdict",
    "subuniverse_generated",
    "term_condition_oracle",
    "term_table",
    "unary_term_monoid",
    "using_limits",
]
