import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ualoc.algebra import relabel
from ualoc.config import using_limits
from ualoc.corpus import builtin, corpus
from ualoc.errors import ResourceBoundError
from ualoc.homs import enumerate_homomorphisms, is_homomorphism
from ualoc.isomorphism import (
    brute_force_isomorphism,
    free_algebra,
    hom_restriction_report,
    iso_via_localization,
    localized_isomorphism_search,
    retract_oracle,
)
from ualoc.random_algebras import random_relabeling

from .conftest import algebra_pairs, algebras


def check_witness(A, B, rep):
    if rep.isomorphic == "yes":
        assert rep.witness.is_bijective and is_homomorphism(A, B, rep.witness.images)
    else:
        assert rep.witness is None


@given(algebra_pairs(max_size=3))
def test_brute_and_local_agree(pair):
    A, B = pair
    bf = brute_force_isomorphism(A, B)
    loc = iso_via_localization(A, B)
    assert bf.isomorphic == loc.isomorphic
    check_witness(A, B, bf)
    check_witness(A, B, loc)
    if bf.isomorphic == "yes":
        # both return the lexicographically least isomorphism
        assert bf.witness.images == loc.witness.images


@given(algebras(max_size=4))
def test_relabelled_copy_found(A):
    B, perm = random_relabeling(random.Random(A.size), A)
    for rep in (brute_force_isomorphism(A, B), iso_via_localization(A, B)):
        assert rep.isomorphic == "yes"
        check_witness(A, B, rep)


def test_sep3_candidates():
    SEP3 = builtin("SEP3")
    B = relabel(SEP3, [2, 0, 1])
    rep = iso_via_localization(SEP3, B)
    assert rep.method == "localized" and rep.isomorphic == "yes"
    assert rep.candidates <= math.factorial(2) < math.factorial(3)


def test_nsep_falls_back():
    rep = iso_via_localization(builtin("NSEP"), builtin("NSEP"))
    assert rep.method == "brute" and "separate" in rep.fallback_reason


def test_c3_local_isos():
    C3 = builtin("C3")
    assert len(localized_isomorphism_search(C3, relabel(C3, [1, 0, 2]))) == 3


def test_parallel_matches_sequential():
    for A in corpus():
        B = relabel(A, list(reversed(range(A.size))))
        seq = brute_force_isomorphism(A, B, jobs=1)
        par = brute_force_isomorphism(A, B, jobs=2)
        assert (seq.isomorphic, seq.witness.images, seq.nodes) == (
            par.isomorphic,
            par.witness.images,
            par.nodes,
        )


def test_search_bound_gives_unknown():
    A = builtin("Z3AFF")
    with using_limits(max_search_nodes=1):
        assert brute_force_isomorphism(A, relabel(A, [1, 2, 0])).isomorphic == "unknown"


def test_hom_restriction_corpus():
    for name in ("C3", "SEP3", "SL2"):
        A = builtin(name)
        rep = hom_restriction_report(A, A)
        assert rep.dense and rep.separates_target and rep.bijective
        assert rep.hom_count == rep.local_hom_count
    assert hom_restriction_report(builtin("C3"), builtin("C3")).hom_count == 3


def test_free_algebra_sizes():
    assert free_algebra(builtin("SL2"), 2).algebra.size == 3
    assert free_algebra(builtin("C3"), 1).algebra.size == 3
    assert free_algebra(builtin("S3ACT"), 1).algebra.size == 6
    with using_limits(max_fragment_coordinates=8):
        with pytest.raises(ResourceBoundError):
            free_algebra(builtin("SL2"), 4)


@given(algebras(max_size=3), st.integers(1, 2))
@settings(max_examples=30)
def test_free_algebra_universal_property(A, k):
    try:
        with using_limits(max_product_size=10**6):
            F = free_algebra(A, k)
    except ResourceBoundError:
        return
    # every assignment of the generators extends to a homomorphism F -> A
    for p in F.points:
        h = F.evaluation_hom(p)
        assert is_homomorphism(F.algebra, A, h.images)
        assert tuple(h(g) for g in F.generators) == p
        assert len(set(F.rows)) == F.algebra.size


def test_retract_oracle():
    r = retract_oracle(builtin("S3ACT"), builtin("S3ACT"), 1)
    assert r.status == "no" and r.free_size == 6
    assert enumerate_homomorphisms(builtin("S3ACT"), free_algebra(builtin("S3ACT"), 1).algebra) == []
    for name, k in (("SL2", 2), ("C3", 1), ("Z3AFF", 1)):
        r = retract_oracle(builtin(name), builtin(name), k)
        assert r.status == "yes", name
        assert r.sigma.then(r.tau) is not None
        assert r.tau.then(r.sigma).images == tuple(range(builtin(name).size))
