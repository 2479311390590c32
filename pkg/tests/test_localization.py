import itertools

import pytest
from hypothesis import assume, given

from ualoc.algebra import App, Var, compose_unary, direct_product, eval_term
from ualoc.config import using_limits
from ualoc.congruences import Congruence, all_congruences
from ualoc.corpus import builtin, corpus
from ualoc.errors import AlgebraError, PreconditionError, ResourceBoundError
from ualoc.homs import enumerate_homomorphisms
from ualoc.isomorphism import hom_restriction_report
from ualoc.localization import (
    LocalMap,
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
from ualoc.subuniverses import all_subuniverses, closure_of
from ualoc.unary import idempotent_unary_terms, unary_term_monoid

from .conftest import algebra_pairs, algebras


def nonconstant_idempotents(A):
    return [m for m in idempotent_unary_terms(A) if not m.is_constant]


def test_neighborhood_forms():
    SEP3 = builtin("SEP3")
    nb = neighborhood(SEP3)
    assert nb.U == (0, 1) and str(nb.term) == "u(x0)"
    assert neighborhood(SEP3, (0, 1, 0)) == nb
    assert neighborhood(SEP3, App("u", (Var(0),))).e.map == (0, 1, 0)
    assert neighborhood(SEP3, nb) is nb
    with pytest.raises(AlgebraError):
        neighborhood(builtin("C3"), App("s", (Var(0),)))
    with pytest.raises(AlgebraError):
        neighborhood(SEP3, (1, 1, 1, 1))


def test_separation_corpus():
    s = separates(builtin("NSEP"))
    assert not s and s.inseparable_pair == (1, 2)
    assert inseparable_pairs(builtin("NSEP")) == [(1, 2)]
    s = separates(builtin("SEP3"))
    assert s and str(s.witnesses[(0, 2)]) == "e(x0)"
    for name in ("SL2", "C3", "S3ACT", "Z3AFF"):
        assert separates(builtin(name))


@given(algebras(max_size=3))
def test_separation_definition(A):
    assume(A.size >= 2)
    M = unary_term_monoid(A)
    for e in nonconstant_idempotents(A):
        expect = all(
            any(e.map[g.map[a]] != e.map[g.map[b]] for g in M)
            for a, b in itertools.combinations(A.universe, 2)
        )
        sep = separates(A, e)
        assert bool(sep) == expect
        for (a, b), t in sep.witnesses.items():
            assert e.map[eval_term(A, t, (a,))] != e.map[eval_term(A, t, (b,))]


@given(algebras(max_size=3, signatures=[(("f", 2),), (("f", 1), ("g", 2)), (("f", 1),)]))
def test_separation_matches_brute_force_oracle(A):
    assume(A.size >= 2)
    for e in nonconstant_idempotents(A):
        assert bool(separates(A, e)) == bool(lemma21_oracle(A, e))


def test_oracle_agrees_on_corpus():
    for A in corpus():
        for e in nonconstant_idempotents(A):
            sep = bool(separates(A, e))
            assert bool(lemma21_oracle(A, e, "intersect")) == sep
    v = lemma21_oracle(builtin("NSEP"))
    sub, alpha = v.congruence
    assert sub.elements == (1, 2) and alpha.is_full


def test_density():
    assert not is_dense(builtin("NSEP"))
    assert densify(builtin("NSEP")).elements == (0, 1)
    assert is_dense(builtin("SEP3"))
    assert densify(builtin("SEP3")).is_full


@given(algebras(max_size=3))
def test_densify_postcondition(A):
    assume(A.size >= 2)
    for e in nonconstant_idempotents(A):
        nb = neighborhood(A, e)
        sub = densify(A, nb)
        assert set(nb.U) <= set(sub.elements)
        B = sub.algebra()
        pos = {a: i for i, a in enumerate(sub.elements)}
        assert len(closure_of(B, [pos[u] for u in nb.U])) == B.size


def test_fragment_sizes():
    def sizes(A, e=None):
        return [len(localize_clone_fragment(A, e, k)) for k in (1, 2, 3)]

    assert sizes(builtin("SL2")) == [1, 3, 7]
    assert sizes(builtin("C3")) == [3, 6, 9]
    assert sizes(builtin("Z3AFF")) == [3, 9, 27]
    assert sizes(builtin("S3ACT")) == [6, 12, 18]
    assert sizes(builtin("SEP3")) == [1, 3, 7]


@given(algebras(max_size=3))
def test_fragment_witnesses_sound(A):
    assume(A.size >= 2)
    nb = neighborhood(A)
    U = nb.U
    for k in (1, 2):
        for op in localize_clone_fragment(A, nb, k):
            for args in itertools.product(U, repeat=k):
                assert op.value(U, args) == nb.e(eval_term(A, op.witness, args))


def test_malcev():
    r = malcev_probe(builtin("Z3AFF"))
    assert r.status == "yes"
    Z = builtin("Z3AFF")
    for x, y in itertools.product(range(3), repeat=2):
        assert eval_term(Z, r.witness, (x, y, y)) == x
        assert eval_term(Z, r.witness, (x, x, y)) == y
    for name in ("SL2", "C3", "S3ACT", "SEP3"):
        assert malcev_probe(builtin(name)).status == "no"


# ------------------------------------------------------------ local homs


def localized_ops_commute(lam, frag, k):
    """Does lam commute with every e t (t of arity k) read in both algebras?"""
    A, B = lam.source.parent, lam.target.parent
    U = lam.source.U
    for op in frag:
        et = compose_unary(lam.source.term, op.witness)
        for args in itertools.product(U, repeat=k):
            if lam(eval_term(A, et, args)) != eval_term(B, et, [lam(a) for a in args]):
                return False
    return True


@given(algebra_pairs(max_size=3))
def test_local_hom_closure_test_is_sound(pair):
    A, B = pair
    assume(A.size >= 2)
    nb = neighborhood(A)
    try:
        nbB = nb.at(B)
    except AlgebraError:
        return  # e is not idempotent in B
    frags = {}
    for k in (1, 2, 3):
        # the ternary fragment on a 3-element U can be huge; check it when it is small
        try:
            with using_limits(max_closure_size=3000):
                frags[k] = localize_clone_fragment(A, nb, k)
        except ResourceBoundError:
            assert k == 3
    for lam in enumerate_local_homs(nb, nbB):
        for k, frag in frags.items():
            assert localized_ops_commute(lam, frag, k)
    # every restriction of a homomorphism is a local homomorphism
    for h in enumerate_homomorphisms(A, B):
        assert is_local_hom(restrict_hom(h, nb))


@given(algebra_pairs(max_size=3))
def test_restriction_injective_on_dense_and_bijective_on_separating(pair):
    A, B = pair
    assume(A.size >= 2)
    try:
        rep = hom_restriction_report(A, B)
    except AlgebraError:
        return
    if rep.dense:
        assert rep.injective
        if rep.separates_target:
            assert rep.bijective and rep.hom_count == rep.local_hom_count


def test_lift():
    SEP3 = builtin("SEP3")
    nb = neighborhood(SEP3)
    lam = LocalMap(nb, nb, (0, 1))
    assert lift_local_hom(lam).images == (0, 1, 2)
    NSEP = builtin("NSEP")
    nbn = neighborhood(NSEP)
    with pytest.raises(PreconditionError):
        lift_local_hom(LocalMap(nbn, nbn, (0, 1)))
    with pytest.raises(AlgebraError):
        LocalMap(nb, nb, (0, 2))


def test_hom_restriction_nsep():
    rep = hom_restriction_report(builtin("NSEP"), builtin("NSEP"))
    assert rep.hom_count == 5 and rep.local_hom_count == 3
    assert not rep.injective and rep.surjective


# ----------------------------------------------------- local congruences


def test_local_congruence_lift_corpus():
    for A in corpus():
        nb = neighborhood(A)
        for theta in local_congruences(A, nb):
            hat = lift_local_congruence(A, nb, theta)
            assert (
                hat.restrict(nb.U) == theta or {(nb.e(a), nb.e(b)) for a, b in hat.pairs()} == theta.pairs()
            )
            assert hat in all_congruences(A)


def test_nsep_lifted_congruence():
    A = builtin("NSEP")
    nb = neighborhood(A)
    hat = lift_local_congruence(A, nb, Congruence.full(nb.U))
    assert str(hat) == "0,1|2"
    with pytest.raises(AlgebraError):
        is_local_congruence(A, nb, Congruence.full(range(3)))


@given(algebras(max_size=3))
def test_local_congruence_lift_random(A):
    assume(A.size >= 2)
    nb = neighborhood(A)
    for theta in local_congruences(A, nb):
        hat = lift_local_congruence(A, nb, theta)
        assert {(nb.e(a), nb.e(b)) for a, b in hat.pairs()} == theta.pairs()
        assert hat in all_congruences(A)


@given(algebras(max_size=3))
def test_separation_closed_under_subalgebras_and_squares(A):
    assume(A.size >= 2)
    nb = neighborhood(A)
    if not separates(A, nb):
        return
    for sub in all_subuniverses(A):
        if len(sub) < 2:
            continue
        B = sub.algebra()
        try:
            nbB = nb.at(B)
        except AlgebraError:
            continue
        assert separates(B, nbB)
    sq = direct_product([A, A])
    assert separates(sq, nb.at(sq))
