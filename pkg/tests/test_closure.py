import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ualoc.algebra import Var, eval_term
from ualoc.closure import ProductSpace, projection_terms
from ualoc.congruences import (
    Congruence,
    all_congruences,
    congruence_generated,
    is_compatible,
    set_partitions,
)
from ualoc.corpus import builtin
from ualoc.errors import AlgebraError, ResourceBoundError
from ualoc.subuniverses import (
    SubUniverse,
    all_subuniverses,
    closure_of,
    generating_set,
    minimum_generating_set,
    subuniverse_generated,
)

from .conftest import algebras


def naive_closure(A, seed):
    S = set(seed) | set(A.constants())
    while True:
        new = {
            A.apply(j, args)
            for j, op in enumerate(A.ops)
            for args in itertools.product(sorted(S), repeat=op.arity)
        }
        if new <= S:
            return S
        S |= new


@given(algebras(max_size=4), st.data())
def test_sg_matches_naive_and_is_a_closure_operator(A, data):
    X = set(data.draw(st.lists(st.sampled_from(list(A.universe)), max_size=3)))
    Y = X | set(data.draw(st.lists(st.sampled_from(list(A.universe)), max_size=2)))
    SX = closure_of(A, X)
    assert SX == naive_closure(A, X)
    assert X <= SX
    assert SX <= closure_of(A, Y)
    assert closure_of(A, SX) == SX


@given(algebras(max_size=3), st.data())
def test_product_space_closure_matches_naive(A, data):
    space = ProductSpace([A, A])
    gens = data.draw(
        st.lists(st.tuples(st.integers(0, A.size - 1), st.integers(0, A.size - 1)), min_size=1, max_size=3)
    )
    cl = space.closure(gens, track=True)
    from ualoc.algebra import direct_product

    P = direct_product([A, A])
    expect = naive_closure(P, [a * A.size + b for a, b in gens])
    got = {a * A.size + b for a, b in cl.rows()}
    assert got == expect
    # witness terms evaluate coordinatewise to the row they label
    terms = cl.terms([Var(i) for i in range(len(gens))])
    for row, t in zip(cl.rows(), terms):
        for c in range(2):
            assert eval_term(A, t, [g[c] for g in gens]) == row[c]
    assert cl.contains(gens[0])
    assert list(cl.index_of([gens[0]])) != [-1]


def test_closure_limit():
    Z = builtin("Z3AFF")
    space = ProductSpace([Z] * 4)
    with pytest.raises(ResourceBoundError):
        space.closure([(0, 1, 2, 0), (1, 1, 0, 2)], limit=5)


def test_projection_terms():
    assert [str(t) for t in projection_terms(3)] == ["x0", "x1", "x2"]


def test_subuniverse_lists():
    assert [s.elements for s in all_subuniverses(builtin("NSEP"))] == [(0,), (1,), (0, 1), (1, 2), (0, 1, 2)]
    assert [s.elements for s in all_subuniverses(builtin("SEP3"))] == [(0,), (1,), (0, 1, 2)]
    assert [s.elements for s in all_subuniverses(builtin("C3"))] == [(0, 1, 2)]
    assert len(minimum_generating_set(builtin("SL2"))) == 2
    assert len(minimum_generating_set(builtin("C3"))) == 1
    assert set(closure_of(builtin("S3ACT"), generating_set(builtin("S3ACT")))) == {0, 1, 2}


@given(algebras(max_size=3))
def test_all_subuniverses_brute(A):
    expect = set()
    for r in range(1, A.size + 1):
        for S in itertools.combinations(A.universe, r):
            if naive_closure(A, S) == set(S):
                expect.add(S)
    assert {s.elements for s in all_subuniverses(A)} == expect


def test_empty_subuniverse_rejected():
    with pytest.raises(AlgebraError):
        subuniverse_generated(builtin("C3"), [])


def test_subuniverse_algebra():
    sub = subuniverse_generated(builtin("NSEP"), [2])
    assert isinstance(sub, SubUniverse) and sub.elements == (1, 2)
    assert sub.algebra().size == 2


# ---------------------------------------------------------- congruences


def test_set_partitions_count():
    assert [sum(1 for _ in set_partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_congruence_object():
    t = Congruence.from_blocks(range(3), [[0, 1], [2]])
    assert str(t) == "0,1|2"
    assert t.related(0, 1) and not t.related(1, 2)
    assert Congruence.equality(range(3)) <= t <= Congruence.full(range(3))
    assert t.restrict([1, 2]).is_equality


def test_congruence_counts():
    assert len(all_congruences(builtin("SL2"))) == 2
    assert len(all_congruences(builtin("C3"))) == 2
    assert len(all_congruences(builtin("NSEP"))) == 4


def brute_cg(A, seed):
    best = None
    for labels in set_partitions(A.size):
        if not is_compatible(A, labels):
            continue
        if all(labels[a] == labels[b] for a, b in seed):
            size = len(set(labels))
            if best is None or size > len(set(best)):
                best = labels
    return best


@given(algebras(max_size=4), st.data())
def test_cg_is_least_compatible_partition(A, data):
    seed = data.draw(st.lists(st.tuples(st.integers(0, A.size - 1), st.integers(0, A.size - 1)), max_size=2))
    theta = congruence_generated(A, seed)
    assert is_compatible(A, theta.labels)
    assert all(theta.related(a, b) for a, b in seed)
    # every compatible partition containing the seed refines above theta
    for labels in set_partitions(A.size):
        if is_compatible(A, labels) and all(labels[a] == labels[b] for a, b in seed):
            assert all(labels[a] == labels[b] for a, b in theta.pairs())
    assert theta.labels == brute_cg(A, seed)


def test_cg_on_subuniverse():
    NSEP = builtin("NSEP")
    sub = subuniverse_generated(NSEP, [1, 2])
    theta = congruence_generated(sub, [(1, 2)])
    assert theta.is_full and theta.elements == (1, 2)
