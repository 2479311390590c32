import random

import pytest
from hypothesis import given

from ualoc.corpus import builtin, corpus
from ualoc.errors import PreconditionError
from ualoc.random_algebras import random_algebra
from ualoc.structure import (
    classify_local,
    has_trivial_subuniverse,
    is_abelian,
    is_simple,
    is_strictly_simple,
    projectivity_verdict,
    strongly_abelian_verdict,
    term_condition_oracle,
)

from .conftest import algebras

KINDS = {"SL2": "nonabelian", "Z3AFF": "affine", "C3": "gset-regular", "S3ACT": "gset-irregular"}


def test_simplicity():
    assert {A.name for A in corpus() if is_strictly_simple(A)} == {"SL2", "C3", "S3ACT", "Z3AFF", "SEP3"}
    assert not is_simple(builtin("NSEP"))
    with pytest.raises(PreconditionError):
        is_simple(random_algebra(random.Random(0), 1))
    assert has_trivial_subuniverse(builtin("SL2")) == 0
    assert has_trivial_subuniverse(builtin("C3")) is None


def test_classification_table():
    for name, kind in KINDS.items():
        cls = classify_local(builtin(name))
        assert cls.kind == kind, name
    assert classify_local(builtin("C3")).evidence["group_order"] == 3
    assert classify_local(builtin("S3ACT")).evidence["group_order"] == 6
    assert classify_local(builtin("SEP3")).kind == "nonabelian"
    with pytest.raises(PreconditionError):
        classify_local(builtin("NSEP"))


def test_strong_abelianness_and_projectivity():
    assert [strongly_abelian_verdict(builtin(n)) for n in KINDS] == ["no", "no", "yes", "yes"]
    verdicts = [projectivity_verdict(builtin(n)) for n in KINDS]
    assert [v.projective for v in verdicts] == ["yes", "yes", "yes", "no"]
    assert all(v.reason.startswith(v.classification.kind) for v in verdicts)


def test_abelian_corpus():
    assert not is_abelian(builtin("SL2"))
    assert is_abelian(builtin("Z3AFF")) and is_abelian(builtin("C3")) and is_abelian(builtin("S3ACT"))
    w = is_abelian(builtin("SL2")).witness
    (a, a2), (c, d) = w
    assert a == a2 and c != d


@given(
    algebras(max_size=3, signatures=[(("f", 2),), (("f", 1), ("g", 2)), (("f", 1),), (("c", 0), ("f", 2))])
)
def test_diagonal_test_vs_term_condition(A):
    tc = term_condition_oracle(A, max_arity=3)
    ab = is_abelian(A)
    if tc.status != "unknown":
        assert bool(ab) == (tc.status == "holds")
    if tc.violated:
        w = tc.witness
        assert w["x"] != w["y"] and w["u"] != w["v"]


def test_term_condition_corpus():
    for A in corpus():
        tc = term_condition_oracle(A, 3)
        assert tc.status != "unknown"
        assert bool(is_abelian(A)) == (not tc.violated), A.name
    w = term_condition_oracle(builtin("SL2"), 2).witness
    assert w["term"].startswith("meet")
