import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ualoc.algebra import FiniteAlgebra, Operation
from ualoc.corpus import builtin, corpus

settings.register_profile(
    "ci", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")

SIGNATURES = [
    (("f", 2),),
    (("f", 1),),
    (("f", 1), ("g", 2)),
    (("c", 0), ("f", 2)),
    (("f", 1), ("g", 1)),
]


@st.composite
def algebras(draw, max_size=3, signatures=SIGNATURES):
    n = draw(st.integers(1, max_size))
    sig = draw(st.sampled_from(signatures))
    ops = []
    for sym, k in sig:
        table = draw(st.lists(st.integers(0, n - 1), min_size=n**k, max_size=n**k))
        ops.append(Operation(sym, k, tuple(table)))
    return FiniteAlgebra("H", n, tuple(ops))


@st.composite
def algebra_pairs(draw, max_size=3):
    A = draw(algebras(max_size=max_size))
    sig = A.signature
    B = draw(algebras(max_size=max_size, signatures=[sig]))
    return A, B


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(params=[A.name for A in corpus()])
def corpus_algebra(request):
    return builtin(request.param)
