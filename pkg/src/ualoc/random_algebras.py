"""Seeded random algebras for property tests and cross-checks."""

from __future__ import annotations

import random
from typing import Sequence

from .algebra import FiniteAlgebra, Operation, relabel


def random_algebra(
    rng: random.Random,
    size: int,
    signature: Sequence[tuple[str, int]] = (("f", 2),),
    name: str | None = None,
) -> FiniteAlgebra:
    ops = tuple(Operation(sym, k, tuple(rng.randrange(size) for _ in range(size**k))) for sym, k in signature)
    return FiniteAlgebra(name or f"R{rng.randrange(10**6)}", size, ops)


def random_relabeling(
    rng: random.Random, A: FiniteAlgebra, name: str | None = None
) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """A copy of ``A`` under a random permutation; returns the copy and the permutation."""
    perm = list(A.universe)
    rng.shuffle(perm)
    return relabel(A, perm, name or f"{A.name}'"), tuple(perm)
