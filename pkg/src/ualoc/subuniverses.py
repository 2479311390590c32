"""Generated subuniverses and the subuniverse lattice of a finite algebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .algebra import FiniteAlgebra, restrict
from .config import get_limits
from .errors import AlgebraError, ResourceBoundError


@dataclass(frozen=True)
class SubUniverse:
    parent: FiniteAlgebra
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self._set

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def is_full(self) -> bool:
        return len(self.elements) == self.parent.size

    def algebra(self) -> FiniteAlgebra:
        """The subalgebra itself, element ``elements[i]`` renamed ``i``."""
        if self.is_full:
            return self.parent
        return restrict(self.parent, self.elements)


def closure_of(A: FiniteAlgebra, seed: Iterable[int], closed: Iterable[int] = ()) -> set[int]:
    """Pure-Python Sg; ``closed`` may name a part of the seed already known to be closed."""
    have = set(closed)
    order = list(have)
    frontier_start = len(order)
    for a in list(seed) + A.constants():
        if a not in have:
            have.add(a)
            order.append(a)
    if not closed:
        frontier_start = 0
    ops = [(j, op.arity) for j, op in enumerate(A.ops) if op.arity > 0]
    start = frontier_start
    while start < len(order):
        stop = len(order)
        old, new, every = order[:start], order[start:stop], order[:stop]
        for j, k in ops:
            for p in range(k):
                for args in itertools.product(*([old] * p + [new] + [every] * (k - p - 1))):
                    v = A.apply(j, args)
                    if v not in have:
                        have.add(v)
                        order.append(v)
        start = stop
    return have


def subuniverse_generated(A: FiniteAlgebra, seed: Iterable[int]) -> SubUniverse:
    seed = list(seed)
    for a in seed:
        if not 0 <= a < A.size:
            raise AlgebraError(f"{a} is not an element of {A.name}")
    if not seed and not A.constants():
        raise AlgebraError(f"{A.name} has no constants; the empty set generates nothing")
    return SubUniverse(A, tuple(closure_of(A, seed)))


def all_subuniverses(A: FiniteAlgebra) -> list[SubUniverse]:
    """Every nonempty subuniverse, sorted by size then lexicographically."""
    bound = get_limits().max_subuniverse_carrier
    if A.size > bound:
        raise ResourceBoundError("subuniverse enumeration carrier", bound, A.size)
    found: set[frozenset[int]] = set()
    queue = []
    atoms = {}
    for a in A.universe:
        atoms[a] = frozenset(closure_of(A, [a]))
    if A.constants():
        queue.append(frozenset(closure_of(A, [])))
    queue.extend(atoms.values())
    while queue:
        S = queue.pop()
        if S in found:
            continue
        found.add(S)
        for a in A.universe:
            if a not in S:
                T = frozenset(closure_of(A, atoms[a], closed=S))
                if T not in found:
                    queue.append(T)
    subs = sorted((tuple(sorted(S)) for S in found), key=lambda s: (len(s), s))
    return [SubUniverse(A, s) for s in subs]


def generating_set(A: FiniteAlgebra) -> list[int]:
    """A small generating set, chosen greedily by closure growth (ties: least element)."""
    gens: list[int] = []
    cur = closure_of(A, [])
    while len(cur) < A.size:
        best, best_set = None, None
        for a in A.universe:
            if a in cur:
                continue
            T = closure_of(A, [a], closed=cur)
            if best_set is None or len(T) > len(best_set):
                best, best_set = a, T
        gens.append(best)
        cur = best_set
    return gens


def minimum_generating_set(A: FiniteAlgebra) -> list[int]:
    """A smallest generating set (exhaustive by size, lexicographically least)."""
    if len(closure_of(A, [])) == A.size:
        return []
    for r in range(1, A.size + 1):
        for combo in itertools.combinations(A.universe, r):
            if len(closure_of(A, combo)) == A.size:
                return list(combo)
    raise AssertionError("unreachable: the universe generates itself")
