"""Congruences: generation through the square, and brute-force enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

from .algebra import FiniteAlgebra
from .closure import ProductSpace
from .config import get_limits
from .errors import AlgebraError, ResourceBoundError
from .subuniverses import SubUniverse

Carrier = Union[FiniteAlgebra, SubUniverse]


@dataclass(frozen=True)
class Congruence:
    """A partition of ``elements``; ``labels[i]`` is the block of ``elements[i]``.

    Labels are a restricted growth string, so equal partitions compare equal.
    """

    elements: tuple[int, ...]
    labels: tuple[int, ...]

    @classmethod
    def from_blocks(cls, elements: Iterable[int], blocks: Iterable[Iterable[int]]) -> "Congruence":
        elements = tuple(sorted(elements))
        owner = {}
        for b, block in enumerate(blocks):
            for a in block:
                owner[a] = b
        raw = [owner.get(a, ("solo", a)) for a in elements]
        return cls(elements, _rgs(raw))

    @classmethod
    def equality(cls, elements: Iterable[int]) -> "Congruence":
        elements = tuple(sorted(elements))
        return cls(elements, tuple(range(len(elements))))

    @classmethod
    def full(cls, elements: Iterable[int]) -> "Congruence":
        elements = tuple(sorted(elements))
        return cls(elements, (0,) * len(elements))

    @cached_property
    def _label_of(self) -> dict[int, int]:
        return dict(zip(self.elements, self.labels))

    def related(self, a: int, b: int) -> bool:
        return self._label_of[a] == self._label_of[b]

    def blocks(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for a, l in zip(self.elements, self.labels):
            out.setdefault(l, []).append(a)
        return [tuple(v) for _, v in sorted(out.items())]

    def pairs(self) -> set[tuple[int, int]]:
        return {(a, b) for block in self.blocks() for a in block for b in block}

    @property
    def is_equality(self) -> bool:
        return len(set(self.labels)) == len(self.labels)

    @property
    def is_full(self) -> bool:
        return len(set(self.labels)) <= 1

    def restrict(self, subset: Iterable[int]) -> "Congruence":
        sub = tuple(sorted(a for a in set(subset) if a in self._label_of))
        return Congruence(sub, _rgs([self._label_of[a] for a in sub]))

    def __le__(self, other: "Congruence") -> bool:
        return all(other.related(a, b) for a, b in self.pairs())

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks())


def _rgs(raw) -> tuple[int, ...]:
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in raw)


def _carrier(C: Carrier) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """(relabeled algebra, original element of each new label)."""
    if isinstance(C, SubUniverse):
        return C.algebra(), C.elements
    return C, tuple(C.universe)


def components(elements: Iterable[int], pairs: Iterable[tuple[int, int]]) -> dict[int, int]:
    """Union-find over ``pairs``; returns a representative for every element."""
    parent = {a: a for a in elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
    return {a: find(a) for a in parent}


def congruence_generated(C: Carrier, seed_pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Cg(seed): transitive closure of Sg in the square of seed, converses and the diagonal."""
    A, names = _carrier(C)
    pos = {a: i for i, a in enumerate(names)}
    gens = set()
    for a, b in seed_pairs:
        if a not in pos or b not in pos:
            raise AlgebraError(f"pair ({a}, {b}) is not in the carrier")
        gens.add((pos[a], pos[b]))
        gens.add((pos[b], pos[a]))
    gens.update((i, i) for i in range(A.size))
    sq = ProductSpace([A, A]).closure(sorted(gens))
    rep = components(range(A.size), sq.rows())
    return Congruence(names, _rgs([rep[i] for i in range(A.size)]))


def is_compatible(A: FiniteAlgebra, labels: tuple[int, ...]) -> bool:
    """Compatibility of a partition of ``A.universe`` (given by labels) with every operation."""
    rep = {}
    for a, l in enumerate(labels):
        rep.setdefault(l, a)
    to_rep = [rep[l] for l in labels]
    for j, op in enumerate(A.ops):
        k = op.arity
        for args in A.argument_tuples(k):
            v = labels[A.apply(j, args)]
            for p in range(k):
                if to_rep[args[p]] != args[p]:
                    moved = args[:p] + (to_rep[args[p]],) + args[p + 1 :]
                    if labels[A.apply(j, moved)] != v:
                        return False
    return True


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i, m):
        if i == n:
            yield tuple(labels)
            return
        for l in range(m + 1):
            labels[i] = l
            yield from rec(i + 1, max(m, l + 1))

    labels[0] = 0
    yield from rec(1, 1)


def all_congruences(C: Carrier) -> list[Congruence]:
    """The congruence lattice by brute force over all partitions."""
    A, names = _carrier(C)
    bound = get_limits().max_congruence_carrier
    if A.size > bound:
        raise ResourceBoundError("congruence enumeration carrier", bound, A.size)
    return [Congruence(names, labels) for labels in set_partitions(A.size) if is_compatible(A, labels)]


def principal_congruences(C: Carrier) -> dict[tuple[int, int], Congruence]:
    A, names = _carrier(C)
    return {(a, b): congruence_generated(C, [(a, b)]) for a, b in itertools.combinations(names, 2)}
