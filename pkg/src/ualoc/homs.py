"""Homomorphisms between finite algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import FiniteAlgebra
from .config import get_limits
from .errors import AlgebraError, ResourceBoundError
from .subuniverses import generating_set


@dataclass(frozen=True)
class HomGraph:
    """A total map ``dom -> cod``; ``images[a]`` is the image of ``a``."""

    dom: FiniteAlgebra
    cod: FiniteAlgebra
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if len(self.images) != self.dom.size:
            raise AlgebraError("a hom graph must be defined on the whole domain")

    def __call__(self, a: int) -> int:
        return self.images[a]

    @property
    def pairs(self) -> set[tuple[int, int]]:
        return set(enumerate(self.images))

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.cod.size

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def then(self, other: "HomGraph") -> "HomGraph":
        """``other`` after ``self``."""
        return HomGraph(self.dom, other.cod, tuple(other.images[b] for b in self.images))

    def inverse(self) -> "HomGraph":
        if not self.is_bijective:
            raise AlgebraError("only bijections have inverses")
        inv = [0] * len(self.images)
        for a, b in enumerate(self.images):
            inv[b] = a
        return HomGraph(self.cod, self.dom, tuple(inv))


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, images) -> bool:
    """Full check of ``phi(f(a..)) == f(phi(a)..)`` for every operation and tuple."""
    A.check_signature(B)
    for j, op in enumerate(A.ops):
        for args in A.argument_tuples(op.arity):
            if images[A.apply(j, args)] != B.apply(j, [images[a] for a in args]):
                return False
    return True


def extend_partial(A: FiniteAlgebra, B: FiniteAlgebra, partial: dict[int, int]) -> dict[int, int] | None:
    """Close a partial map under the operations (Sg of its graph in A x B).

    Returns None as soon as the generated relation stops being a function.
    """
    graph = dict(partial)
    for j, op in enumerate(A.ops):
        if op.arity == 0:
            a, b = op.table[0], B.ops[j].table[0]
            if graph.setdefault(a, b) != b:
                return None
    order = list(graph)
    ops = [(j, op.arity) for j, op in enumerate(A.ops) if op.arity > 0]
    start = 0
    while start < len(order):
        stop = len(order)
        old, new, every = order[:start], order[start:stop], order[:stop]
        for j, k in ops:
            for p in range(k):
                for args in itertools.product(*([old] * p + [new] + [every] * (k - p - 1))):
                    a = A.apply(j, args)
                    b = B.apply(j, [graph[x] for x in args])
                    have = graph.get(a)
                    if have is None:
                        graph[a] = b
                        order.append(a)
                    elif have != b:
                        return None
        start = stop
    return graph


def enumerate_homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra) -> list[HomGraph]:
    """All homomorphisms ``A -> B`` in lexicographic order of their image tuples.

    Backtracks over images of a greedily chosen generating set of ``A``,
    extending each partial assignment by closure.
    """
    A.check_signature(B)
    gens = generating_set(A)
    bound = get_limits().max_search_nodes
    nodes = 0
    found = []

    def rec(i, partial):
        nonlocal nodes
        nodes += 1
        if nodes > bound:
            raise ResourceBoundError("homomorphism search nodes", bound)
        ext = extend_partial(A, B, partial)
        if ext is None:
            return
        if i == len(gens):
            found.append(tuple(ext[a] for a in A.universe))
            return
        g = gens[i]
        if g in ext:
            rec(i + 1, ext)
            return
        for b in B.universe:
            rec(i + 1, {**ext, g: b})

    rec(0, {})
    homs = []
    for images in sorted(set(found)):
        if not is_homomorphism(A, B, images):
            raise AssertionError(f"closure produced a non-homomorphism {images}")
        homs.append(HomGraph(A, B, images))
    return homs
