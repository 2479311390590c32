"""The monoid of unary term operations and its idempotents."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import FiniteAlgebra, Term, Var, eval_term
from .closure import ProductSpace
from .config import get_limits
from .errors import AlgebraError


@dataclass(frozen=True)
class UnaryTermMap:
    map: tuple[int, ...]
    witness: Term

    @property
    def is_constant(self) -> bool:
        return len(set(self.map)) == 1

    @property
    def range(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    @property
    def is_idempotent(self) -> bool:
        return all(self.map[v] == v for v in self.map)

    @property
    def is_permutation(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def __call__(self, a: int) -> int:
        return self.map[a]

    def after(self, other: "UnaryTermMap") -> tuple[int, ...]:
        """The map of ``self o other``."""
        return tuple(self.map[x] for x in other.map)

    def __str__(self):
        return f"({','.join(map(str, self.map))}) via {self.witness}"


@dataclass(frozen=True)
class UnaryMonoid:
    parent: FiniteAlgebra
    members: tuple[UnaryTermMap, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, m):
        return tuple(m) in self._maps

    @property
    def _maps(self) -> dict[tuple[int, ...], UnaryTermMap]:
        return {m.map: m for m in self.members}

    def get(self, mapping) -> UnaryTermMap:
        try:
            return self._maps[tuple(mapping)]
        except KeyError:
            raise AlgebraError(
                f"{tuple(mapping)} is not a unary term operation of {self.parent.name}"
            ) from None


@lru_cache(maxsize=256)
def unary_term_monoid(A: FiniteAlgebra) -> UnaryMonoid:
    """Closure of the identity and the constants under the basic operations.

    Members are kept in discovery order (breadth first by generation round),
    each with the first witness that produced it.
    """
    space = ProductSpace([A] * A.size)
    cl = space.closure([tuple(A.universe)], track=True, limit=get_limits().max_monoid_size)
    terms = cl.terms([Var(0)])
    members = tuple(UnaryTermMap(row, t) for row, t in zip(cl.rows(), terms))
    return UnaryMonoid(A, members)


def idempotent_unary_terms(A: FiniteAlgebra) -> list[UnaryTermMap]:
    return sorted((m for m in unary_term_monoid(A) if m.is_idempotent), key=lambda m: m.map)


def minimal_idempotents(A: FiniteAlgebra) -> list[UnaryTermMap]:
    """Nonconstant idempotents whose range is inclusion-minimal, least map first.

    The first entry is the *chosen* minimal idempotent used by the pipelines.
    """
    if A.size < 2:
        raise AlgebraError("minimal idempotents need at least two elements")
    cands = [m for m in idempotent_unary_terms(A) if not m.is_constant]
    ranges = [set(m.range) for m in cands]
    return [m for m, r in zip(cands, ranges) if not any(s < r for s in ranges)]


def chosen_minimal_idempotent(A: FiniteAlgebra) -> UnaryTermMap:
    return minimal_idempotents(A)[0]


def term_map(A: FiniteAlgebra, t: Term) -> tuple[int, ...]:
    return tuple(eval_term(A, t, (a,)) for a in A.universe)
