"""Resource bounds.

Bounds live in a :class:`contextvars.ContextVar` so that the pure library
functions stay free of a ``limits=`` argument on every call while remaining
safe under threads and ``asyncio``.  Override them with :func:`using_limits`::

    with using_limits(max_search_nodes=1000):
        brute_force_isomorphism(A, B)
"""

from __future__ import annotations

import contextlib
import dataclasses
from contextvars import ContextVar
from typing import Iterator


@dataclasses.dataclass(frozen=True)
class Limits:
    max_product_size: int = 2**24
    max_subuniverse_carrier: int = 12
    max_congruence_carrier: int = 10
    max_search_nodes: int = 10**7
    max_monoid_size: int = 10**6
    max_local_maps: int = 10**6
    max_fragment_coordinates: int = 64
    max_closure_size: int = 2**21
    oracle_carrier: int = 6
    arity_bound: int = 3
    jobs: int = 1


_LIMITS: ContextVar[Limits] = ContextVar("ualoc_limits", default=Limits())


def get_limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def using_limits(**overrides) -> Iterator[Limits]:
    new = dataclasses.replace(_LIMITS.get(), **overrides)
    token = _LIMITS.set(new)
    try:
        yield new
    finally:
        _LIMITS.reset(token)
