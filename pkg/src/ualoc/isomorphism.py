"""Isomorphism testing (brute force and through the localization), homset
restriction reports, free algebras in ISP(A) and the retract oracle."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .algebra import FiniteAlgebra, Operation
from .closure import ProductSpace
from .config import get_limits, using_limits
from .errors import AlgebraError, ResourceBoundError
from .homs import HomGraph, enumerate_homomorphisms, is_homomorphism
from .localization import (
    ESpec,
    LocalMap,
    Neighborhood,
    enumerate_local_homs,
    is_dense,
    is_local_hom,
    lift_local_hom,
    neighborhood,
    restrict_hom,
    separates,
)
from .subuniverses import closure_of, minimum_generating_set
from .unary import chosen_minimal_idempotent

TriState = Literal["yes", "no", "unknown"]


@dataclass
class IsoReport:
    isomorphic: TriState
    method: str
    witness: HomGraph | None = None
    nodes: int = 0
    candidates: int = 0
    fallback_reason: str | None = None


# ----------------------------------------------------------- brute force


def _checks_by_level(A: FiniteAlgebra):
    """For each element ``a``: the (op, args, value) facts whose largest element is ``a``."""
    levels = [[] for _ in A.universe]
    for j, op in enumerate(A.ops):
        for args in A.argument_tuples(op.arity):
            v = A.apply(j, args)
            levels[max(args + (v,))].append((j, args, v))
    return levels


def _search_branch(A, B, first, bound):
    """Backtrack with ``phi(0) = first``; stop at the first (least) isomorphism."""
    n = A.size
    levels = _checks_by_level(A)
    phi = [-1] * n
    used = [False] * n
    nodes = 0
    leaves = 0

    def consistent(a):
        for j, args, v in levels[a]:
            if phi[v] != B.apply(j, [phi[x] for x in args]):
                return False
        return True

    def rec(a):
        nonlocal nodes, leaves
        if a == n:
            leaves += 1
            return True
        choices = [first] if a == 0 else range(n)
        for b in choices:
            if used[b]:
                continue
            nodes += 1
            if nodes > bound:
                raise ResourceBoundError("isomorphism search nodes", bound)
            phi[a], used[b] = b, True
            if consistent(a) and rec(a + 1):
                return True
            phi[a], used[b] = -1, False
        return False

    try:
        found = rec(0)
    except ResourceBoundError:
        return nodes, leaves, None, True
    return nodes, leaves, (tuple(phi) if found else None), False


def _branch_job(args):
    A, B, first, bound, limits = args
    with using_limits(**limits.__dict__):
        return _search_branch(A, B, first, bound)


def brute_force_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra, jobs: int | None = None) -> IsoReport:
    """Lexicographically least isomorphism by backtracking over bijections.

    With ``jobs > 1`` the branches ``phi(0) = b`` run in worker processes;
    the merge keeps exactly the prefix of branches a sequential run would
    have visited, so the witness and statistics are identical.
    """
    A.check_signature(B)
    if A.size != B.size:
        return IsoReport("no", "brute")
    jobs = jobs or get_limits().jobs
    bound = get_limits().max_search_nodes
    nodes = leaves = 0
    if jobs > 1 and B.size > 1:
        limits = get_limits()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_branch_job, [(A, B, b, bound, limits) for b in B.universe]))
    else:
        results = None
    for b in B.universe:
        if results is not None:
            n_, l_, phi, hit = results[b]
        else:
            n_, l_, phi, hit = _search_branch(A, B, b, bound - nodes)
        nodes += n_
        leaves += l_
        if hit or nodes > bound:
            return IsoReport("unknown", "brute", None, min(nodes, bound), leaves)
        if phi is not None:
            return IsoReport("yes", "brute", HomGraph(A, B, phi), nodes, leaves)
    return IsoReport("no", "brute", None, nodes, leaves)


# -------------------------------------------------------------- localized


def _local_bijections(A, B, nb_a: Neighborhood, nb_b: Neighborhood):
    found, examined = [], 0
    if len(nb_a.U) != len(nb_b.U):
        return found, examined
    for perm in itertools.permutations(nb_b.U):
        examined += 1
        lam = LocalMap(nb_a, nb_b, perm)
        if is_local_hom(lam) and is_local_hom(lam.inverse()):
            found.append(lam)
    return found, examined


def localized_isomorphism_search(A: FiniteAlgebra, B: FiniteAlgebra, e: ESpec = None) -> list[LocalMap]:
    """All isomorphisms ``e(A) -> e(B)``, in lexicographic order."""
    A.check_signature(B)
    nb_a = neighborhood(A, e)
    return _local_bijections(A, B, nb_a, nb_a.at(B))[0]


def _verified_iso(A, B, hom: HomGraph) -> bool:
    return (
        hom.is_bijective and is_homomorphism(A, B, hom.images) and is_homomorphism(B, A, hom.inverse().images)
    )


def iso_via_localization(A: FiniteAlgebra, B: FiniteAlgebra) -> IsoReport:
    """Decide ``A ~ B`` by searching isomorphisms of the localizations and lifting them.

    Needs the chosen minimal idempotent of ``A`` to be separating and dense for
    both algebras; otherwise the report comes from brute force and says why.
    """
    A.check_signature(B)
    if A.size != B.size:
        return IsoReport("no", "localized")

    def fallback(reason):
        rep = brute_force_isomorphism(A, B)
        rep.fallback_reason = reason
        return rep

    if A.size < 2:
        return fallback("one-element algebra has no minimal idempotent")
    e = chosen_minimal_idempotent(A)
    nb_a = neighborhood(A, e)
    try:
        nb_b = nb_a.at(B)
    except AlgebraError as exc:  # e may fail to be idempotent in B
        return fallback(f"e is not an idempotent of {B.name}: {exc}")
    for X, nb in ((A, nb_a), (B, nb_b)):
        if nb.e.is_constant:
            return fallback(f"e is constant on {X.name}")
        if not separates(X, nb):
            return fallback(f"e does not separate {X.name}")
        if not is_dense(X, nb):
            return fallback(f"e is not dense for {X.name}")
    if math.factorial(len(nb_a.U)) > get_limits().max_search_nodes:
        return IsoReport("unknown", "localized", fallback_reason="local bijection count over bound")
    local, examined = _local_bijections(A, B, nb_a, nb_b)
    isos = []
    for lam in local:
        hom = lift_local_hom(lam)
        if not _verified_iso(A, B, hom):
            raise AssertionError(f"lift of local isomorphism {lam} is not an isomorphism")
        isos.append(hom)
    if not isos:
        return IsoReport("no", "localized", None, examined, examined)
    best = min(isos, key=lambda h: h.images)
    return IsoReport("yes", "localized", best, examined, examined)


# ---------------------------------------------------- homset restriction


@dataclass
class HomRestrictionReport:
    hom_count: int
    local_hom_count: int
    dense: bool
    separates_target: bool
    injective: bool
    surjective: bool
    collisions: list[tuple[HomGraph, HomGraph]] = field(default_factory=list)
    restrictions: list[LocalMap] = field(default_factory=list)
    local_homs: list[LocalMap] = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def hom_restriction_report(A: FiniteAlgebra, B: FiniteAlgebra, e: ESpec = None) -> HomRestrictionReport:
    nb_a = neighborhood(A, e)
    nb_b = nb_a.at(B)
    homs = enumerate_homomorphisms(A, B)
    local = enumerate_local_homs(nb_a, nb_b)
    restr = [restrict_hom(h, nb_a) for h in homs]
    seen: dict[tuple, HomGraph] = {}
    collisions = []
    for h, r in zip(homs, restr):
        if r.images in seen:
            collisions.append((seen[r.images], h))
        else:
            seen[r.images] = h
    local_set = {lam.images for lam in local}
    return HomRestrictionReport(
        hom_count=len(homs),
        local_hom_count=len(local),
        dense=is_dense(A, nb_a),
        separates_target=bool(separates(B, nb_b)),
        injective=not collisions,
        surjective=set(seen) == local_set,
        collisions=collisions,
        restrictions=restr,
        local_homs=local,
    )


# ---------------------------------------------------------- free algebras


@dataclass
class FreeAlgebraResult:
    """Free algebra of ISP(A) on ``k`` generators, inside ``A^(A^k)``.

    ``rows[i]`` is element ``i`` as a tuple indexed by ``points``.
    """

    algebra: FiniteAlgebra
    generators: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]
    base: FiniteAlgebra

    def evaluation_hom(self, values) -> HomGraph:
        """The homomorphism ``F -> A`` sending generator ``i`` to ``values[i]``."""
        c = self.points.index(tuple(values))
        return HomGraph(self.algebra, self.base, tuple(r[c] for r in self.rows))


def free_algebra(A: FiniteAlgebra, k: int) -> FreeAlgebraResult:
    limits = get_limits()
    width = A.size**k
    if width > limits.max_fragment_coordinates:
        raise ResourceBoundError("free algebra coordinates", limits.max_fragment_coordinates, width)
    points = tuple(itertools.product(A.universe, repeat=k))
    space = ProductSpace([A] * width)
    gens = [tuple(p[i] for p in points) for i in range(k)]
    # the tables of F must fit the product bound, which caps |F| before it is built
    max_arity = max((op.arity for op in A.ops), default=0)
    cap = limits.max_closure_size
    if max_arity >= 1:
        cap = min(cap, int(round(limits.max_product_size ** (1 / max_arity))))
    cl = space.closure(gens, limit=cap)
    order = np.lexsort(cl.elements.T[::-1])
    rows = cl.elements[order]
    N = len(rows)
    index = {tuple(r): i for i, r in enumerate(rows.tolist())}
    ops = []
    for j, op in enumerate(A.ops):
        if N**op.arity > limits.max_product_size:
            raise ResourceBoundError(
                f"free algebra table of {op.symbol!r}", limits.max_product_size, N**op.arity
            )
        table = []
        for args in itertools.product(range(N), repeat=op.arity):
            val = space.apply(j, [rows[i] for i in args]) if args else space.apply(j, [])
            table.append(index[tuple(val.tolist())])
        ops.append(Operation(op.symbol, op.arity, tuple(table)))
    F = FiniteAlgebra(f"F_{A.name}({k})", N, tuple(ops))
    generators = tuple(index[g] for g in gens)
    return FreeAlgebraResult(F, generators, points, tuple(map(tuple, rows.tolist())), A)


# --------------------------------------------------------- retract oracle


@dataclass
class RetractResult:
    status: TriState
    k: int
    free_size: int | None = None
    sigma: HomGraph | None = None
    tau: HomGraph | None = None
    reason: str = ""
    l_variant: dict | None = None


def retract_oracle(
    P: FiniteAlgebra, A: FiniteAlgebra, k: int | None = None, l_variant: bool = False
) -> RetractResult:
    """Is ``P`` a retract of the ``k``-generated free algebra of ISP(A)?

    ``k`` defaults to the size of a smallest generating set of ``P``; a
    projective ``k``-generated algebra is a retract of the free algebra of
    rank ``k``, so at that rank a negative answer is conclusive.
    """
    P.check_signature(A)
    if k is None:
        k = len(minimum_generating_set(P))
        if k == 0 and not A.constants():
            k = 1
    try:
        free = free_algebra(A, k)
        F = free.algebra
        sigmas = [s for s in enumerate_homomorphisms(F, P) if s.is_surjective]
        taus = enumerate_homomorphisms(P, F)
    except ResourceBoundError as exc:
        return RetractResult("unknown", k, reason=str(exc))
    result = RetractResult("no", k, F.size)
    if not taus:
        result.reason = f"Hom({P.name}, F({k})) is empty"
    elif not sigmas:
        result.reason = f"no surjection F({k}) -> {P.name}"
    else:
        result.reason = "no pair with sigma . tau = id"
    for tau in taus:
        for sigma in sigmas:
            if all(sigma(tau(p)) == p for p in P.universe):
                result.status, result.sigma, result.tau = "yes", sigma, tau
                result.reason = "sigma . tau = id"
                break
        if result.status == "yes":
            break
    if l_variant:
        result.l_variant = _l_variant(P, A, free, sigmas)
    return result


def _l_variant(P, A, free: FreeAlgebraResult, sigmas) -> dict:
    """Replace F by L = Sg(e(F)) and check that every surjection stays onto when P is e-dense."""
    e = chosen_minimal_idempotent(A).witness
    F = free.algebra
    nb_f = neighborhood(F, e)
    L = closure_of(F, nb_f.U)
    p_dense = is_dense(P, neighborhood(P, e))
    onto = [len({s(x) for x in L}) == P.size for s in sigmas]
    return {
        "e": str(e),
        "L_size": len(L),
        "P_dense": p_dense,
        "restrictions_surjective": all(onto) if sigmas else None,
    }
