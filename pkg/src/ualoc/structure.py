"""Structural verdicts: simplicity, abelianness, and the shape of the
localization of a strictly simple algebra at its chosen minimal idempotent."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .algebra import FiniteAlgebra, Var, decode, direct_product
from .config import get_limits
from .congruences import congruence_generated
from .errors import PreconditionError, ResourceBoundError
from .localization import (
    LocalOperation,
    Neighborhood,
    clone_fragment,
    is_dense,
    localize_clone_fragment,
    localize_closure,
    malcev_probe,
    neighborhood,
    separates,
)
from .subuniverses import closure_of

TriState = Literal["yes", "no", "unknown"]
Kind = Literal["gset-regular", "gset-irregular", "affine", "nonabelian", "unknown"]


def is_simple(A: FiniteAlgebra) -> bool:
    """Every principal congruence ``Cg(a, b)`` with ``a != b`` is the full relation."""
    if A.size < 2:
        raise PreconditionError("simplicity is only defined here for algebras with >= 2 elements")
    return all(congruence_generated(A, [(a, b)]).is_full for a, b in itertools.combinations(A.universe, 2))


def is_strictly_simple(A: FiniteAlgebra) -> bool:
    if A.size < 2:
        return False
    for a in A.universe:
        if len(closure_of(A, [a])) not in (1, A.size):
            return False
    for a, b in itertools.combinations(A.universe, 2):
        if len(closure_of(A, [a, b])) != A.size:
            return False
    return is_simple(A)


def has_trivial_subuniverse(A: FiniteAlgebra) -> int | None:
    for a in A.universe:
        if closure_of(A, [a]) == {a}:
            return a
    return None


# ----------------------------------------------------------- abelianness


@dataclass
class AbelianVerdict:
    abelian: bool
    witness: tuple[tuple[int, int], tuple[int, int]] | None = None

    def __bool__(self):
        return self.abelian


def is_abelian(A: FiniteAlgebra) -> AbelianVerdict:
    """Diagonal test: the diagonal of ``A^2`` is a union of blocks of
    ``Cg^{A^2}({((a,a),(b,b))})``."""
    n = A.size
    sq = direct_product([A, A], name=f"{A.name}^2")
    diag = [a * n + a for a in A.universe]
    theta = congruence_generated(sq, [(diag[0], d) for d in diag[1:]])
    for d in diag:
        for block in theta.blocks():
            if d in block:
                for x in block:
                    c, dd = decode(x, [n, n])
                    if c != dd:
                        return AbelianVerdict(False, (decode(d, [n, n]), (c, dd)))
    return AbelianVerdict(True)


@dataclass
class TermConditionResult:
    status: Literal["violated", "holds", "unknown"]
    max_arity: int
    witness: dict | None = None

    @property
    def violated(self) -> bool:
        return self.status == "violated"


def _violation_mask(tables: np.ndarray, n: int, k: int) -> np.ndarray:
    """Rows (tables over ``n`` points, arity ``k``) that fail the term condition in some variable."""
    B = len(tables)
    bad = np.zeros(B, dtype=bool)
    if k < 2:
        return bad
    T = tables.reshape((B,) + (n,) * k)
    for p in range(k):
        M = np.moveaxis(T, p + 1, 1).reshape(B, n, n ** (k - 1))
        eq = M[:, :, :, None] == M[:, :, None, :]
        bad |= (eq.any(axis=1) & ~eq.all(axis=1)).any(axis=(1, 2))
    return bad


def term_condition_violation(ops: list[LocalOperation], points) -> dict | None:
    """First ``t, x, y, u, v`` with ``t(x,u) = t(x,v)`` but ``t(y,u) != t(y,v)``.

    The distinguished argument is at ``position``; the others are ``u`` and ``v``.
    """
    n = len(points)
    for op in ops:
        k = op.arity
        if k < 2:
            continue
        T = np.asarray(op.table).reshape((n,) * k)
        for p in range(k):
            M = np.moveaxis(T, p, 0).reshape(n, n ** (k - 1))
            eq = M[:, :, None] == M[:, None, :]
            bad = eq.any(axis=0) & ~eq.all(axis=0)
            if bad.any():
                u, v = map(int, np.argwhere(bad)[0])
                col = eq[:, u, v]
                x, y = int(np.flatnonzero(col)[0]), int(np.flatnonzero(~col)[0])
                rest = (
                    [points[i] for i in decode(u, [n] * (k - 1))],
                    [points[i] for i in decode(v, [n] * (k - 1))],
                )
                return {
                    "term": str(op.witness),
                    "position": p,
                    "x": points[x],
                    "y": points[y],
                    "u": rest[0],
                    "v": rest[1],
                }
    return None


def _term_condition_search(A: FiniteAlgebra, nb: Neighborhood, k: int):
    """Generate the k-ary fragment of ``e(A)``, stopping at the first violation.

    Returns ``(witness, closure)``; the closure is complete when there is no witness.
    """
    n = len(nb.U)
    em = np.asarray(nb.e.map)
    found = []

    def until(rows):
        mask = _violation_mask(em[rows], n, k)
        if mask.any():
            found.append(rows[int(np.flatnonzero(mask)[0])])
            return True
        return False

    _, cl = clone_fragment(A, nb.U, k, until=until)
    if not found:
        return None, cl
    idx = int(cl.index_of([found[0]])[0])
    term = cl.terms([Var(i) for i in range(k)])[idx]
    op = LocalOperation(k, tuple(em[found[0]].tolist()), term)
    return term_condition_violation([op], nb.U), cl


def term_condition_oracle(A: FiniteAlgebra, max_arity: int = 3) -> TermConditionResult:
    """Term condition for every term operation of arity <= ``max_arity``."""
    nb = neighborhood(A, Var(0))
    try:
        for k in range(2, max_arity + 1):
            w, _ = _term_condition_search(A, nb, k)
            if w:
                return TermConditionResult("violated", max_arity, w)
    except ResourceBoundError:
        return TermConditionResult("unknown", max_arity)
    return TermConditionResult("holds", max_arity, None)


# -------------------------------------------------------- classification


@dataclass
class LocalClassification:
    kind: Kind
    neighborhood: Neighborhood
    evidence: dict = field(default_factory=dict)


def _require_strictly_simple(A):
    if not is_strictly_simple(A):
        raise PreconditionError(f"{A.name} is not strictly simple")


def classify_local(A: FiniteAlgebra, max_arity: int | None = None) -> LocalClassification:
    """Decide which kind of term minimal algebra ``e(A)`` is, for the chosen ``e``."""
    K = max_arity or get_limits().arity_bound
    _require_strictly_simple(A)
    nb = neighborhood(A)
    if not separates(A, nb):
        raise AssertionError(f"chosen idempotent does not separate strictly simple {A.name}")
    if not is_dense(A, nb):
        raise AssertionError(f"chosen idempotent is not dense for strictly simple {A.name}")
    U = nb.U
    evidence: dict = {"arity_bound": K}
    try:
        unary = localize_clone_fragment(A, nb, 1)
        violation, cl = _term_condition_search(A, nb, K) if K >= 2 else (None, None)
    except ResourceBoundError as exc:
        evidence["bound"] = str(exc)
        return LocalClassification("unknown", nb, evidence)
    if violation:
        evidence["term_condition_violation"] = violation
        return LocalClassification("nonabelian", nb, evidence)
    frag = localize_closure(nb, cl, K) if cl is not None else unary

    mal = malcev_probe(A, nb)
    evidence["malcev"] = mal.status
    if mal.status == "yes":
        evidence["malcev_witness"] = str(mal.witness)
        return LocalClassification("affine", nb, evidence)
    if mal.status == "unknown":
        return LocalClassification("unknown", nb, evidence)

    maps = [op.table for op in unary]
    perms = all(len(set(m)) == len(U) for m in maps)
    ess_unary = all(len(op.essential_variables(U)) <= 1 for op in frag)
    evidence["essentially_unary"] = ess_unary
    if not (perms and ess_unary):
        evidence["unary_maps_are_permutations"] = perms
        return LocalClassification("unknown", nb, evidence)
    order = len(maps)
    evidence["group_order"] = order
    # free and transitive: for each point, g -> g(point) is a bijection onto U
    pos = {u: i for i, u in enumerate(U)}
    regular = order == len(U) and all(len({m[pos[u]] for m in maps}) == len(U) for u in U)
    return LocalClassification("gset-regular" if regular else "gset-irregular", nb, evidence)


def strongly_abelian_verdict(A: FiniteAlgebra) -> TriState:
    kind = classify_local(A).kind
    if kind.startswith("gset"):
        return "yes"
    if kind in ("affine", "nonabelian"):
        return "no"
    return "unknown"


@dataclass
class ProjectivityVerdict:
    projective: TriState
    reason: str
    classification: LocalClassification


_REASONS = {
    "gset-irregular": (
        "no",
        "gset-irregular: the localization is a G-set that is not a retract of the regular one",
    ),
    "gset-regular": ("yes", "gset-regular: the localization is the free algebra on one generator"),
    "affine": ("yes", "affine: the localization is free on one generator, hence projective"),
    "nonabelian": ("yes", "nonabelian: term minimal strictly simple nonabelian algebras are projective"),
    "unknown": ("unknown", "unknown: classification incomplete within the configured bounds"),
}


def projectivity_verdict(A: FiniteAlgebra) -> ProjectivityVerdict:
    """Projectivity of a strictly simple algebra in the variety it generates."""
    cls = classify_local(A)
    verdict, reason = _REASONS[cls.kind]
    return ProjectivityVerdict(verdict, reason, cls)
