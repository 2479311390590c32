"""Localization of a finite algebra to the range of an idempotent unary term.

The localized algebra ``e(A)`` has one basic operation ``e t|_U`` for every
term ``t``, so it is never materialized.  It is represented by its
:class:`Neighborhood` and interrogated in two ways:

* exactly, through closures in products: a map ``lam: U_A -> U_B`` commutes
  with every ``e t`` iff ``e(Sg^{A x B}(lam)) = lam``, because the members of
  ``Sg(lam)`` are exactly the pairs ``(t(r..), t(s..))`` with ``(r_i, s_i)``
  in ``lam``;
* by listing bounded-arity fragments of the local clone, used for
  cross-checks and structural tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal, Sequence, Union

import numpy as np

from .algebra import App, FiniteAlgebra, Term, Var, eval_term
from .closure import ProductSpace
from .config import get_limits
from .congruences import Congruence, _rgs, all_congruences, components, set_partitions
from .errors import AlgebraError, PreconditionError, ResourceBoundError
from .homs import HomGraph, enumerate_homomorphisms, is_homomorphism
from .subuniverses import SubUniverse, all_subuniverses, closure_of
from .unary import UnaryTermMap, chosen_minimal_idempotent, unary_term_monoid


@dataclass(frozen=True)
class Neighborhood:
    parent: FiniteAlgebra
    e: UnaryTermMap

    def __post_init__(self):
        if not self.e.is_idempotent:
            raise AlgebraError(f"{self.e.map} is not idempotent in {self.parent.name}")

    @property
    def U(self) -> tuple[int, ...]:
        return self.e.range

    @property
    def term(self) -> Term:
        return self.e.witness

    def at(self, B: FiniteAlgebra) -> "Neighborhood":
        """The same term ``e`` read in another algebra of the signature."""
        return neighborhood(B, self.e.witness)

    def __str__(self):
        return f"e={self.e.witness} map={self.e.map} U={{{','.join(map(str, self.U))}}}"


ESpec = Union[Neighborhood, UnaryTermMap, Term, Sequence[int], None]


def neighborhood(A: FiniteAlgebra, e: ESpec = None) -> Neighborhood:
    """Build a neighborhood of ``A``.

    ``e`` may be a neighborhood of ``A``, a unary term (evaluated in ``A``),
    a :class:`UnaryTermMap`, a map tuple naming a member of the unary
    monoid, or None for the chosen minimal idempotent.
    """
    if e is None:
        return Neighborhood(A, chosen_minimal_idempotent(A))
    if isinstance(e, Neighborhood):
        if e.parent == A:
            return e
        e = e.e.witness
    if isinstance(e, UnaryTermMap):
        e = e.witness
    if isinstance(e, (Var, App)):
        mapping = tuple(eval_term(A, e, (a,)) for a in A.universe)
        return Neighborhood(A, UnaryTermMap(mapping, e))
    return Neighborhood(A, unary_term_monoid(A).get(e))


@dataclass(frozen=True)
class LocalOperation:
    """``e t`` restricted to ``U^arity``; ``table`` is indexed like an operation table over ``U``."""

    arity: int
    table: tuple[int, ...]
    witness: Term

    def value(self, U: Sequence[int], args: Sequence[int]) -> int:
        pos = {u: i for i, u in enumerate(U)}
        idx = 0
        for a in args:
            idx = idx * len(U) + pos[a]
        return self.table[idx]

    def essential_variables(self, U: Sequence[int]) -> list[int]:
        n, k = len(U), self.arity
        out = []
        for p in range(k):
            stride = n ** (k - 1 - p)
            for idx in range(len(self.table)):
                digit = (idx // stride) % n
                base = idx - digit * stride
                if any(self.table[base + d * stride] != self.table[idx] for d in range(n)):
                    out.append(p)
                    break
        return out


@dataclass(frozen=True)
class LocalMap:
    source: Neighborhood
    target: Neighborhood
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if len(self.images) != len(self.source.U):
            raise AlgebraError("a local map must be total on the source neighborhood")
        bad = set(self.images) - set(self.target.U)
        if bad:
            raise AlgebraError(f"local map leaves the target neighborhood: {sorted(bad)}")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.source.U, self.images))

    def __call__(self, a: int) -> int:
        return dict(self.pairs)[a]

    @property
    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images) == len(self.target.U)

    def inverse(self) -> "LocalMap":
        if not self.is_bijective:
            raise AlgebraError("only bijective local maps have inverses")
        back = {b: a for a, b in self.pairs}
        return LocalMap(self.target, self.source, tuple(back[u] for u in self.target.U))

    def __str__(self):
        return "{" + ", ".join(f"{a}->{b}" for a, b in self.pairs) + "}"


# ------------------------------------------------------------ separation


@dataclass
class Separation:
    separates: bool
    inseparable_pair: tuple[int, int] | None = None
    witnesses: dict[tuple[int, int], Term] = field(default_factory=dict)

    def __bool__(self):
        return self.separates


def separates(A: FiniteAlgebra, e: ESpec = None) -> Separation:
    """Whether every pair of distinct elements is told apart by some ``e g``."""
    nb = neighborhood(A, e)
    em = nb.e.map
    monoid = unary_term_monoid(A)
    witnesses = {}
    for a, b in itertools.combinations(A.universe, 2):
        for g in monoid:
            if em[g.map[a]] != em[g.map[b]]:
                witnesses[(a, b)] = g.witness
                break
        else:
            return Separation(False, (a, b), witnesses)
    return Separation(True, None, witnesses)


def inseparable_pairs(A: FiniteAlgebra, e: ESpec = None) -> list[tuple[int, int]]:
    nb = neighborhood(A, e)
    em = nb.e.map
    monoid = unary_term_monoid(A)
    return [
        (a, b)
        for a, b in itertools.combinations(A.universe, 2)
        if all(em[g.map[a]] == em[g.map[b]] for g in monoid)
    ]


OracleDomain = Literal["intersect", "require-containment"]


@dataclass
class OracleVerdict:
    holds: bool
    isomorphism: dict[int, int] | None = None
    congruence: tuple[SubUniverse, Congruence] | None = None

    def __bool__(self):
        return self.holds


def lemma21_oracle(A: FiniteAlgebra, e: ESpec = None, domain: OracleDomain = "intersect") -> OracleVerdict:
    """Brute-force test of the subalgebra-isomorphism and congruence conditions.

    ``domain="intersect"`` asks an isomorphism to fix ``U & dom``;
    ``"require-containment"`` only constrains isomorphisms whose domain
    contains all of ``U``.
    """
    bound = get_limits().oracle_carrier
    if A.size > bound:
        raise ResourceBoundError("separation oracle carrier", bound, A.size)
    nb = neighborhood(A, e)
    U = set(nb.U)
    subs = all_subuniverses(A)
    algebras = {S.elements: S.algebra() for S in subs}

    bad_iso = None
    for B in subs:
        fixed = U & set(B.elements)
        if domain == "require-containment" and not U <= set(B.elements):
            continue
        for C in subs:
            if len(C) != len(B):
                continue
            for h in enumerate_homomorphisms(algebras[B.elements], algebras[C.elements]):
                if not h.is_bijective:
                    continue
                phi = {B.elements[i]: C.elements[v] for i, v in enumerate(h.images)}
                if all(phi[u] == u for u in fixed) and any(phi[b] != b for b in B.elements):
                    bad_iso = phi
                    break
            if bad_iso:
                break
        if bad_iso:
            break

    bad_con = None
    for B in subs:
        inside = sorted(U & set(B.elements))
        for alpha in all_congruences(B):
            if alpha.is_equality:
                continue
            if alpha.restrict(inside).is_equality:
                bad_con = (B, alpha)
                break
        if bad_con:
            break
    return OracleVerdict(bad_iso is None and bad_con is None, bad_iso, bad_con)


# --------------------------------------------------------------- density


def is_dense(A: FiniteAlgebra, e: ESpec = None) -> bool:
    nb = neighborhood(A, e)
    return len(closure_of(A, nb.U)) == A.size


def densify(A: FiniteAlgebra, e: ESpec = None) -> SubUniverse:
    nb = neighborhood(A, e)
    return SubUniverse(A, tuple(closure_of(A, nb.U)))


# ------------------------------------------------------- local homs


def restrict_hom(phi: HomGraph, e: ESpec = None) -> LocalMap:
    """The functor on morphisms: ``phi`` restricted to ``e(dom)``."""
    src = neighborhood(phi.dom, e)
    dst = src.at(phi.cod)
    for x in phi.dom.universe:
        if phi(src.e(x)) != dst.e(phi(x)):
            raise AlgebraError(f"{phi.images} does not commute with e at {x}; not a homomorphism")
    return LocalMap(src, dst, tuple(phi(u) for u in src.U))


def _graph_closure(lam: LocalMap):
    space = ProductSpace([lam.source.parent, lam.target.parent])
    return space.closure(lam.pairs)


def is_local_hom(lam: LocalMap) -> bool:
    """Whether ``lam`` commutes with every localized term operation."""
    rows = _graph_closure(lam).elements
    ea = np.asarray(lam.source.e.map)[rows[:, 0]]
    eb = np.asarray(lam.target.e.map)[rows[:, 1]]
    table = dict(lam.pairs)
    return all(table[a] == b for a, b in zip(ea.tolist(), eb.tolist()))


def lift_local_hom(lam: LocalMap) -> HomGraph:
    """The unique homomorphism ``A -> B`` restricting to ``lam``: ``Sg^{A x B}(lam)``."""
    A, B = lam.source.parent, lam.target.parent
    if not is_local_hom(lam):
        raise PreconditionError(f"{lam} is not a homomorphism of the localizations")
    if not is_dense(A, lam.source):
        raise PreconditionError(f"e is not dense for {A.name}")
    if not separates(B, lam.target):
        raise PreconditionError(f"e does not separate {B.name}")
    graph = {}
    for a, b in _graph_closure(lam).rows():
        if graph.setdefault(a, b) != b:
            raise AssertionError(f"lift is not single-valued at {a}; separation must have failed")
    if len(graph) != A.size:
        raise AssertionError("lift is not total; density must have failed")
    images = tuple(graph[a] for a in A.universe)
    if not is_homomorphism(A, B, images):
        raise AssertionError("lift is not a homomorphism")
    hom = HomGraph(A, B, images)
    if restrict_hom(hom, lam.source).images != lam.images:
        raise AssertionError("lift does not restrict to the local map")
    return hom


def enumerate_local_homs(src: Neighborhood, dst: Neighborhood) -> list[LocalMap]:
    src.parent.check_signature(dst.parent)
    nu, nv = len(src.U), len(dst.U)
    bound = get_limits().max_local_maps
    if nv**nu > bound:
        raise ResourceBoundError("local map candidates", bound, nv**nu)
    out = []
    for images in itertools.product(dst.U, repeat=nu):
        lam = LocalMap(src, dst, images)
        if is_local_hom(lam):
            out.append(lam)
    return out


# ---------------------------------------------------- local congruences


def _pairs_closure(A: FiniteAlgebra, pairs) -> list[tuple[int, int]]:
    return ProductSpace([A, A]).closure(sorted(pairs)).rows()


def is_local_congruence(A: FiniteAlgebra, e: ESpec, theta: Congruence) -> bool:
    """``e(Sg^{A^2}(theta)) = theta``: theta is compatible with every localized operation."""
    nb = neighborhood(A, e)
    if tuple(theta.elements) != nb.U:
        raise AlgebraError("a local congruence must partition the neighborhood")
    em = nb.e.map
    closed = {(em[a], em[b]) for a, b in _pairs_closure(A, theta.pairs())}
    return closed == theta.pairs()


def local_congruences(A: FiniteAlgebra, e: ESpec = None) -> list[Congruence]:
    nb = neighborhood(A, e)
    bound = get_limits().max_congruence_carrier
    if len(nb.U) > bound:
        raise ResourceBoundError("local congruence carrier", bound, len(nb.U))
    return [
        theta
        for labels in set_partitions(len(nb.U))
        if is_local_congruence(A, nb, theta := Congruence(nb.U, labels))
    ]


def lift_local_congruence(A: FiniteAlgebra, e: ESpec, theta: Congruence) -> Congruence:
    """Transitive closure of ``Sg^{A^2}(theta + diagonal)``; its ``e``-image is ``theta``."""
    nb = neighborhood(A, e)
    if not is_local_congruence(A, nb, theta):
        raise PreconditionError(f"{theta} is not a congruence of the localization")
    gens = set(theta.pairs()) | {(a, a) for a in A.universe}
    rep = components(A.universe, _pairs_closure(A, gens))
    hat = Congruence(tuple(A.universe), _rgs([rep[a] for a in A.universe]))
    em = nb.e.map
    image = {(em[a], em[b]) for a, b in hat.pairs()}
    if image != theta.pairs():
        raise AssertionError("lifted congruence does not localize back to theta")
    return hat


# ------------------------------------------------------- clone fragments


def clone_fragment(A: FiniteAlgebra, points: Sequence[int], k: int, until=None):
    """Closure of the projections in ``A^(points^k)``: every k-ary term operation on ``points``.

    Returns (coordinate tuples, closure).  ``until`` is passed to the closure
    and may stop it early.
    """
    bound = get_limits().max_fragment_coordinates
    if len(points) ** k > bound:
        raise ResourceBoundError("clone fragment coordinates", bound, len(points) ** k)
    coords = list(itertools.product(points, repeat=k))
    space = ProductSpace([A] * len(coords))
    gens = [tuple(c[i] for c in coords) for i in range(k)]
    return coords, space.closure(gens, track=True, until=until)


def localize_closure(nb: Neighborhood, cl, k: int) -> list[LocalOperation]:
    """Apply ``e`` to the rows of a fragment closure; one witness per table, sorted by table."""
    terms = cl.terms([Var(i) for i in range(k)])
    em = np.asarray(nb.e.map)
    seen: dict[tuple[int, ...], Term] = {}
    for row, t in zip(em[cl.elements].tolist(), terms):
        seen.setdefault(tuple(row), t)
    return [LocalOperation(k, table, t) for table, t in sorted(seen.items())]


def localize_clone_fragment(A: FiniteAlgebra, e: ESpec, k: int) -> list[LocalOperation]:
    """Every k-ary operation of ``e(A)``, each with one witness term, sorted by table."""
    if k < 1:
        raise AlgebraError("fragment arity must be at least 1")
    nb = neighborhood(A, e)
    _, cl = clone_fragment(A, nb.U, k)
    return localize_closure(nb, cl, k)


# ----------------------------------------------------------- Mal'cev


@dataclass
class MalcevResult:
    status: Literal["yes", "no", "unknown"]
    witness: Term | None = None
    route: str = ""

    def __bool__(self):
        return self.status == "yes"


def malcev_probe(A: FiniteAlgebra, e: ESpec = None) -> MalcevResult:
    """Search the localized clone for ``m`` with ``m(x,y,y) = x = m(y,y,x)``.

    Coordinates of the probe power are the instances ``(x,y,y) -> x`` for all
    ``x, y`` in ``U`` and ``(x,x,y) -> y`` for ``x != y``; Sg of the three
    variable tuples holds the values of every ternary term there.
    """
    nb = neighborhood(A, e)
    U = nb.U
    inst = [((x, y, y), x) for x in U for y in U] + [((x, x, y), y) for x in U for y in U if x != y]
    gens = [tuple(args[i] for args, _ in inst) for i in range(3)]
    target = np.asarray([want for _, want in inst])
    em = np.asarray(nb.e.map)
    try:
        cl = ProductSpace([A] * len(inst)).closure(gens, track=True)
    except ResourceBoundError:
        return _malcev_from_fragment(A, nb)
    hits = np.flatnonzero((em[cl.elements] == target).all(axis=1))
    if len(hits):
        return MalcevResult("yes", cl.terms([Var(0), Var(1), Var(2)])[int(hits[0])], "probe")
    return MalcevResult("no", None, "probe")


def _malcev_from_fragment(A: FiniteAlgebra, nb: Neighborhood) -> MalcevResult:
    try:
        frag = localize_clone_fragment(A, nb, 3)
    except ResourceBoundError:
        return MalcevResult("unknown", None, "fragment")
    for op in frag:
        if all(op.value(nb.U, (x, y, y)) == x and op.value(nb.U, (y, y, x)) == x for x in nb.U for y in nb.U):
            return MalcevResult("yes", op.witness, "fragment")
    return MalcevResult("no", None, "fragment")
