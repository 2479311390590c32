"""Finite algebras given by operation tables, and terms over them.

Tables are row-major with the last argument varying fastest, so the entry
for ``f(a_0, ..., a_{k-1})`` sits at ``sum(a_i * n**(k-1-i))``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

from .config import get_limits
from .errors import AlgebraError, ResourceBoundError, SignatureError


@dataclass(frozen=True)
class Operation:
    symbol: str
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))


@dataclass(frozen=True, eq=True)
class FiniteAlgebra:
    """An algebra on the universe ``{0, ..., size-1}``."""

    name: str
    size: int
    ops: tuple[Operation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.size < 1:
            raise AlgebraError(f"algebra {self.name!r}: size must be >= 1, got {self.size}")
        seen = set()
        for op in self.ops:
            if op.symbol in seen:
                raise AlgebraError(f"algebra {self.name!r}: duplicate operation symbol {op.symbol!r}")
            seen.add(op.symbol)
            if op.arity < 0:
                raise AlgebraError(f"operation {op.symbol!r}: negative arity")
            want = self.size**op.arity
            if len(op.table) != want:
                raise AlgebraError(
                    f"operation {op.symbol!r}: table has {len(op.table)} entries, expected {want}"
                )
            for v in op.table:
                if not 0 <= v < self.size:
                    raise AlgebraError(f"operation {op.symbol!r}: entry {v} out of range 0..{self.size - 1}")

    def __hash__(self):
        return hash((self.name, self.size, self.ops))

    @property
    def universe(self) -> range:
        return range(self.size)

    @cached_property
    def signature(self) -> tuple[tuple[str, int], ...]:
        return tuple((op.symbol, op.arity) for op in self.ops)

    @cached_property
    def _by_symbol(self) -> dict[str, int]:
        return {op.symbol: i for i, op in enumerate(self.ops)}

    def op(self, symbol: str) -> Operation:
        try:
            return self.ops[self._by_symbol[symbol]]
        except KeyError:
            raise SignatureError(f"algebra {self.name!r} has no operation {symbol!r}") from None

    def op_index(self, symbol: str) -> int:
        try:
            return self._by_symbol[symbol]
        except KeyError:
            raise SignatureError(f"algebra {self.name!r} has no operation {symbol!r}") from None

    def apply(self, symbol_or_index: str | int, args: Sequence[int]) -> int:
        op = self.ops[symbol_or_index] if isinstance(symbol_or_index, int) else self.op(symbol_or_index)
        if len(args) != op.arity:
            raise SignatureError(f"{op.symbol!r} has arity {op.arity}, got {len(args)} arguments")
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return op.table[idx]

    def constants(self) -> list[int]:
        """Values of the 0-ary operations, in signature order."""
        return [op.table[0] for op in self.ops if op.arity == 0]

    def same_signature(self, other: FiniteAlgebra) -> bool:
        return self.signature == other.signature

    def check_signature(self, other: FiniteAlgebra) -> None:
        if not self.same_signature(other):
            raise SignatureError(
                f"signatures differ: {self.name}{list(self.signature)} vs {other.name}{list(other.signature)}"
            )

    def argument_tuples(self, arity: int) -> Iterable[tuple[int, ...]]:
        return itertools.product(range(self.size), repeat=arity)


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple["Term", ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(str(a) for a in self.args)})"


Term = Union[Var, App]


def term_arity(t: Term) -> int:
    """One more than the largest variable index occurring in ``t``."""
    stack, best = [t], -1
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            best = max(best, s.index)
        else:
            stack.extend(s.args)
    return best + 1


def substitute(t: Term, replacement: Sequence[Term]) -> Term:
    """Replace variable ``x_i`` by ``replacement[i]``."""
    if isinstance(t, Var):
        return replacement[t.index]
    return App(t.symbol, tuple(substitute(a, replacement) for a in t.args))


def compose_unary(outer: Term, inner: Term) -> Term:
    return substitute(outer, [inner])


def eval_term(A: FiniteAlgebra, t: Term, args: Sequence[int]) -> int:
    """Value of the term operation of ``t`` at ``args``."""
    if isinstance(t, Var):
        if t.index >= len(args):
            raise AlgebraError(f"variable x{t.index} has no argument ({len(args)} given)")
        return args[t.index]
    i = A.op_index(t.symbol)
    op = A.ops[i]
    if len(t.args) != op.arity:
        raise SignatureError(f"{t.symbol!r} has arity {op.arity}, term gives {len(t.args)}")
    return A.apply(i, [eval_term(A, s, args) for s in t.args])


def term_table(A: FiniteAlgebra, t: Term, arity: int) -> tuple[int, ...]:
    return tuple(eval_term(A, t, xs) for xs in A.argument_tuples(arity))


# ------------------------------------------------------------- products


def encode(coords: Sequence[int], sizes: Sequence[int]) -> int:
    """Mixed-radix code, factor 0 most significant."""
    code = 0
    for c, n in zip(coords, sizes):
        code = code * n + c
    return code


def decode(code: int, sizes: Sequence[int]) -> tuple[int, ...]:
    out = []
    for n in reversed(sizes):
        code, r = divmod(code, n)
        out.append(r)
    return tuple(reversed(out))


def direct_product(factors: Sequence[FiniteAlgebra], name: str | None = None) -> FiniteAlgebra:
    """Materialized direct product; element codes are mixed radix, factor 0 most significant.

    A direct power ``A^I`` is ``direct_product([A] * |I|)`` with coordinate
    ``i`` of the power at position ``i``.
    """
    if not factors:
        raise AlgebraError("direct product needs at least one factor")
    first = factors[0]
    for F in factors[1:]:
        first.check_signature(F)
    sizes = [F.size for F in factors]
    total = math.prod(sizes)
    bound = get_limits().max_product_size
    if total > bound:
        raise ResourceBoundError("direct product size", bound, total)
    elements = [decode(c, sizes) for c in range(total)]
    ops = []
    for j, op in enumerate(first.ops):
        if total**op.arity > bound:
            raise ResourceBoundError(f"table of {op.symbol!r} in direct product", bound, total**op.arity)
        table = []
        for args in itertools.product(elements, repeat=op.arity):
            table.append(encode([F.apply(j, [a[c] for a in args]) for c, F in enumerate(factors)], sizes))
        ops.append(Operation(op.symbol, op.arity, tuple(table)))
    return FiniteAlgebra(name or "x".join(F.name for F in factors), total, tuple(ops))


def relabel(A: FiniteAlgebra, perm: Sequence[int], name: str | None = None) -> FiniteAlgebra:
    """Isomorphic copy of ``A`` in which element ``a`` is renamed ``perm[a]``."""
    n = A.size
    if sorted(perm) != list(range(n)):
        raise AlgebraError("relabeling must be a permutation of the universe")
    inv = [0] * n
    for a, b in enumerate(perm):
        inv[b] = a
    ops = []
    for j, op in enumerate(A.ops):
        table = tuple(perm[A.apply(j, [inv[x] for x in xs])] for xs in A.argument_tuples(op.arity))
        ops.append(Operation(op.symbol, op.arity, table))
    return FiniteAlgebra(name or f"{A.name}'", n, tuple(ops))


def restrict(A: FiniteAlgebra, elements: Sequence[int], name: str | None = None) -> FiniteAlgebra:
    """The subalgebra on a closed subset, relabeled ``elements[i] -> i``."""
    pos = {a: i for i, a in enumerate(elements)}
    ops = []
    for j, op in enumerate(A.ops):
        table = []
        for xs in itertools.product(elements, repeat=op.arity):
            v = A.apply(j, xs)
            if v not in pos:
                raise AlgebraError(f"{sorted(elements)} is not closed under {op.symbol!r}")
            table.append(pos[v])
        ops.append(Operation(op.symbol, op.arity, tuple(table)))
    return FiniteAlgebra(name or f"{A.name}|{{{','.join(map(str, elements))}}}", len(elements), tuple(ops))
