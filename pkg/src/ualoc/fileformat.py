"""Reader and writer for the plain-text algebra format.

::

    # comment
    algebra SL2
    size 2
    op meet 2
    0 0 0 1
    end

Tables are row-major with the last argument varying fastest and may span
several lines.  A file may hold any number of ``algebra ... end`` blocks.
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .algebra import FiniteAlgebra, Operation
from .errors import AlgebraError, ParseError


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for tok in line.split():
            yield lineno, tok


def parse_algebra(text: str | TextIO) -> list[FiniteAlgebra]:
    if not isinstance(text, str):
        text = text.read()
    toks = list(_tokens(text))
    pos = 0
    out = []

    def take(what):
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1][0] if toks else 1
            raise ParseError(f"unexpected end of input, expected {what}", last)
        pos += 1
        return toks[pos - 1]

    def take_int(what):
        line, tok = take(what)
        try:
            return line, int(tok)
        except ValueError:
            raise ParseError(f"expected {what}, got {tok!r}", line) from None

    while pos < len(toks):
        line, kw = take("'algebra'")
        if kw != "algebra":
            raise ParseError(f"expected 'algebra', got {kw!r}", line)
        head_line, name = take("algebra name")
        line, kw = take("'size'")
        if kw != "size":
            raise ParseError(f"expected 'size', got {kw!r}", line)
        line, n = take_int("size")
        if n < 1:
            raise ParseError(f"size must be >= 1, got {n}", line)
        ops = []
        symbols = set()
        while True:
            line, kw = take("'op' or 'end'")
            if kw == "end":
                break
            if kw != "op":
                raise ParseError(f"expected 'op' or 'end', got {kw!r}", line)
            op_line, sym = take("operation symbol")
            if sym in symbols:
                raise ParseError(f"duplicate operation symbol {sym!r}", op_line)
            symbols.add(sym)
            line, k = take_int("arity")
            if k < 0:
                raise ParseError(f"negative arity {k}", line)
            table = []
            for _ in range(n**k):
                if pos < len(toks) and toks[pos][1] in ("op", "end"):
                    raise ParseError(
                        f"operation {sym!r}: table has {len(table)} entries, expected {n**k}", toks[pos][0]
                    )
                line, v = take_int(f"table entry of {sym!r}")
                if not 0 <= v < n:
                    raise ParseError(f"operation {sym!r}: entry {v} out of range 0..{n - 1}", line)
                table.append(v)
            if pos < len(toks) and toks[pos][1] not in ("op", "end"):
                raise ParseError(f"operation {sym!r}: table has more than {n**k} entries", toks[pos][0])
            ops.append(Operation(sym, k, tuple(table)))
        try:
            out.append(FiniteAlgebra(name, n, tuple(ops)))
        except AlgebraError as exc:
            raise ParseError(str(exc), head_line) from None
    return out


def render_algebra(algebras: FiniteAlgebra | Iterable[FiniteAlgebra]) -> str:
    if isinstance(algebras, FiniteAlgebra):
        algebras = [algebras]
    lines = []
    for A in algebras:
        lines += [f"algebra {A.name}", f"size {A.size}"]
        for op in A.ops:
            lines.append(f"op {op.symbol} {op.arity}")
            row = max(A.size, 1)
            for i in range(0, len(op.table), row):
                lines.append(" ".join(map(str, op.table[i : i + row])))
        lines.append("end")
    return "\n".join(lines) + "\n"
