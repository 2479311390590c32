"""Built-in desk-scale algebras, shipped as text in the package."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .algebra import FiniteAlgebra
from .fileformat import parse_algebra, render_algebra

_Z3AFF_TABLE = " ".join(str((x - y + z + 1) % 3) for x, y, z in itertools.product(range(3), repeat=3))

CORPUS_TEXT = f"""\
# two-element meet semilattice
algebra SL2
size 2
op meet 2
0 0 0 1
end

# regular Z3-set: one 3-cycle
algebra C3
size 3
op s 1
1 2 0
end

# S3 acting on three points, not regular
algebra S3ACT
size 3
op a 1
1 0 2
op b 1
1 2 0
end

# affine: m(x,y,z) = x - y + z + 1 mod 3
algebra Z3AFF
size 3
op m 3
{_Z3AFF_TABLE}
end

# e = (0,1,1) does not separate {{1,2}}
algebra NSEP
size 3
op e 1
0 1 1
op f 2
0 0 0 0 1 1 0 1 1
end

# e = (0,1,0) separates and is dense
algebra SEP3
size 3
op e 1
0 1 1
op u 1
0 1 0
op j 2
0 2 0 1 1 1 1 1 1
end
"""

NAMES = ("SL2", "C3", "S3ACT", "Z3AFF", "NSEP", "SEP3")


@lru_cache(maxsize=None)
def corpus() -> tuple[FiniteAlgebra, ...]:
    return tuple(parse_algebra(CORPUS_TEXT))


def builtin(name: str) -> FiniteAlgebra:
    for A in corpus():
        if A.name == name:
            return A
    raise KeyError(f"no builtin algebra named {name!r}; choose from {', '.join(NAMES)}")


def corpus_text() -> str:
    return render_algebra(corpus())
