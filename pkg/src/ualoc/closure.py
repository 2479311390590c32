"""Subuniverse generation inside (possibly heterogeneous) direct products.

Every closure in the package funnels through :class:`ProductSpace`: Sg of a
set of tuples in ``A_0 x ... x A_{m-1}`` computed without materializing the
product's tables.  Elements are rows of an ``int64`` array.  Generation is
semi-naive: a round only evaluates argument tuples that contain at least one
element discovered in the previous round, and the innermost argument is
vectorized over a whole block of rows.

Rows are deduplicated through fixed-width codes (mixed radix packed into as
many ``int64`` words as needed) viewed as ``np.void`` so that ``np.unique``
and ``np.isin`` work on whole rows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import App, FiniteAlgebra, Term, Var, substitute
from .config import get_limits
from .errors import ResourceBoundError

_WORD = 1 << 62
_BLOCK_ROWS = 1 << 16


class ProductSpace:
    def __init__(self, factors: Sequence[FiniteAlgebra]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("product space needs at least one coordinate")
        for F in factors[1:]:
            factors[0].check_signature(F)
        self.factors = factors
        self.width = len(factors)
        self.signature = factors[0].signature
        groups: dict[int, list[int]] = {}
        algs: dict[int, FiniteAlgebra] = {}
        for c, F in enumerate(factors):
            groups.setdefault(id(F), []).append(c)
            algs[id(F)] = F
        # (columns, size, [table per op])
        self._groups = [
            (
                np.array(cols, dtype=np.intp),
                algs[k].size,
                [np.asarray(op.table, dtype=np.int64) for op in algs[k].ops],
            )
            for k, cols in groups.items()
        ]
        sizes = [F.size for F in factors]
        # split columns into words whose radix product stays below 2**62
        self._words: list[tuple[int, int, np.ndarray]] = []
        start, prod = 0, 1
        for c, n in enumerate(sizes + [None]):
            if n is None or prod * n >= _WORD:
                radix = np.ones(c - start, dtype=np.int64)
                for i in range(c - start - 2, -1, -1):
                    radix[i] = radix[i + 1] * sizes[start + i + 1]
                self._words.append((start, c, radix))
                start, prod = c, 1
            if n is not None:
                prod *= n

    # -- row coding ---------------------------------------------------

    def codes(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.width)
        words = np.empty((rows.shape[0], len(self._words)), dtype=np.int64)
        for w, (a, b, radix) in enumerate(self._words):
            words[:, w] = rows[:, a:b] @ radix
        return np.ascontiguousarray(words).view(np.dtype((np.void, 8 * len(self._words)))).ravel()

    # -- operations ---------------------------------------------------

    def apply(self, j: int, args: Sequence[np.ndarray]) -> np.ndarray:
        """Apply operation ``j`` coordinatewise; ``args`` broadcast against each other."""
        args = [np.asarray(a, dtype=np.int64) for a in args]
        if args:
            shape = np.broadcast_shapes(*(a.shape for a in args))
        else:
            shape = (self.width,)
        out = np.empty(shape, dtype=np.int64)
        for cols, n, tables in self._groups:
            idx = 0
            for a in args:
                idx = idx * n + a[..., cols]
            if not args:
                out[..., cols] = tables[j][0]
            else:
                out[..., cols] = tables[j][idx]
        return out

    def closure(
        self,
        gens: Sequence[Sequence[int]],
        *,
        track=False,
        limit: int | None = None,
        until: Callable[[np.ndarray], bool] | None = None,
    ) -> "Closure":
        """Sg of ``gens`` together with the values of all 0-ary operations.

        ``until`` is called on each batch of fresh rows; when it returns True
        the search stops and the partial closure found so far is returned
        with ``complete=False``.
        """
        limit = limit if limit is not None else get_limits().max_closure_size
        gens = np.asarray(gens, dtype=np.int64).reshape(-1, self.width)
        ops = [(j, k) for j, (_, k) in enumerate(self.signature)]
        seed_rows = [gens]
        seed_prov: list = [("gen", i) for i in range(len(gens))]
        for j, k in ops:
            if k == 0:
                seed_rows.append(self.apply(j, [])[None, :])
                seed_prov.append(("op", j, ()))
        seed = np.concatenate(seed_rows, axis=0) if seed_rows else np.empty((0, self.width), np.int64)
        codes = self.codes(seed)
        _, first = np.unique(codes, return_index=True)
        first.sort()
        elems = seed[first]
        known = codes[first]
        prov = [seed_prov[i] for i in first] if track else None
        if len(elems) > limit:
            raise ResourceBoundError("closure size", limit, len(elems))
        if until is not None and until(elems):
            return Closure(self, elems, known, prov, complete=False)

        start = 0
        stopped = False
        while start < len(elems):
            stop = len(elems)
            cand_rows, cand_prov = [], []
            pending = 0
            for j, k in ops:
                if k == 0:
                    continue
                for p in range(k):
                    # args before p are old, arg p is new, args after p are anything
                    ranges = [range(0, start)] * p + [range(start, stop)] + [range(0, stop)] * (k - p - 1)
                    *outer, inner = ranges
                    if any(len(r) == 0 for r in ranges):
                        continue
                    inner_rows = elems[inner.start : inner.stop]
                    L = len(inner_rows)
                    chunk = max(1, _BLOCK_ROWS // L)
                    combos = itertools.product(*outer)
                    while not stopped:
                        batch = list(itertools.islice(combos, chunk))
                        if not batch:
                            break
                        fixed_idx = np.asarray(batch, dtype=np.intp).reshape(len(batch), k - 1)
                        args = [elems[fixed_idx[:, q]][:, None, :] for q in range(k - 1)]
                        block = self.apply(j, args + [inner_rows[None, :, :]]).reshape(-1, self.width)
                        bcodes = self.codes(block)
                        _, bfirst = np.unique(bcodes, return_index=True)
                        bfirst = bfirst[~np.isin(bcodes[bfirst], known)]
                        if len(bfirst) == 0:
                            continue
                        bfirst.sort()
                        cand_rows.append(block[bfirst])
                        if track:
                            for i in bfirst:
                                c, r = divmod(int(i), L)
                                cand_prov.append(("op", j, tuple(batch[c]) + (inner.start + r,)))
                        pending += len(bfirst)
                        if until is not None and until(block[bfirst]):
                            stopped = True
                            break
                        # pending overcounts (duplicates across blocks); compact before trusting it
                        if pending > _BLOCK_ROWS or len(elems) + pending > limit:
                            cand_rows, cand_prov = self._compact(cand_rows, cand_prov, track)
                            pending = len(cand_rows[0])
                            if len(elems) + pending > limit:
                                raise ResourceBoundError("closure size", limit, len(elems) + pending)
                    if stopped:
                        break
                if stopped:
                    break
            if not cand_rows:
                break
            rows = np.concatenate(cand_rows, axis=0)
            rcodes = self.codes(rows)
            _, rfirst = np.unique(rcodes, return_index=True)
            rfirst.sort()
            if len(elems) + len(rfirst) > limit:
                raise ResourceBoundError("closure size", limit, len(elems) + len(rfirst))
            elems = np.concatenate([elems, rows[rfirst]], axis=0)
            known = np.concatenate([known, rcodes[rfirst]])
            if track:
                prov.extend(cand_prov[i] for i in rfirst)
            start = stop
            if stopped:
                break
        return Closure(self, elems, known, prov, complete=not stopped)

    def _compact(self, cand_rows, cand_prov, track):
        rows = np.concatenate(cand_rows, axis=0)
        _, first = np.unique(self.codes(rows), return_index=True)
        first.sort()
        return [rows[first]], ([cand_prov[i] for i in first] if track else [])


@dataclass
class Closure:
    """Result of :meth:`ProductSpace.closure`; rows are in discovery order."""

    space: ProductSpace
    elements: np.ndarray
    codes: np.ndarray
    provenance: list | None
    complete: bool = True

    def __len__(self):
        return len(self.elements)

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in r) for r in self.elements]

    def index_of(self, rows) -> np.ndarray:
        """Row indices of ``rows``; -1 for rows outside the closure."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.space.width)
        q = self.space.codes(rows)
        order = np.argsort(self.codes)
        srt = self.codes[order]
        pos = np.searchsorted(srt, q)
        pos = np.minimum(pos, len(srt) - 1)
        hit = srt[pos] == q
        return np.where(hit, order[pos], -1)

    def contains(self, row) -> bool:
        return bool(self.index_of([row])[0] >= 0)

    def terms(self, gen_terms: Sequence[Term]) -> list[Term]:
        """Witness term for every row, built from the generation record."""
        if self.provenance is None:
            raise ValueError("closure was computed without tracking")
        symbols = [s for s, _ in self.space.signature]
        out: list[Term] = []
        for rec in self.provenance:
            if rec[0] == "gen":
                out.append(gen_terms[rec[1]])
            else:
                _, j, args = rec
                out.append(App(symbols[j], tuple(out[i] for i in args)))
        return out


def projection_terms(k: int) -> list[Term]:
    return [Var(i) for i in range(k)]


__all__ = ["ProductSpace", "Closure", "projection_terms", "substitute"]
