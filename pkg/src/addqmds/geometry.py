"""Dimensional dual arcs, dual hyperovals and their codes.

A d-dimensional dual arc (DDA) is a set of (d+1)-subspaces of F_q^m in which
any two meet in a point, any three meet trivially, and all of them together
span F_q^m.  A dual hyperoval (DHO) is a DDA of the maximum size theta_q(d)+1.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .code import AdditiveCode, code_from_packing
from .finite_field import GF, tower_for
from .linalg import SUBSPACE_CAP, PointIndex, Subspace, rank, subspaces
from .packing import Packing, as_field


def theta(q: int, d: int) -> int:
    """Number of points of PG(d, q)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    return (q ** (d + 1) - 1) // (q - 1)


@dataclass
class DualArc:
    F: GF
    m: int
    blocks: list[Subspace]

    def __post_init__(self):
        self.blocks = list(self.blocks)
        for B in self.blocks:
            if B.F != self.F or B.m != self.m:
                raise ValueError("block does not live in F_q^m")

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def d(self) -> int:
        dims = {B.dim for B in self.blocks}
        if len(dims) != 1:
            raise ValueError(f"mixed block dimensions {sorted(dims)}")
        return dims.pop() - 1

    def to_packing(self) -> Packing:
        return Packing(self.F, self.m, self.blocks, lam=2)

    @classmethod
    def from_packing(cls, P: Packing) -> "DualArc":
        return cls(P.F, P.r, P.blocks)


def dda_witness(L: DualArc) -> tuple | None:
    """None if L is a DDA, else the first failing axiom.

    Witnesses: ``("size", n)``, ``("pair", i, j, dim)``, ``("triple", i, j, k)``
    or ``("span", rank)``.  Mixed block dimensions raise ValueError.
    """
    if not L.blocks:
        return ("size", 0)
    d = L.d
    n = len(L)
    if n > theta(L.F.q, d) + 1:
        return ("size", n)
    bs = L.blocks
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            X = bs[i].intersect(bs[j])
            if X.dim != 1:
                return ("pair", i, j, X.dim)
            pairs[i, j] = X
    for (i, j), X in pairs.items():
        for k in range(j + 1, n):
            if X <= bs[k]:
                return ("triple", i, j, k)
    rk = rank(L.F, np.vstack([B.basis for B in bs]))
    if rk != L.m:
        return ("span", rk)
    return None


def is_dda(L: DualArc) -> bool:
    return dda_witness(L) is None


def is_dho(L: DualArc) -> bool:
    return len(L) == theta(L.F.q, L.d) + 1 and is_dda(L)


def dda_to_code(L: DualArc, check: bool = True) -> AdditiveCode:
    """The [n, 2+1/h, n-2]_q^h dually QMDS code whose T(C) is L (blocks of dim h+1 in F_q^(2h+1))."""
    h = L.d
    if L.m != 2 * h + 1:
        raise ValueError(f"ambient dim {L.m} != 2h+1 = {2 * h + 1}")
    bad = dda_witness(L)
    if bad is not None:
        raise ValueError(f"not a dual arc: {bad}")
    C = code_from_packing(L.to_packing(), tower_for(L.F.q, h))
    if check and not C.is_dually_qmds():
        raise AssertionError("code of a dual arc is not dually QMDS")
    return C


def code_to_dda(C: AdditiveCode) -> DualArc:
    """T(C) as a dual arc; C must be a faithful code with r = 2h+1."""
    if C.r != 2 * C.h + 1:
        raise ValueError(f"r={C.r} is not 2h+1")
    if not C.is_faithful():
        raise ValueError("code is not faithful")
    L = DualArc(C.F, C.r, C.T().blocks)
    bad = dda_witness(L)
    if bad is not None:
        raise ValueError(f"T(C) is not a dual arc: {bad}")
    return L


# ---------------------------------------------------------------------------
# exhaustive DHO search
#
# Every point of a DHO block lies in exactly one other block, so the search
# branches on a point covered once (the one with fewest candidates): some
# later block must contain it.  The first three blocks are fixed.  That is
# sound because GL acts transitively on triples of (h+1)-spaces of
# F_q^(2h+1) meeting pairwise in points with trivial common intersection.
# The choices for the fourth block are the resumable work units.
#
# Candidate sets are Python ints used as bitsets over the candidate list.


@dataclass
class SearchResult:
    status: str  # "found", "none" or "incomplete"
    arc: DualArc | None
    units_done: int
    units_total: int
    nodes: int = 0
    meta: dict = field(default_factory=dict)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Ctx:
    FIXED = 3

    def __init__(self, q: int, h: int, cap: int):
        F = as_field(q)
        self.F, self.h, self.m = F, h, 2 * h + 1
        self.target = theta(F.q, h) + 1
        idx = PointIndex(F, self.m)
        self.cands = list(subspaces(F, self.m, h + 1, cap))
        self.masks = masks = [idx.mask(S) for S in self.cands]
        n = len(masks)
        self.containing = [0] * idx.n
        for c, mc in enumerate(masks):
            for pt in _bits(mc):
                self.containing[pt] |= 1 << c
        self.compat = []
        for c, mc in enumerate(masks):
            row = 0
            for d in range(n):
                if (mc & masks[d]).bit_count() == 1:
                    row |= 1 << d
            self.compat.append(row)
        self.all = (1 << n) - 1

    def step(self, state, b):
        """Add block b; return the new (chosen, valid, once, twice)."""
        chosen, valid, once, twice = state
        mb = self.masks[b]
        added = mb & once
        kill = 0
        for pt in _bits(added):
            kill |= self.containing[pt]
        valid = valid & self.compat[b] & ~kill
        twice |= added
        once = (once | mb) & ~twice
        return chosen + [b], valid, once, twice

    def branch(self, valid, once) -> int:
        """Candidates through the once-covered point with fewest of them (0 if some point has none)."""
        best = None
        for pt in _bits(once):
            opts = valid & self.containing[pt]
            cnt = opts.bit_count()
            if cnt == 0:
                return 0
            if best is None or cnt < best[0]:
                best = (cnt, opts)
        return best[1] if best else 0

    def root(self):
        state = ([], self.all, 0, 0)
        for _ in range(self.FIXED):
            if not state[1]:
                break
            state = self.step(state, (state[1] & -state[1]).bit_length() - 1)
        return state

    def units(self):
        root = self.root()
        if len(root[0]) < self.FIXED:
            return [], root
        return list(_bits(self.branch(root[1], root[2]))), root

    def dfs(self, state, counter):
        counter[0] += 1
        chosen, valid, once, _ = state
        if len(chosen) == self.target:
            rows = np.vstack([self.cands[i].basis for i in chosen])
            return list(chosen) if rank(self.F, rows) == self.m else None
        if len(chosen) + valid.bit_count() < self.target or not once:
            return None
        for b in _bits(self.branch(valid, once)):
            found = self.dfs(self.step(state, b), counter)
            if found is not None:
                return found
        return None


_CTX: _Ctx | None = None


def _init_worker(q, h, cap):
    global _CTX
    _CTX = _Ctx(q, h, cap)


def _run_unit(b: int):
    ctx = _CTX
    _, root = ctx.units()
    counter = [0]
    found = ctx.dfs(ctx.step(root, b), counter)
    return found, counter[0]


def _load_state(path: Path | None, q: int, h: int) -> dict:
    if path is None or not path.exists():
        return {"q": q, "h": h, "done": 0, "nodes": 0, "found": None}
    state = json.loads(path.read_text())
    if state.get("q") != q or state.get("h") != h:
        raise ValueError(f"state file {path} belongs to q={state.get('q')} h={state.get('h')}")
    return state


def _save_state(path: Path | None, state: dict) -> None:
    if path is None:
        return
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state))
    os.replace(tmp, path)


def search_dho(q: int, h: int, cap: int = SUBSPACE_CAP, state_path: str | os.PathLike | None = None,
               workers: int = 1, max_units: int | None = None) -> SearchResult:
    """Exhaustive search for an h-dimensional DHO in F_q^(2h+1).

    Units are processed in order and the first hit is returned, so the answer
    does not depend on ``workers``.  With ``state_path`` progress is saved
    after every unit and a later call resumes from it.  ``max_units`` stops
    early with status ``"incomplete"``.
    """
    global _CTX
    path = Path(state_path) if state_path is not None else None
    ctx = _Ctx(q, h, cap)
    units, root = ctx.units()
    state = _load_state(path, q, h)
    if state["found"] is not None:
        arc = DualArc(ctx.F, ctx.m, [ctx.cands[i] for i in state["found"]])
        return SearchResult("found", arc, state["done"], len(units), state["nodes"])
    todo = list(range(state["done"], len(units)))
    if max_units is not None:
        todo = todo[:max_units]

    def record(found, nodes):
        state["done"] += 1
        state["nodes"] += nodes
        if found is not None:
            state["found"] = found
        _save_state(path, state)

    if workers > 1 and todo:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(q, h, cap)) as ex:
            for found, nodes in ex.map(_run_unit, [units[u] for u in todo]):
                record(found, nodes)
                if found is not None:
                    ex.shutdown(cancel_futures=True)
                    break
    else:
        for u in todo:
            counter = [0]
            found = ctx.dfs(ctx.step(root, units[u]), counter)
            record(found, counter[0])
            if found is not None:
                break
    if state["found"] is not None:
        arc = DualArc(ctx.F, ctx.m, [ctx.cands[i] for i in state["found"]])
        return SearchResult("found", arc, state["done"], len(units), state["nodes"])
    status = "none" if state["done"] == len(units) else "incomplete"
    return SearchResult(status, None, state["done"], len(units), state["nodes"])


def complete_dda(seed: DualArc, cap: int = SUBSPACE_CAP) -> DualArc | None:
    """Extend a partial dual arc to a DHO, or None if no completion exists."""
    F, m = seed.F, seed.m
    h = seed.d
    if m != 2 * h + 1:
        raise ValueError("seed must live in F_q^(2h+1)")
    ctx = _Ctx(F.q, h, cap)
    pos = {S: i for i, S in enumerate(ctx.cands)}
    state = ([], ctx.all, 0, 0)
    for B in seed.blocks:
        i = pos[B]
        if not state[1] >> i & 1:
            raise ValueError("seed blocks are not a partial dual arc")
        state = ctx.step(state, i)
    found = ctx.dfs(state, [0])
    if found is None:
        return None
    return DualArc(F, m, [ctx.cands[i] for i in found])


__all__ = [
    "DualArc",
    "SearchResult",
    "code_to_dda",
    "complete_dda",
    "dda_to_code",
    "dda_witness",
    "is_dda",
    "is_dho",
    "search_dho",
    "theta",
]
