"""Random small codes and a fixed corpus of structured codes for the property suites."""

from __future__ import annotations

import functools

import numpy as np

from addqmds.code import AdditiveCode
from addqmds.constructions import construct_A, construct_spread_code
from addqmds.finite_field import tower_for
from addqmds.geometry import DualArc, dda_to_code, search_dho
from addqmds.linalg import rank

# (q, h) pairs small enough for exhaustive checks
SHAPES = [(2, 2), (2, 3), (3, 2), (4, 2)]


@functools.lru_cache(maxsize=None)
def tower(q, h):
    return tower_for(q, h)


def random_code(rng: np.random.Generator, q=None, h=None, n=None, r=None, zero_col_prob=0.1) -> AdditiveCode:
    """A random full-rank code, 1 <= r < nh, with q^r and q^(nh-r) at most 2^16."""
    if q is None:
        q, h = SHAPES[rng.integers(len(SHAPES))]
    T = tower(q, h)
    if n is None:
        n = int(rng.integers(1, 7))
    max_r = n * h - 1
    while q**max_r > 1 << 16:
        max_r -= 1
    min_r = 1
    while q ** (n * h - min_r) > 1 << 16:
        min_r += 1
    if r is None:
        r = int(rng.integers(min_r, max_r + 1))
    while True:
        Gt = rng.integers(0, q, size=(r, n * h))
        if rng.random() < zero_col_prob and n > 1:
            i = int(rng.integers(n))
            Gt[:, i * h : (i + 1) * h] = 0
        if rank(T.base, Gt) == r:
            return AdditiveCode.from_expanded(T, Gt, n)


def random_qmds_code(rng: np.random.Generator, attempts: int = 200) -> AdditiveCode | None:
    """Random faithful QMDS code with d > 1 (rejection sampling, may give up)."""
    for _ in range(attempts):
        C = random_code(rng, zero_col_prob=0.0)
        if C.is_faithful() and C.is_qmds() and C.min_distance() > 1:
            return C
    return None


@functools.lru_cache(maxsize=None)
def dho_q2h2() -> DualArc:
    return search_dho(2, 2).arc


@functools.lru_cache(maxsize=None)
def structured_codes() -> tuple:
    """Constructed codes small enough for exhaustive checks."""
    out = []
    for args in [(2, 2, 2, 1), (2, 2, 3, 1), (3, 2, 2, 1), (2, 4, 2, 2), (4, 2, 2, 1), (2, 3, 2, 1)]:
        out.append(construct_A(*args)[1])
    for args in [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1)]:
        out.append(construct_spread_code(*args)[1])
    L = dho_q2h2()
    out.append(dda_to_code(L))
    for drop in range(3):
        out.append(dda_to_code(DualArc(L.F, L.m, L.blocks[: len(L) - 1 - drop])))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def dually_qmds_corpus() -> tuple:
    return tuple(C for C in structured_codes() if C.is_dually_qmds())
