"""Long QMDS families built as (k-1)-packings of F_q^r.

Coordinates of F_q^r, r = (k-1)h + r0, are read as
(x_1, ..., x_{k-1}, z_1, ..., z_{r0}) with each x_i in F_{q^h} expanded over
1, xi, ..., xi^(h-1); x_i occupies coordinates [(i-1)h, ih).

Every constructor verifies its own output: the packing property by point
counting and the distance by exhaustive search (when within cap).  A failed
check raises ``ConstructionError``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import ENUM_CAP, AdditiveCode, code_from_packing
from .finite_field import Elem, FieldTower, tower_for
from .linalg import SUBSPACE_CAP, CapExceeded, PointIndex, Subspace, kernel, subspaces
from .packing import Packing, lambda_packing_witness, partial_spread

FAMILIES = ("A", "B", "Bbar", "spread")


class ConstructionError(RuntimeError):
    """A construction failed its own post-hoc verification."""


@dataclass(frozen=True)
class ConstructionParams:
    family: str
    q: int
    h: int
    k: int
    r0: int
    r1: int | None = None
    r2: int | None = None

    @property
    def r(self) -> int:
        return (self.k - 1) * self.h + self.r0

    def validate(self) -> "ConstructionParams":
        """Return params with defaults filled in; raise ValueError when invalid."""
        fam, q, h, k, r0 = self.family, self.q, self.h, self.k, self.r0
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
        tower_for(q, 1)  # q must be a prime power
        if fam == "A":
            if h < 2:
                raise ValueError("family A needs h >= 2")
            if not 2 <= k <= q**h - 1:
                raise ValueError("family A needs 2 <= k <= q^h - 1")
            if not 1 <= r0 <= h / 2:
                raise ValueError("family A needs 1 <= r0 <= h/2")
            return self
        if fam == "spread":
            if k != 2:
                raise ValueError("spread codes have k = 2")
            if h < 2 or not 1 <= r0 < h:
                raise ValueError("spread codes need h >= 2 and 1 <= r0 < h")
            return self
        # B and Bbar
        if h < 6 or h == 7:
            raise ValueError("families B and Bbar need h >= 6, h != 7")
        if fam == "Bbar" and k != 3:
            raise ValueError("family Bbar has k = 3")
        if not 3 <= k <= q**h - 1:
            raise ValueError("family B needs 3 <= k <= q^h - 1")
        if not 1 <= r0 <= h / 6:
            raise ValueError("families B and Bbar need 1 <= r0 <= h/6")
        r1, r2 = self.r1, self.r2
        if r1 is None and r2 is None:
            r1, r2 = default_r1_r2(h, r0)
        elif r1 is None:
            r1 = h + r0 - r2
        elif r2 is None:
            r2 = h + r0 - r1
        if r1 + r2 != h + r0:
            raise ValueError("need r1 + r2 = h + r0")
        if not (1 <= r1 <= 2 * h / 3 and 1 <= r2 <= h / 2):
            raise ValueError("need r1 <= 2h/3 and 1 <= r2 <= h/2")
        return ConstructionParams(fam, q, h, k, r0, r1, r2)


def default_r1_r2(h: int, r0: int) -> tuple[int, int]:
    """Largest r2 <= h/2 with r1 = h + r0 - r2 <= 2h/3."""
    for r2 in range(h // 2, 0, -1):
        if h + r0 - r2 <= (2 * h) // 3:
            return h + r0 - r2, r2
    raise ValueError(f"no admissible (r1, r2) for h={h}, r0={r0}")


# ---------------------------------------------------------------------------
# the blocks


def w_alpha(tower: FieldTower, k: int, r0: int, alpha: Elem) -> Subspace:
    """Solutions of  sum_i alpha^(i-1) x_i + alpha^(k-1) sum_j xi^(j-1) z_j = 0.

    The left side is an F_q-linear map F_q^r -> F_{q^h}; its h x r matrix has
    one column per coordinate, and the block is its kernel.  0^0 = 1.
    """
    T, h = tower, tower.h
    r = (k - 1) * h + r0
    apow = [T.pow(alpha, i) if i else T.one for i in range(k)]
    cols = []
    for i in range(k - 1):
        cols.append(T.mul_matrix(apow[i]))
    xis = [T.pow(T.xi, j) for j in range(r0)]
    cols.append(np.array([T.mul(apow[k - 1], x) for x in xis], dtype=np.int64).T.reshape(h, r0))
    A = np.hstack(cols)
    assert A.shape == (h, r)
    return kernel(tower.base, A)


def _slot_space(tower: FieldTower, k: int, r0: int, free: int, parts: list[Subspace]) -> Subspace:
    """{(x_1..x_free, parts[0], parts[1], ..., 0, 0)} with the z part zero."""
    h = tower.h
    r = (k - 1) * h + r0
    rows = []
    for c in range(free * h):
        v = np.zeros(r, dtype=np.int64)
        v[c] = 1
        rows.append(v)
    for slot, S in enumerate(parts):
        offset = (free + slot) * h
        for b in S.basis:
            v = np.zeros(r, dtype=np.int64)
            v[offset : offset + h] = b
            rows.append(v)
    return Subspace(tower.base, r, rows or None)


def coordinate_subspace(tower: FieldTower, coords) -> Subspace:
    """Span of the basis elements xi^c, c in coords (0-based), inside F_q^h."""
    B = np.zeros((len(coords), tower.h), dtype=np.int64)
    for i, c in enumerate(coords):
        B[i, c] = 1
    return Subspace(tower.base, tower.h, B)


def _finish(params: ConstructionParams, tower: FieldTower, blocks: list[Subspace], verify: bool, cap: int):
    lam = params.k - 1
    P = Packing(tower.base, params.r, blocks, lam=lam, meta={"params": params})
    if len(set(P.blocks)) != len(P):
        raise ConstructionError("construction produced repeated blocks")
    expected = params.r - params.h
    if any(B.dim != expected for B in P.blocks):
        raise ConstructionError("a block has the wrong dimension")
    if verify:
        witness = lambda_packing_witness(P, lam, method="points", cap=cap)
        if witness is not None:
            raise ConstructionError(f"not a {lam}-packing: {witness}")
    C = code_from_packing(P, tower)
    if verify and tower.q**C.r <= cap:
        d = C.min_distance(cap)
        if d != C.n - C.k + 1:
            raise ConstructionError(f"distance {d} misses the Singleton value {C.n - C.k + 1}")
    return P, C


def construct_A(q: int, h: int, k: int, r0: int, verify: bool = True, cap: int = ENUM_CAP):
    """The q^h + 2 blocks W_alpha (alpha in F_{q^h}) plus W_inf1, W_inf2."""
    params = ConstructionParams("A", q, h, k, r0).validate()
    T = tower_for(q, h)
    blocks = [w_alpha(T, k, r0, a) for a in T.elements()]
    S1 = coordinate_subspace(T, range(r0))
    S2 = coordinate_subspace(T, range(r0, 2 * r0))
    for S in (S1, S2):
        blocks.append(_slot_space(T, k, r0, k - 2, [S]))
    return _finish(params, T, blocks, verify, cap)


def y_subspaces(tower: FieldTower, r1: int) -> list[Subspace]:
    """Three r1-subspaces of F_q^h with trivial common intersection, by supports."""
    h = tower.h
    Y1 = list(range(r1))
    Y2 = list(range(h - r1, h))
    both = set(Y1) & set(Y2)
    rest = [c for c in range(h) if c not in both]
    if len(rest) < r1:
        raise ValueError("r1 too large for support-disjoint Y3")
    return [coordinate_subspace(tower, c) for c in (Y1, Y2, rest[:r1])]


def construct_B(q: int, h: int, k: int, r0: int, r1: int | None = None, r2: int | None = None,
                verify: bool = True, cap: int = ENUM_CAP):
    """W_alpha blocks plus three W_inf blocks, giving length q^h + 3."""
    params = ConstructionParams("B", q, h, k, r0, r1, r2).validate()
    T = tower_for(q, h)
    Ys = y_subspaces(T, params.r1)
    Ss = partial_spread(T.base, h, params.r2).blocks[:3]
    if len(Ss) < 3:
        raise ConstructionError("fewer than three pairwise trivial r2-subspaces")
    blocks = [w_alpha(T, k, r0, a) for a in T.elements()]
    for Y, S in zip(Ys, Ss):
        blocks.append(_slot_space(T, k, r0, k - 3, [Y, S]))
    return _finish(params, T, blocks, verify, cap)


def gamma_perp_family(tower: FieldTower, r1: int) -> list[Subspace]:
    """Perps of the default partial (h - r1)-spread of F_q^h: r1-subspaces, pairwise dim 2r1 - h."""
    gamma = partial_spread(tower.base, tower.h, tower.h - r1).blocks
    return [G.perp() for G in gamma]


def triple_witness(spaces: list[Subspace]) -> tuple[int, int, int] | None:
    """First index triple (lexicographic) whose common intersection is nonzero."""
    if not spaces:
        return None
    idx = PointIndex(spaces[0].F, spaces[0].m)
    masks = [idx.mask(Y) for Y in spaces]
    n = len(masks)
    for a in range(n):
        for b in range(a + 1, n):
            ab = masks[a] & masks[b]
            if not ab:
                continue
            for c in range(b + 1, n):
                if ab & masks[c]:
                    return (a, b, c)
    return None


def _largest_triple_trivial(masks: list[int], target: int, start: list[int], budget: int,
                            fix_first: bool = False):
    """Branch and bound for a largest index set with all triple intersections empty.

    Stops early at ``target``.  ``fix_first`` only explores sets containing
    index 0, which is exhaustive when the symmetry group is transitive.
    Returns (best, complete); complete is False only if the node budget ran
    out first.
    """
    n = len(masks)
    best = list(start)
    nodes = 0
    out_of_budget = False

    def walk(chosen: list[int], cands: list[int], covered: int) -> bool:
        nonlocal best, nodes, out_of_budget
        nodes += 1
        if len(chosen) > len(best):
            best = list(chosen)
            if len(best) >= target:
                return True
        if nodes > budget:
            out_of_budget = True
            return True
        for pos, i in enumerate(cands):
            if len(chosen) + len(cands) - pos <= len(best):
                return False
            m = masks[i]
            cov = covered
            for j in chosen:
                cov |= m & masks[j]
            rest = [j for j in cands[pos + 1 :] if not masks[j] & cov]
            if walk(chosen + [i], rest, cov):
                return True
        return False

    if fix_first and n:
        walk([0], list(range(1, n)), 0)
    else:
        walk([], list(range(n)), 0)
    return best, not out_of_budget


def triple_trivial_family(tower: FieldTower, r1: int, target: int, cap: int = SUBSPACE_CAP,
                          budget: int = 2_000_000) -> tuple[list[Subspace], bool]:
    """Up to ``target`` r1-subspaces of F_q^h, any three meeting in {0}.

    Gamma^perp is searched first; if it falls short, every r1-subspace is
    searched (Gamma^perp first).  The flag is True when the returned family
    reaches ``target`` or is certified largest by an exhausted search.
    """
    F, h = tower.base, tower.h
    seeds = gamma_perp_family(tower, r1)
    idx = PointIndex(F, h)
    masks = [idx.mask(Y) for Y in seeds]
    best, done = _largest_triple_trivial(masks, target, [], budget)
    family = [seeds[i] for i in best]
    if len(family) >= target:
        return family, True
    try:
        seen = set(seeds)
        pool = seeds + [Y for Y in subspaces(F, h, r1, cap) if Y not in seen]
    except CapExceeded:
        return family, False
    masks = [idx.mask(Y) for Y in pool]
    # GL(h, q) is transitive on r1-subspaces, so pool[0] may be assumed present
    best, done = _largest_triple_trivial(masks, target, best, budget, fix_first=True)
    return [pool[i] for i in best], done or len(best) >= target


def construct_Bbar(q: int, h: int, r0: int, r1: int | None = None, r2: int | None = None,
                   verify: bool = True, cap: int = ENUM_CAP):
    """k = 3: W_alpha blocks plus g blocks Y_i x S_i x {0}.

    S_i run over a partial r2-spread Omega_2 of F_q^h and Y_i over a family
    Omega_1 of r1-subspaces with trivial triple intersections, so
    g = min(#Omega_1, #Omega_2).  ``meta`` records both sizes and whether
    #Omega_1 is certified maximal.
    """
    params = ConstructionParams("Bbar", q, h, 3, r0, r1, r2).validate()
    T = tower_for(q, h)
    omega2 = partial_spread(T.base, h, params.r2).blocks
    omega1, certified = triple_trivial_family(T, params.r1, len(omega2))
    bad = triple_witness(omega1)
    if bad is not None:
        raise ConstructionError(f"Y_{bad[0]}, Y_{bad[1]}, Y_{bad[2]} meet nontrivially")
    g = min(len(omega1), len(omega2))
    blocks = [w_alpha(T, 3, r0, a) for a in T.elements()]
    for Y, S in zip(omega1, omega2):
        blocks.append(_slot_space(T, 3, r0, 0, [Y, S]))
    P, C = _finish(params, T, blocks, verify, cap)
    P.meta.update(g=g, omega1=omega1[:g], omega2=omega2[:g], omega1_size=len(omega1),
                  omega2_size=len(omega2), omega1_certified=certified)
    return P, C


def g_lower_bound(q: int, h: int, r2: int) -> int:
    """sum_{i=1}^{a-1} q^(i r2 + b) + 1 with h = a r2 + b."""
    a, b = divmod(h, r2)
    return sum(q ** (i * r2 + b) for i in range(1, a)) + 1


def construct_spread_code(q: int, h: int, r0: int, omega: Packing | None = None,
                          verify: bool = True, cap: int = ENUM_CAP):
    """C_Omega for a partial r0-spread Omega of F_q^(h + r0); a 1-packing."""
    params = ConstructionParams("spread", q, h, 2, r0).validate()
    T = tower_for(q, h)
    r = h + r0
    if omega is None:
        omega = partial_spread(T.base, r, r0)
    if omega.r != r or any(B.dim != r0 for B in omega.blocks):
        raise ValueError(f"Omega must consist of {r0}-subspaces of F_q^{r}")
    return _finish(params, T, omega.blocks, verify, cap)


def spread_f(q: int, h: int, r0: int) -> int:
    """Number of blocks beyond q^h in the default spread code."""
    r = h + r0
    if r % r0 == 0:
        return (q**r - 1) // (q**r0 - 1) - q**h
    a, b = divmod(r, r0)
    return sum(q ** (i * r0 + b) for i in range(1, a)) + 1 - q**h


def construct(params: ConstructionParams, verify: bool = True, cap: int = ENUM_CAP):
    p = params.validate()
    if p.family == "A":
        return construct_A(p.q, p.h, p.k, p.r0, verify, cap)
    if p.family == "B":
        return construct_B(p.q, p.h, p.k, p.r0, p.r1, p.r2, verify, cap)
    if p.family == "Bbar":
        return construct_Bbar(p.q, p.h, p.r0, p.r1, p.r2, verify, cap)
    return construct_spread_code(p.q, p.h, p.r0, verify=verify, cap=cap)


__all__ = [
    "CapExceeded",
    "ConstructionError",
    "ConstructionParams",
    "construct",
    "construct_A",
    "construct_B",
    "construct_Bbar",
    "construct_spread_code",
    "default_r1_r2",
    "g_lower_bound",
    "gamma_perp_family",
    "triple_trivial_family",
    "triple_witness",
    "spread_f",
    "w_alpha",
]
