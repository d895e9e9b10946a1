"""Additive (F_q-linear) codes in F_{q^h}^n and their subspace packings.

A code of F_q-dimension r is given by an r x n generator G over F_{q^h}.
Everything geometric is read off the expansion ``Gt`` (r x nh over F_q):
block i spans U_i, and W_i = U_i^perp is the set of message vectors u
whose codeword uG vanishes at position i.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .finite_field import FieldTower
from .linalg import (
    CapExceeded,
    Subspace,
    kernel,
    matmul,
    num_points,
    point_array,
    rank,
)
from .packing import Packing

ENUM_CAP = 1 << 24
CHUNK = 1 << 14


@dataclass(frozen=True)
class CodeProfile:
    n: int
    r: int
    h: int
    k: int
    d: int
    d_perp: int | None
    qmds: bool
    long: bool
    faithful: bool
    dually_qmds: bool | None


def type_string(n: int, r: int, d: int | None, q: int, h: int) -> str:
    frac = Fraction(r, h)
    dim = str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"
    return f"[{n}, {dim}, {'?' if d is None else d}]_{q}^{h}"


def _zero_block_counts(F, Gt: np.ndarray, n: int, h: int, pts: np.ndarray) -> np.ndarray:
    prod = matmul(F, pts, Gt).reshape(len(pts), n, h)
    return (~prod.any(axis=2)).sum(axis=1)


def _scan(args) -> tuple[int, int]:
    """Max zero-block count over points lo..hi-1 and the first index attaining it."""
    F, Gt, n, h, r, lo, hi = args
    best, where = -1, lo
    for a in range(lo, hi, CHUNK):
        pts = point_array(F, r, a, min(a + CHUNK, hi))
        counts = _zero_block_counts(F, Gt, n, h, pts)
        i = int(np.argmax(counts))
        if counts[i] > best:
            best, where = int(counts[i]), a + i
    return best, where


def max_zero_blocks(F, Gt: np.ndarray, n: int, h: int, cap: int = ENUM_CAP, workers: int = 1) -> tuple[int, tuple]:
    """max over nonzero u of #{i : block i of u*Gt is zero}, with a witness u.

    Only one representative per scalar class is visited (first nonzero
    entry equal to 1), since the count is scalar invariant.
    """
    r = Gt.shape[0]
    if r == 0:
        raise ValueError("the zero code has no nonzero codewords")
    if F.q**r > cap:
        raise CapExceeded(f"q^r={F.q ** r} exceeds enumeration cap {cap}")
    total = num_points(F.q, r)
    if workers > 1 and total > CHUNK:
        step = -(-total // workers)
        jobs = [(F, Gt, n, h, r, lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, jobs))
        # ties resolved towards the smallest index, so output is worker-independent
        best = max(c for c, _ in parts)
        where = min(w for c, w in parts if c == best)
    else:
        best, where = _scan((F, Gt, n, h, r, 0, total))
    u = point_array(F, r, where, where + 1)[0]
    return best, tuple(u.tolist())


class AdditiveCode:
    """An F_q-linear code in F_{q^h}^n given by a full-rank generator matrix.

    ``G`` is a sequence of r rows, each a sequence of n F_{q^h} elements
    (length-h coordinate tuples).  Positions are 0-based.
    """

    def __init__(self, tower: FieldTower, G: Sequence[Sequence[Sequence[int]]], n: int | None = None):
        rows = [[tower.check(a) for a in row] for row in G]
        if n is None:
            if not rows:
                raise ValueError("n is required for a code with no generators")
            n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise ValueError("generator rows have different lengths")
        Gt = np.array([[c for a in row for c in a] for row in rows], dtype=np.int64).reshape(len(rows), n * tower.h)
        self._setup(tower, Gt, n)

    @classmethod
    def from_expanded(cls, tower: FieldTower, Gt, n: int | None = None) -> "AdditiveCode":
        Gt = np.array(Gt, dtype=np.int64)
        if n is None:
            n = Gt.shape[1] // tower.h
        Gt = Gt.reshape(-1, n * tower.h)
        self = cls.__new__(cls)
        self._setup(tower, Gt, n)
        return self

    def _setup(self, tower: FieldTower, Gt: np.ndarray, n: int) -> None:
        if Gt.shape[1] != n * tower.h:
            raise ValueError("expanded generator has the wrong number of columns")
        if Gt.size and (Gt.min() < 0 or Gt.max() >= tower.q):
            raise ValueError("entries out of range for F_q")
        if rank(tower.base, Gt) != Gt.shape[0]:
            raise ValueError("generator matrix is not of full F_q-rank")
        Gt.setflags(write=False)
        self.tower = tower
        self.F = tower.base
        self.Gt = Gt
        self.n = n
        self.r = Gt.shape[0]
        self.h = tower.h
        self._d: int | None = None
        self._d_witness: tuple | None = None
        self._d_perp: int | None = None
        self._dual: AdditiveCode | None = None
        self._W: list[Subspace] | None = None

    # ------------------------------------------------------------------
    # basic shape

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def k(self) -> int:
        return -(-self.r // self.h)

    @property
    def is_integral(self) -> bool:
        return self.r % self.h == 0

    @property
    def G(self) -> list[list[tuple[int, ...]]]:
        h = self.h
        return [[tuple(row[j * h : (j + 1) * h].tolist()) for j in range(self.n)] for row in self.Gt]

    def expand_generator(self) -> np.ndarray:
        return self.Gt.copy()

    def block(self, i: int) -> np.ndarray:
        self._check_index(i)
        return self.Gt[:, i * self.h : (i + 1) * self.h]

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"position {i} out of range for length {self.n}")

    def type_string(self, d: int | None = None) -> str:
        return type_string(self.n, self.r, self.min_distance() if d is None else d, self.q, self.h)

    def __repr__(self) -> str:
        return f"AdditiveCode(n={self.n}, r={self.r}, q={self.q}, h={self.h})"

    def rowspace(self) -> Subspace:
        return Subspace(self.F, self.n * self.h, self.Gt)

    def same_code(self, other: "AdditiveCode") -> bool:
        """Equality as sets of codewords."""
        return self.tower == other.tower and self.n == other.n and self.rowspace() == other.rowspace()

    # ------------------------------------------------------------------
    # the multisets X(C) and T(C)

    def column_space(self, i: int) -> Subspace:
        return Subspace(self.F, self.r, self.block(i).T)

    def block_perp(self, i: int) -> Subspace:
        return kernel(self.F, self.block(i).T)

    def X(self) -> list[Subspace]:
        return [self.column_space(i) for i in range(self.n)]

    def T(self) -> Packing:
        if self._W is None:
            self._W = [self.block_perp(i) for i in range(self.n)]
        return Packing(self.F, self.r, self._W)

    def is_faithful(self) -> bool:
        return all(rank(self.F, self.block(i)) == self.h for i in range(self.n))

    # ------------------------------------------------------------------
    # codewords and weights

    def codeword(self, u: Sequence[int]) -> list[tuple[int, ...]]:
        """uG computed over F_{q^h}."""
        u = [int(x) for x in u]
        if len(u) != self.r:
            raise ValueError(f"message has length {len(u)}, expected {self.r}")
        T = self.tower
        out = [T.zero] * self.n
        for coef, row in zip(u, self.G):
            if coef:
                out = [T.add(a, T.scale(coef, b)) for a, b in zip(out, row)]
        return out

    @staticmethod
    def hamming_weight(c: Iterable[Sequence[int]]) -> int:
        return sum(1 for a in c if any(a))

    def weight(self, u: Sequence[int]) -> int:
        """wt(uG) = n - #{i : u in W_i}."""
        if len(u) != self.r:
            raise ValueError(f"message has length {len(u)}, expected {self.r}")
        self.T()
        return self.n - sum(1 for W in self._W if W.contains(u))

    def codewords(self) -> Iterable[np.ndarray]:
        """All q^r codewords in expanded form (rows of length nh)."""
        from .linalg import counter_array

        if self.q**self.r > ENUM_CAP:
            raise CapExceeded("too many codewords")
        for lo in range(0, self.q**self.r, CHUNK):
            msgs = counter_array(self.q, self.r, lo, min(lo + CHUNK, self.q**self.r))
            yield from matmul(self.F, msgs, self.Gt)

    # ------------------------------------------------------------------
    # distance and the Singleton bound

    def min_distance(self, cap: int = ENUM_CAP, workers: int = 1) -> int:
        if self._d is None:
            best, u = max_zero_blocks(self.F, self.Gt, self.n, self.h, cap, workers)
            self._d, self._d_witness = self.n - best, u
        return self._d

    def min_weight_message(self, cap: int = ENUM_CAP) -> tuple:
        self.min_distance(cap)
        return self._d_witness

    def singleton_defect(self, cap: int = ENUM_CAP) -> int:
        return (self.n - self.min_distance(cap) + 1) - self.k

    def is_qmds(self, cap: int = ENUM_CAP) -> bool:
        return self.singleton_defect(cap) == 0

    def is_long(self, cap: int = ENUM_CAP) -> bool:
        return self.is_qmds(cap) and self.n > self.q**self.h + 1

    # ------------------------------------------------------------------
    # h-(n, r, d) systems

    def system_max_count(self, cap: int = ENUM_CAP) -> tuple[int, tuple]:
        """max over hyperplanes H of #{i : U_i in H}, with the covector of a maximiser.

        U_i lies in the hyperplane ker(c) iff c annihilates an F_q basis of U_i.
        """
        h = self.h
        padded = np.zeros((self.r, self.n * h), dtype=np.int64)
        for i in range(self.n):
            B = self.column_space(i).basis
            padded[:, i * h : i * h + B.shape[0]] = B.T
        return max_zero_blocks(self.F, padded, self.n, h, cap)

    def verify_system(self, cap: int = ENUM_CAP) -> bool:
        best, _ = self.system_max_count(cap)
        return best == self.n - self.min_distance(cap)

    # ------------------------------------------------------------------
    # trace dual

    def dual(self) -> "AdditiveCode":
        """{v : Tr(<u, v>) = 0 for all u in C}, via the block trace Gram matrix."""
        if self._dual is None:
            gram = np.kron(np.eye(self.n, dtype=np.int64), self.tower.trace_gram)
            K = kernel(self.F, matmul(self.F, self.Gt, gram))
            self._dual = AdditiveCode.from_expanded(self.tower, K.basis, self.n)
        return self._dual

    def trace_inner(self, a: np.ndarray, b: np.ndarray) -> int:
        """Tr(<a, b>) for expanded vectors a, b of length nh."""
        gram = np.kron(np.eye(self.n, dtype=np.int64), self.tower.trace_gram)
        return int(matmul(self.F, matmul(self.F, np.asarray(a).reshape(1, -1), gram), np.asarray(b).reshape(-1, 1))[0, 0])

    def dual_distance(self, method: str = "auto", cap: int = ENUM_CAP) -> int:
        """Minimum distance of the trace dual.

        ``"enumerate"`` scans the dual's codewords; ``"blocks"`` finds the
        smallest set S of positions whose expanded columns have rank below
        h|S| (a dual codeword supported inside S exists exactly then).
        ``"auto"`` enumerates when q^(nh-r) is within ``cap`` and small
        next to the 2^n position subsets, else uses blocks.
        """
        if self.r == self.n * self.h:
            raise ValueError("the dual of the full space is {0}")
        if method == "auto":
            if self._d_perp is not None:
                return self._d_perp
            size = self.q ** (self.n * self.h - self.r)
            # a rank test costs roughly as much as ~100 enumerated words
            method = "enumerate" if size <= cap and size <= 100 * 2**self.n else "blocks"
        if method == "enumerate":
            d = self.dual().min_distance(cap)
        elif method == "blocks":
            d = self._dual_distance_by_blocks()
        else:
            raise ValueError(f"unknown method {method!r}")
        if self._d_perp is None:
            self._d_perp = d
        return d

    def _dual_distance_by_blocks(self) -> int:
        h, F = self.h, self.F
        for s in range(1, self.n + 1):
            for S in itertools.combinations(range(self.n), s):
                cols = np.hstack([self.block(i) for i in S])
                if rank(F, cols) < h * s:
                    return s
        raise AssertionError("no dependent block set; dual would be {0}")  # excluded above

    def dual_k(self) -> int:
        return -(-(self.n * self.h - self.r) // self.h)

    def dual_is_qmds(self, cap: int = ENUM_CAP) -> bool:
        return self.dual_distance(cap=cap) == self.n - self.dual_k() + 1

    # ------------------------------------------------------------------
    # geometric quotients

    def quotient_map(self, J: Iterable[int]) -> np.ndarray:
        """Basis (rows) of the intersection of W_j over j in J; rows of F_q^r."""
        J = sorted(set(J))
        W = Subspace.full(self.F, self.r)
        for j in J:
            self._check_index(j)
            W = W.intersect(self.block_perp(j))
        return W.basis

    def geometric_quotient(self, J: Iterable[int]) -> "AdditiveCode":
        """Codewords vanishing on J, with the J positions deleted."""
        J = sorted(set(J))
        M = self.quotient_map(J)
        keep = [i for i in range(self.n) if i not in J]
        cols = [c for i in keep for c in range(i * self.h, (i + 1) * self.h)]
        N = matmul(self.F, M, self.Gt[:, cols]) if M.shape[0] else np.zeros((0, len(cols)), dtype=np.int64)
        return AdditiveCode.from_expanded(self.tower, N, len(keep))

    def is_non_obliterating(self, J: Iterable[int]) -> bool:
        return self.quotient_map(J).shape[0] >= self.h

    # ------------------------------------------------------------------
    # dually QMDS

    def condition_b_witness(self) -> tuple[int, ...] | None:
        """First J (by size, then lexicographic) with dim of the W_j intersection != r - |J|h.

        Only sets with |J| <= k-1 are examined.
        """
        W = self.T().blocks
        limit = self.k - 1
        for size in range(1, limit + 1):
            found = self._walk_intersections(W, size)
            if found is not None:
                return found
        return None

    def _walk_intersections(self, W: list[Subspace], size: int) -> tuple[int, ...] | None:
        target = self.r - size * self.h

        def walk(start: int, chosen: tuple[int, ...], inter: Subspace | None):
            for i in range(start, self.n - (size - len(chosen)) + 1):
                nxt = W[i] if inter is None else inter.intersect(W[i])
                J = chosen + (i,)
                if len(J) == size:
                    if nxt.dim != target:
                        return J
                else:
                    bad = walk(i + 1, J, nxt)
                    if bad is not None:
                        return bad
            return None

        return walk(0, (), None)

    def condition_b_applies(self, cap: int = ENUM_CAP) -> bool:
        return self.is_faithful() and self.is_qmds(cap) and self.min_distance(cap) > 1

    def is_dually_qmds(self, method: str = "both", cap: int = ENUM_CAP) -> bool:
        """C and its trace dual are both QMDS.

        ``"direct"`` computes the dual distance; ``"condition"`` uses the
        intersection-dimension criterion on faithful QMDS codes with d > 1
        (falling back to ``"direct"`` otherwise); ``"both"`` runs each and
        asserts agreement where the criterion applies.
        """
        if method not in ("direct", "condition", "both"):
            raise ValueError(f"unknown method {method!r}")
        applies = self.condition_b_applies(cap)
        by_condition = applies and self.condition_b_witness() is None
        if method == "condition" and applies:
            return by_condition
        direct = self.is_qmds(cap) and self.dual_is_qmds(cap)
        if method == "both" and applies and direct != by_condition:
            raise AssertionError("dual-distance and intersection criteria disagree")
        return direct

    def profile(self, cap: int = ENUM_CAP) -> CodeProfile:
        d = self.min_distance(cap)
        try:
            dperp = self.dual_distance(cap=cap)
        except ValueError:
            dperp = None
        qmds = self.is_qmds(cap)
        return CodeProfile(
            n=self.n,
            r=self.r,
            h=self.h,
            k=self.k,
            d=d,
            d_perp=dperp,
            qmds=qmds,
            long=self.is_long(cap),
            faithful=self.is_faithful(),
            dually_qmds=None if dperp is None else qmds and dperp == self.n - self.dual_k() + 1,
        )


# ---------------------------------------------------------------------------


def code_from_packing(T: Packing, tower: FieldTower) -> AdditiveCode:
    """The code whose multiset T(C) is the given packing.

    Block i of the expansion holds the RREF basis of W_i^perp as columns,
    zero-padded to h columns.
    """
    if T.F != tower.base:
        raise ValueError("packing and tower use different base fields")
    r, h = T.r, tower.h
    Gt = np.zeros((r, len(T) * h), dtype=np.int64)
    for i, W in enumerate(T.blocks):
        if W.dim < r - h:
            raise ValueError(f"block {i} has dim {W.dim} < r - h = {r - h}")
        U = W.perp().basis
        Gt[:, i * h : i * h + U.shape[0]] = U.T
    if rank(T.F, Gt) != r:
        raise ValueError("blocks share a nonzero vector; the generator would not have full rank")
    return AdditiveCode.from_expanded(tower, Gt, len(T))


def qmds_length_bound_exact(q: int, h: int, k: int, r0: int) -> Fraction:
    if not 1 <= r0 <= h:
        raise ValueError("need 1 <= r0 <= h")
    return k - 2 + q**h + Fraction(q**h - 1, q**r0 - 1)


def qmds_length_bound(q: int, h: int, k: int, r0: int) -> int:
    """Largest n allowed for a QMDS code with r = (k-1)h + r0 (floored)."""
    return math.floor(qmds_length_bound_exact(q, h, k, r0))


def dually_k_bound(q: int, h: int, r0: int) -> int:
    """Largest k allowed for a dually QMDS fractional code (floored)."""
    if not 1 <= r0 <= h:
        raise ValueError("need 1 <= r0 <= h")
    return math.floor(q**h + Fraction(q**h - 1, q**r0 - 1) - 1)


def split_dimension(r: int, h: int) -> tuple[int, int]:
    """(k, r0) with r = (k-1)h + r0 and 1 <= r0 <= h."""
    k = -(-r // h)
    return k, r - (k - 1) * h
