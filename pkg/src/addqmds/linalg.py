"""Exact linear algebra over F_q and canonical subspaces.

Matrices are plain ``numpy`` int64 arrays holding F_q element codes; every
routine takes the field ``F`` explicitly.  Subspaces are stored by the
reduced row echelon form of a basis, which makes equality and hashing
well defined.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from .finite_field import GF

SUBSPACE_CAP = 10**6


class CapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


def matmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.e == 1:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        out = F.add[out, F.mul[A[:, j, None], B[None, j, :]]]
    return out


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (same shape as M) and its pivot columns."""
    A = np.array(M, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.mul[F.inv[A[r, c]], A[r]]
        col = A[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            A[others] = F.sub[A[others], F.mul[col[others, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: GF, M) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def kernel(F: GF, M) -> "Subspace":
    """The subspace ``{v : M v = 0}`` of F_q^cols."""
    A = np.asarray(M, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return Subspace.full(F, cols)
    R, pivots = rref(F, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fcol in enumerate(free):
        basis[i, fcol] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = F.neg[R[row, fcol]]
    return Subspace(F, cols, basis)


class Subspace:
    """A subspace of F_q^m held by the RREF of a basis.

    ``basis`` is a read-only ``(dim, m)`` array.  Two instances compare equal
    iff they are the same set of vectors over the same field.
    """

    __slots__ = ("F", "m", "basis", "pivots", "_key")

    def __init__(self, F: GF, m: int, vectors=None, *, canonical: bool = False):
        self.F = F
        self.m = m
        if vectors is None:
            A = np.zeros((0, m), dtype=np.int64)
        else:
            A = np.array(vectors, dtype=np.int64)
            if A.size and A.shape[-1] != m:
                raise ValueError(f"vectors have length {A.shape[-1]}, expected {m}")
            A = A.reshape(-1, m)
            if A.size and (A.min() < 0 or A.max() >= F.q):
                raise ValueError(f"entries out of range for F_{F.q}")
        if canonical:
            R, piv = A, [int(np.flatnonzero(row)[0]) for row in A]
        else:
            R, piv = rref(F, A) if A.shape[0] else (A, [])
            R = R[: len(piv)]
        R = np.ascontiguousarray(R, dtype=np.int64)
        R.setflags(write=False)
        self.basis = R
        self.pivots = tuple(piv)
        self._key = (F, m, R.tobytes(), R.shape)

    @classmethod
    def full(cls, F: GF, m: int) -> "Subspace":
        return cls(F, m, np.eye(m, dtype=np.int64), canonical=True)

    @classmethod
    def zero(cls, F: GF, m: int) -> "Subspace":
        return cls(F, m)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        rows = ["".join(map(str, r)) for r in self.basis.tolist()]
        return f"Subspace(m={self.m}, dim={self.dim}, [{' '.join(rows)}])"

    def sort_key(self) -> tuple:
        return (self.pivots, tuple(self.basis.flatten().tolist()))

    def _check(self, other: "Subspace") -> None:
        if self.m != other.m or self.F != other.F:
            raise ValueError("subspaces live in different ambient spaces")

    def contains(self, v: Sequence[int]) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        if v.shape[1] != self.m:
            raise ValueError("vector length does not match ambient dimension")
        return rank(self.F, np.vstack([self.basis, v])) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return rank(self.F, np.vstack([other.basis, self.basis])) == other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.F, self.m, np.vstack([self.basis, other.basis]))

    def perp(self) -> "Subspace":
        """Orthogonal complement for the standard dot product."""
        if self.dim == 0:
            return Subspace.full(self.F, self.m)
        return kernel(self.F, self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # A n B = (A^perp + B^perp)^perp
        self._check(other)
        return self.perp().sum(other.perp()).perp()

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All q^dim vectors, coefficients in base-q counter order."""
        F = self.F
        for coeffs in itertools.product(range(F.q), repeat=self.dim):
            c = np.array(coeffs, dtype=np.int64).reshape(1, -1)
            yield tuple(matmul(F, c, self.basis)[0].tolist()) if self.dim else (0,) * self.m

    def element_array(self) -> np.ndarray:
        """All q^dim vectors as a ``(q^dim, m)`` array, same order as ``elements``."""
        coeffs = counter_array(self.F.q, self.dim)
        if self.dim == 0:
            return np.zeros((1, self.m), dtype=np.int64)
        return matmul(self.F, coeffs, self.basis)

    def embed(self, m: int, offset: int) -> "Subspace":
        """Image under the coordinate embedding F^self.m -> F^m at ``offset``."""
        B = np.zeros((self.dim, m), dtype=np.int64)
        B[:, offset : offset + self.m] = self.basis
        return Subspace(self.F, m, B)


def span(F: GF, m: int, vectors: Iterable[Sequence[int]]) -> Subspace:
    return Subspace(F, m, list(vectors) or None)


def intersect_all(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise ValueError("empty intersection has no ambient space")
    out = spaces[0]
    for S in spaces[1:]:
        out = out.intersect(S)
    return out


# ---------------------------------------------------------------------------
# enumeration


def gaussian_binomial(q: int, m: int, t: int) -> int:
    if t < 0 or t > m:
        return 0
    num = den = 1
    for i in range(t):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def counter_array(q: int, k: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows ``start..stop-1`` of the base-q counter over k digits, first digit most significant."""
    if stop is None:
        stop = q**k
    idx = np.arange(start, stop, dtype=np.int64)
    if k == 0:
        return np.zeros((len(idx), 0), dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def vectors(F: GF, m: int) -> Iterator[tuple[int, ...]]:
    yield from itertools.product(range(F.q), repeat=m)


def num_points(q: int, m: int) -> int:
    return (q**m - 1) // (q - 1)


def point_array(F: GF, m: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Projective points of F_q^m (first nonzero entry 1) in canonical order.

    Points are grouped by pivot position (ascending), tails in counter order;
    this matches ``subspaces(F, m, 1)``.  ``start``/``stop`` slice the stream.
    """
    q = F.q
    total = num_points(q, m)
    stop = total if stop is None else min(stop, total)
    out = []
    offset = 0
    for pivot in range(m):
        tail = m - pivot - 1
        size = q**tail
        lo, hi = max(start, offset), min(stop, offset + size)
        if lo < hi:
            block = np.zeros((hi - lo, m), dtype=np.int64)
            block[:, pivot] = 1
            block[:, pivot + 1 :] = counter_array(q, tail, lo - offset, hi - offset)
            out.append(block)
        offset += size
    if not out:
        return np.zeros((0, m), dtype=np.int64)
    return np.vstack(out)


def points(F: GF, m: int) -> Iterator[tuple[int, ...]]:
    for row in point_array(F, m):
        yield tuple(row.tolist())


def subspaces(F: GF, m: int, t: int, cap: int = SUBSPACE_CAP) -> Iterator[Subspace]:
    """All t-dimensional subspaces of F_q^m in canonical order.

    Ordered by pivot columns (lexicographic), then free entries in counter
    order.  Raises CapExceeded when the Gaussian binomial exceeds ``cap``.
    """
    count = gaussian_binomial(F.q, m, t)
    if count > cap:
        raise CapExceeded(f"{count} subspaces of dim {t} in F_{F.q}^{m} exceed cap {cap}")
    if t == 0:
        yield Subspace(F, m)
        return
    for piv in itertools.combinations(range(m), t):
        pivset = set(piv)
        slots = [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, m) if j not in pivset]
        base = np.zeros((t, m), dtype=np.int64)
        for i, pc in enumerate(piv):
            base[i, pc] = 1
        for values in itertools.product(range(F.q), repeat=len(slots)):
            B = base.copy()
            for (i, j), v in zip(slots, values):
                B[i, j] = v
            yield Subspace(F, m, B, canonical=True)


# ---------------------------------------------------------------------------
# projective point bitmasks, used by the combinatorial searches


class PointIndex:
    """Bijection between projective points of F_q^m and 0..N-1.

    ``mask(S)`` returns a Python int with bit i set iff point i lies in S, so
    intersections become ``&`` and point counts become ``bit_count``.
    """

    def __init__(self, F: GF, m: int, cap: int = 1 << 22):
        if F.q**m > cap:
            raise CapExceeded(f"q^m={F.q ** m} exceeds point-index cap {cap}")
        self.F, self.m = F, m
        self.points = point_array(F, m)
        self.n = len(self.points)
        self._weights = F.q ** np.arange(m - 1, -1, -1, dtype=np.int64)
        lookup = np.full(F.q**m, -1, dtype=np.int64)
        nonzero = np.arange(1, F.q)
        for i, pt in enumerate(self.points):
            multiples = F.mul[nonzero[:, None], pt[None, :]]
            lookup[multiples @ self._weights] = i
        self._lookup = lookup

    def indices(self, vecs: np.ndarray) -> np.ndarray:
        """Point index of each nonzero row of ``vecs`` (zero rows dropped)."""
        codes = np.asarray(vecs, dtype=np.int64) @ self._weights
        return self._lookup[codes[codes != 0]]

    def mask(self, S: Subspace) -> int:
        idx = np.unique(self.indices(S.element_array()))
        out = 0
        for i in idx.tolist():
            out |= 1 << i
        return out


def point_count(q: int, dim: int) -> int:
    """Number of projective points in a subspace of the given dimension."""
    return num_points(q, dim) if dim > 0 else 0
