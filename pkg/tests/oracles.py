"""Slow, independent reference implementations used to check the library.

Nothing here imports the linear algebra, packing or code modules.  Vectors
are tuples, subspaces are frozensets of all their vectors, prime fields
only (arithmetic mod p) unless a field object is passed in explicitly.
"""

from __future__ import annotations

import itertools


# --- polynomials over Z_p, coefficients ascending ------------------------


def poly_mulmod(a, b, g, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    deg = len(g) - 1
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            for j in range(deg + 1):
                out[i - deg + j] = (out[i - deg + j] - c * g[j]) % p
    out = out[:deg] + [0] * max(0, deg - len(out))
    return tuple(out[:deg])


def irreducible_by_roots(g, p):
    """Degree 2 or 3 only: irreducible iff no root in Z_p."""
    assert len(g) - 1 in (2, 3)
    return all(sum(c * x**i for i, c in enumerate(g)) % p for x in range(p))


def first_irreducible_bruteforce(p, deg):
    """Smallest monic irreducible (ascending coefficient tuples, itertools order) by factor search."""
    def monics(d):
        for cs in itertools.product(range(p), repeat=d):
            yield tuple(cs) + (1,)

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)

    reducible = set()
    for d in range(1, deg // 2 + 1):
        for a in monics(d):
            for b in monics(deg - d):
                reducible.add(mul(a, b))
    for g in monics(deg):
        if g not in reducible:
            return g
    raise AssertionError("no irreducible found")


def trace_power_sum(mul, add, one, a, q, h):
    """sum_{i<h} a^(q^i) using only the given multiplication and addition."""
    def power(x, n):
        out = one
        for _ in range(n):
            out = mul(out, x)
        return out

    total = None
    x = a
    for _ in range(h):
        total = x if total is None else add(total, x)
        x = power(x, q)
    return total


# --- vector spaces over Z_p ------------------------------------------------


def span_set(vectors, p, m):
    vectors = [tuple(v) for v in vectors]
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(m)))
    if not vectors:
        out.add((0,) * m)
    return frozenset(out)


def perp_set(S, p, m):
    return frozenset(
        v for v in itertools.product(range(p), repeat=m)
        if all(sum(a * b for a, b in zip(u, v)) % p == 0 for u in S)
    )


def dim_of(S, p):
    n = len(S)
    d = 0
    while p**d < n:
        d += 1
    assert p**d == n
    return d


def projective_points(p, m):
    pts = []
    for v in itertools.product(range(p), repeat=m):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def gaussian_count_bruteforce(p, m, t):
    """Number of distinct t-dim subspaces, by spanning every t-tuple of vectors."""
    seen = set()
    vecs = list(itertools.product(range(p), repeat=m))
    for combo in itertools.combinations(vecs, t):
        S = span_set(combo, p, m)
        if len(S) == p**t:
            seen.add(S)
    return len(seen)


# --- codes, symbol by symbol ----------------------------------------------


def codewords_direct(tower, G):
    """All codewords sum_i u_i g_i (u_i in F_q) computed over F_{q^h}."""
    r = len(G)
    n = len(G[0]) if G else 0
    out = set()
    for u in itertools.product(range(tower.q), repeat=r):
        word = [tower.zero] * n
        for ui, row in zip(u, G):
            if ui:
                word = [tower.add(w, tower.scale(ui, g)) for w, g in zip(word, row)]
        out.add(tuple(word))
    return out


def min_distance_direct(tower, G):
    zero = tower.zero
    return min(sum(1 for c in w if c != zero) for w in codewords_direct(tower, G) if any(c != zero for c in w))


def dual_direct(tower, G):
    """Every v in F_{q^h}^n with Tr(<g, v>) = 0 for all generator rows g."""
    n = len(G[0])
    elems = list(tower.elements())
    out = set()
    for v in itertools.product(elems, repeat=n):
        ok = True
        for row in G:
            s = tower.zero
            for a, b in zip(row, v):
                s = tower.add(s, tower.mul(a, b))
            if tower.trace(s) != 0:
                ok = False
                break
        if ok:
            out.add(tuple(v))
    return out
