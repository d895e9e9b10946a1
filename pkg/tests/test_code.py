from fractions import Fraction

import numpy as np
import pytest

from addqmds.code import (
    AdditiveCode,
    code_from_packing,
    dually_k_bound,
    qmds_length_bound,
    qmds_length_bound_exact,
    split_dimension,
    type_string,
)
from addqmds.finite_field import tower_for
from addqmds.linalg import CapExceeded, counter_array, matmul

import oracles
from helpers import random_code, tower


def _tiny(seed, max_elems=4096):
    """Random code small enough for the symbol-level oracles."""
    rng = np.random.default_rng(seed)
    while True:
        C = random_code(rng)
        if C.q**C.r <= max_elems and (C.q**C.h) ** C.n <= 1 << 14:
            return C


def test_type_strings():
    assert type_string(6, 3, 5, 2, 2) == "[6, 3/2, 5]_2^2"
    assert type_string(6, 4, 3, 2, 2) == "[6, 2, 3]_2^2"
    assert type_string(6, 4, None, 2, 2) == "[6, 2, ?]_2^2"


def test_split_dimension():
    assert split_dimension(5, 2) == (3, 1)
    assert split_dimension(4, 2) == (2, 2)
    assert split_dimension(13, 6) == (3, 1)


def test_bounds():
    assert qmds_length_bound(2, 2, 3, 1) == 8
    assert dually_k_bound(2, 2, 1) == 6
    assert qmds_length_bound_exact(2, 2, 2, 2) == Fraction(5)
    assert qmds_length_bound(2, 3, 2, 2) == 10  # 8 + 7/3, floored
    with pytest.raises(ValueError):
        qmds_length_bound(2, 2, 2, 3)


def test_constructor_validation():
    T = tower(2, 2)
    with pytest.raises(ValueError):
        AdditiveCode(T, [[(1, 0), (0, 1)], [(1, 0), (0, 1)]])  # rank 1
    with pytest.raises(ValueError):
        AdditiveCode(T, [[(1, 0), (0, 1)], [(1, 0)]])
    with pytest.raises(ValueError):
        AdditiveCode(T, [[(1, 0, 0)]])
    with pytest.raises(ValueError):
        AdditiveCode(T, [])
    with pytest.raises(ValueError):
        AdditiveCode.from_expanded(T, [[2, 0]])


def test_small_hand_example():
    # F_4 = F_2[x]/(x^2+x+1); rows 1 and xi in every position: the repetition code over F_4
    T = tower(2, 2)
    C = AdditiveCode(T, [[(1, 0)] * 3, [(0, 1)] * 3])
    assert (C.n, C.r, C.k) == (3, 2, 1)
    assert C.min_distance() == 3 and C.is_qmds()
    assert C.is_integral and C.is_faithful()
    assert C.dual().r == 4 and C.dual_distance() == 2 and C.dual_is_qmds()
    assert C.codeword([1, 1]) == [(1, 1)] * 3
    assert C.type_string() == "[3, 1, 3]_2^2"


@pytest.mark.parametrize("seed", range(40))
def test_distance_and_codewords_against_direct(seed):
    C = _tiny(seed)
    words = oracles.codewords_direct(C.tower, C.G)
    expanded = {tuple(w.tolist()) for w in C.codewords()}
    flat = {tuple(c for a in w for c in a) for w in words}
    assert expanded == flat
    assert C.min_distance() == oracles.min_distance_direct(C.tower, C.G)
    u = C.min_weight_message()
    assert C.weight(u) == C.min_distance() == C.hamming_weight(C.codeword(u))


@pytest.mark.parametrize("seed", range(40))
def test_dual_against_direct(seed):
    C = _tiny(seed)
    ref = oracles.dual_direct(C.tower, C.G)
    D = C.dual()
    assert {tuple(w) for w in oracles.codewords_direct(C.tower, D.G)} == ref
    assert len(ref) == C.q ** (C.n * C.h - C.r)


@pytest.mark.parametrize("seed", range(30))
def test_dual_distance_methods_agree(seed):
    C = random_code(np.random.default_rng(seed))
    assert C.dual_distance("enumerate") == C.dual_distance("blocks")


def test_dual_distance_rejects_full_space():
    T = tower(2, 2)
    C = AdditiveCode.from_expanded(T, np.eye(4, dtype=np.int64), 2)
    with pytest.raises(ValueError):
        C.dual_distance()
    with pytest.raises(ValueError):
        C.dual_distance("other")


def test_trace_inner_vanishes_between_code_and_dual():
    C = random_code(np.random.default_rng(3), q=3, h=2, n=3, r=3)
    for a in C.Gt:
        for b in C.dual().Gt:
            assert C.trace_inner(a, b) == 0


def test_unfaithful_zero_column():
    T = tower(2, 2)
    C = AdditiveCode(T, [[(1, 0), (0, 0)], [(0, 1), (0, 0)]])
    assert not C.is_faithful()
    assert C.dual_distance() == 1
    assert C.T().blocks[1].dim == C.r


def test_geometric_quotient_by_hand():
    C = random_code(np.random.default_rng(7), q=2, h=2, n=4, r=5)
    J = [0]
    Q = C.geometric_quotient(J)
    assert Q.n == 3
    assert Q.r == C.block_perp(0).dim
    # quotient codewords are the codewords vanishing at 0, shortened
    words = {tuple(w.tolist()) for w in C.codewords() if not w[:2].any()}
    assert {tuple(w.tolist()) for w in Q.codewords()} == {w[2:] for w in words}
    assert Q.is_non_obliterating([]) == (Q.r >= Q.h)
    with pytest.raises(IndexError):
        C.quotient_map([4])


def test_code_from_packing_round_trip():
    C = random_code(np.random.default_rng(11), q=3, h=2, n=4, r=4, zero_col_prob=0.0)
    D = code_from_packing(C.T(), C.tower)
    assert D.T().same_multiset(C.T())
    assert D.min_distance() == C.min_distance()


def test_code_from_packing_rejects():
    C = random_code(np.random.default_rng(1), q=2, h=2, n=3, r=4)
    with pytest.raises(ValueError):
        code_from_packing(C.T(), tower(3, 2))


def test_enumeration_cap():
    C = random_code(np.random.default_rng(5), q=2, h=2, n=4, r=6)
    with pytest.raises(CapExceeded):
        C.min_distance(cap=8)


def test_workers_do_not_change_the_answer():
    C = random_code(np.random.default_rng(9), q=2, h=3, n=6, r=14)
    assert C.min_distance(workers=2) == AdditiveCode.from_expanded(C.tower, C.Gt, C.n).min_distance()


def test_system_view():
    C = random_code(np.random.default_rng(2), q=2, h=2, n=5, r=5)
    best, cov = C.system_max_count()
    assert best == C.n - C.min_distance()
    assert C.verify_system()


def test_profile():
    C = random_code(np.random.default_rng(4), q=2, h=2, n=4, r=3)
    P = C.profile()
    assert (P.n, P.r, P.d, P.k) == (C.n, C.r, C.min_distance(), C.k)
    assert P.d_perp == C.dual_distance()


def test_same_code_is_rowspace_equality():
    C = random_code(np.random.default_rng(6), q=2, h=2, n=3, r=3)
    M = counter_array(2, 3)[[1, 2, 4]]
    M[0, 1] = 1
    D = AdditiveCode.from_expanded(C.tower, matmul(C.F, M, C.Gt), C.n)
    assert C.same_code(D)
    assert C.dual().dual().same_code(C)
