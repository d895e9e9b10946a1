import json

import numpy as np
import pytest

from addqmds.code import dually_k_bound
from addqmds.finite_field import GF
from addqmds.geometry import (
    DualArc,
    code_to_dda,
    complete_dda,
    dda_to_code,
    dda_witness,
    is_dda,
    is_dho,
    search_dho,
    theta,
)
from addqmds.linalg import span
from addqmds.packing import verify_lambda_packing

from helpers import dho_q2h2


def test_theta():
    assert theta(2, 2) == 7
    assert theta(3, 2) == 13
    assert theta(2, 0) == 1
    with pytest.raises(ValueError):
        theta(2, -1)


def test_dho_found_for_q2_h2():
    L = dho_q2h2()
    assert len(L) == 8 == theta(2, 2) + 1
    assert L.m == 5 and L.d == 2
    assert is_dho(L)
    assert verify_lambda_packing(L.to_packing(), 2, method="both")
    # every point of a block lies in exactly one other block
    for i, B in enumerate(L.blocks):
        others = [j for j, C in enumerate(L.blocks) if j != i and B.intersect(C).dim]
        assert len(others) == 7


def test_dho_code():
    C = dda_to_code(dho_q2h2())
    assert (C.n, C.r, C.h) == (8, 5, 2)
    assert C.min_distance() == 6
    D = C.dual()
    assert D.r == 11 and D.min_distance() == 3
    assert C.is_dually_qmds(method="both")
    assert C.is_faithful()
    assert C.condition_b_witness() is None
    assert D.k == dually_k_bound(2, 2, 1)


def test_code_to_dda_inverts():
    L = dho_q2h2()
    M = code_to_dda(dda_to_code(L))
    assert set(M.blocks) == set(L.blocks)


def test_code_to_dda_rejects():
    C = dda_to_code(dho_q2h2()).dual()
    with pytest.raises(ValueError):
        code_to_dda(C)


@pytest.mark.parametrize("drop", [1, 2, 3])
def test_sub_arcs_stay_dually_qmds(drop):
    L = dho_q2h2()
    sub = DualArc(L.F, L.m, L.blocks[:-drop])
    assert is_dda(sub) and not is_dho(sub)
    C = dda_to_code(sub)
    assert C.n == 8 - drop and C.is_dually_qmds()


def test_witnesses():
    L = dho_q2h2()
    F = L.F
    assert dda_witness(DualArc(F, 5, [])) == ("size", 0)
    assert dda_witness(DualArc(F, 5, L.blocks + L.blocks[:1]))[0] == "size"
    # a repeated block meets its twin in dimension 3
    assert dda_witness(DualArc(F, 5, L.blocks[:2] + L.blocks[:1])) == ("pair", 0, 2, 3)
    # two planes meeting in a point already span F^5
    assert dda_witness(DualArc(F, 5, L.blocks[:2])) is None
    lines = [span(F, 3, [a, b]) for a, b in [((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 0, 1)),
                                            ((1, 0, 0), (0, 1, 1))]]
    assert dda_witness(DualArc(F, 3, lines)) == ("triple", 0, 1, 2)
    planes = DualArc(F, 4, [span(F, 4, [(1, 0, 0, 0), (0, 1, 0, 0)]), span(F, 4, [(0, 1, 0, 0), (0, 0, 1, 0)])])
    assert dda_witness(planes) == ("span", 3)


def test_mixed_dimensions_raise():
    F = GF(2)
    L = DualArc(F, 3, [span(F, 3, [(1, 0, 0)]), span(F, 3, [(1, 0, 0), (0, 1, 0)])])
    with pytest.raises(ValueError):
        L.d
    with pytest.raises(ValueError):
        DualArc(F, 3, [span(F, 4, [(1, 0, 0, 0)])])


def test_dda_to_code_needs_odd_ambient():
    F = GF(2)
    L = DualArc(F, 4, [span(F, 4, [(1, 0, 0, 0), (0, 1, 0, 0)]), span(F, 4, [(0, 0, 1, 0), (0, 1, 0, 0)])])
    with pytest.raises(ValueError):
        dda_to_code(L)


def test_complete_after_removing_a_block():
    L = dho_q2h2()
    for drop in range(len(L)):
        seed = DualArc(L.F, L.m, L.blocks[:drop] + L.blocks[drop + 1 :])
        M = complete_dda(seed)
        assert M is not None and is_dho(M)
        assert set(seed.blocks) <= set(M.blocks)


def test_complete_rejects_bad_seed():
    L = dho_q2h2()
    with pytest.raises(ValueError):
        complete_dda(DualArc(L.F, L.m, L.blocks[:1] + L.blocks[:1]))


def test_search_is_resumable(tmp_path):
    state = tmp_path / "s.json"
    first = search_dho(2, 2, state_path=state, max_units=0)
    assert first.status == "incomplete" and first.units_done == 0
    full = search_dho(2, 2, state_path=state)
    assert full.status == "found"
    saved = json.loads(state.read_text())
    assert saved["found"] is not None and saved["q"] == 2
    again = search_dho(2, 2, state_path=state)
    assert set(again.arc.blocks) == set(full.arc.blocks)
    with pytest.raises(ValueError):
        search_dho(3, 2, state_path=state, max_units=0)


def test_search_is_independent_of_workers():
    a = search_dho(2, 2)
    b = search_dho(2, 2, workers=2)
    assert a.arc.blocks == b.arc.blocks


def test_search_reports_cap_as_error():
    from addqmds.linalg import CapExceeded

    with pytest.raises(CapExceeded):
        search_dho(2, 2, cap=10)


def test_packing_round_trip():
    L = dho_q2h2()
    assert DualArc.from_packing(L.to_packing()).blocks == L.blocks
